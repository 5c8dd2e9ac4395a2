#include "fairseq/sampling.hpp"

#include <algorithm>
#include <vector>

#include "fairseq/errors.hpp"

namespace fairseq {

FrequencyVector random_frequency(std::size_t d, std::mt19937_64& rng, double min_entry) {
    if (d < 2) throw InvalidArgument("random_frequency needs d >= 2");
    if (!(min_entry >= 0.0) || min_entry * static_cast<double>(d) >= 1.0)
        throw InvalidArgument("min_entry too large for d");
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> cuts(d - 1), a(d);
    for (;;) {
        for (auto& c : cuts) c = u(rng);
        std::sort(cuts.begin(), cuts.end());
        double prev = 0.0, head = 0.0;
        for (std::size_t i = 0; i + 1 < d; ++i) {
            a[i] = cuts[i] - prev;
            prev = cuts[i];
            head += a[i];
        }
        a[d - 1] = 1.0 - head;
        if (*std::min_element(a.begin(), a.end()) > min_entry) return FrequencyVector(a);
    }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace fairseq
