#include "fairseq/vectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fairseq/errors.hpp"

namespace fairseq {

FrequencyVector::FrequencyVector(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.size() < 2) throw InvalidArgument("frequency vector needs d >= 2");
    double sum = 0.0;
    for (double a : alphas_) {
        if (!(a > 0.0 && a < 1.0))
            throw InvalidArgument("frequency " + std::to_string(a) + " outside (0,1)");
        sum += a;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
        throw InvalidArgument("frequencies sum to " + std::to_string(sum) + ", not 1");
}

FrequencyVector FrequencyVector::from_weights(std::span<const double> weights) {
    if (weights.size() < 2) throw InvalidArgument("frequency vector needs d >= 2");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("weights must be positive");
        total += w;
    }
    std::vector<double> a(weights.size());
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        a[i] = weights[i] / total;
        head += a[i];
    }
    a.back() = 1.0 - head;
    return FrequencyVector(std::move(a));
}

double FrequencyVector::min() const noexcept { return *std::min_element(alphas_.begin(), alphas_.end()); }

double FrequencyVector::max() const noexcept { return *std::max_element(alphas_.begin(), alphas_.end()); }

std::size_t FrequencyVector::argmax() const noexcept {
    return static_cast<std::size_t>(std::max_element(alphas_.begin(), alphas_.end()) - alphas_.begin());
}

SumZeroVector::SumZeroVector(std::vector<double> coords) : coords_(std::move(coords)) {
    double sum = 0.0;
    for (double c : coords_) {
        if (!std::isfinite(c)) throw InvalidArgument("sum-zero vector has a non-finite coordinate");
        sum += c;
    }
    if (std::abs(sum) > kSumTolerance)
        throw InvalidArgument("coordinates sum to " + std::to_string(sum) + ", not 0");
}

double SumZeroVector::norm_inf() const noexcept {
    double m = 0.0;
    for (double c : coords_) m = std::max(m, std::abs(c));
    return m;
}

double distance_inf(std::span<const double> a, std::span<const double> b) noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace fairseq
