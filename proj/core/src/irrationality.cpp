#include "fairseq/irrationality.hpp"

#include <cmath>

namespace fairseq {

namespace {

// First convergent p/q of x with q <= max_q and |q x - p| <= tol.
std::optional<std::pair<long long, long long>> small_relation(double x, long long max_q, double tol) {
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(r);
        if (a > 1e12) break;
        const long long ai = static_cast<long long>(a);
        const long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_q) break;
        if (std::abs(static_cast<double>(q2) * x - static_cast<double>(p2)) <= tol) return std::pair{p2, q2};
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = r - a;
        if (frac <= 0.0) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace

std::optional<RationalRelation> find_rational_relation(const FrequencyVector& alpha, long long max_denominator,
                                                       double tol) {
    const std::size_t d = alpha.dim();
    for (std::size_t i = 0; i < d; ++i)
        if (auto r = small_relation(alpha[i], max_denominator, tol))
            return RationalRelation{"alpha_" + std::to_string(i + 1) + " ~ " + std::to_string(r->first) + "/" +
                                        std::to_string(r->second),
                                    r->first, r->second};
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            // q alpha_i - p alpha_j ~ 0, scaled so the test is on |q x - p| with x = alpha_i/alpha_j.
            if (auto r = small_relation(alpha[i] / alpha[j], max_denominator, tol / alpha[j]))
                return RationalRelation{"alpha_" + std::to_string(i + 1) + "/alpha_" + std::to_string(j + 1) + " ~ " +
                                            std::to_string(r->first) + "/" + std::to_string(r->second),
                                        r->first, r->second};
        }
    return std::nullopt;
}

}  // namespace fairseq
