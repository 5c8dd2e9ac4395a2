#include "fairseq/geometry/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairseq/errors.hpp"

namespace fairseq::geometry {

SumZeroVector project_pi_alpha(std::span<const double> v, const FrequencyVector& alpha) {
    if (v.size() != alpha.dim()) throw InvalidArgument("vector dimension does not match alpha");
    double s = 0.0;
    for (double c : v) s += c;
    std::vector<double> out(v.size());
    double head = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        out[i] = v[i] - s * alpha[i];
        head += out[i];
    }
    out.back() = -head;
    return SumZeroVector(std::move(out));
}

std::vector<double> iota(const SumZeroVector& x) {
    const auto v = x.values();
    return {v.begin(), v.end() - (v.empty() ? 0 : 1)};
}

SumZeroVector iota_inverse(std::span<const double> q) {
    std::vector<double> out(q.begin(), q.end());
    double s = 0.0;
    for (double c : q) s += c;
    out.push_back(-s);
    return SumZeroVector(std::move(out));
}

Vec2 iota2(std::span<const double> x) {
    if (x.size() != 3) throw UnsupportedDimension("two-dimensional iota-coordinates need d = 3");
    return {x[0], x[1]};
}

Vec2 iota2(const SumZeroVector& x) { return iota2(x.values()); }

SumZeroVector iota2_inverse(Vec2 q) { return SumZeroVector({q.x, q.y, -q.x - q.y}); }

DomainClassification classify_hypercubic(std::span<const double> x, const FrequencyVector& alpha) {
    if (x.size() != alpha.dim()) throw InvalidArgument("point dimension does not match alpha");
    DomainClassification out;
    double s = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double t = (1.0 - x[i]) / alpha[i];
        if (out.letter == 0 || t < s - kTieRelTolerance * std::max(1.0, std::abs(s))) {
            s = t;
            out.letter = static_cast<Letter>(i + 1);
        }
    }
    out.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) out.margin = std::min(out.margin, x[i] + s * alpha[i]);
    out.inside = s >= -kDomainTolerance && out.margin >= -kDomainTolerance;
    return out;
}

Letter hypercubic_region_of(const SumZeroVector& x, const FrequencyVector& alpha) {
    const auto c = classify_hypercubic(x.values(), alpha);
    if (!c.inside) throw OutOfDomain("point is outside E_alpha");
    return c.letter;
}

Letter tijdeman_region_of(const SumZeroVector& x, const TijdemanParams& params) {
    return tijdeman_letter(x.values(), params.alpha(), params.C(), params.C_prime());
}

SumZeroVector exchange_step(const SumZeroVector& x, SystemKind kind, const TijdemanParams& params) {
    return kind == SystemKind::hypercubic ? billiard_step(x, params.alpha()).next
                                          : tijdeman_step(x, params).next;
}

}  // namespace fairseq::geometry
