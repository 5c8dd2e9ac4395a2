#include "fairseq/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "fairseq/errors.hpp"
#include "fairseq/geometry/projection.hpp"

namespace fairseq {

LetterSequence::LetterSequence(std::size_t alphabet_size) : d_(alphabet_size) {
    if (d_ < 1 || d_ > std::numeric_limits<Letter>::max())
        throw InvalidArgument("alphabet size out of range");
}

LetterSequence::LetterSequence(std::size_t alphabet_size, std::vector<Letter> letters)
    : LetterSequence(alphabet_size) {
    for (Letter l : letters)
        if (l < 1 || l > d_) throw InvalidArgument("letter " + std::to_string(l) + " outside 1..d");
    letters_ = std::move(letters);
}

void LetterSequence::push_back(Letter letter) {
    if (letter < 1 || letter > d_) throw InvalidArgument("letter " + std::to_string(letter) + " outside 1..d");
    letters_.push_back(letter);
}

LetterSequence LetterSequence::prefix(std::size_t n) const {
    LetterSequence out(d_);
    out.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(std::min(n, size())));
    return out;
}

double d_constant(std::size_t d) {
    if (d < 2) throw InvalidArgument("d_constant needs d >= 2");
    return 1.0 - 1.0 / static_cast<double>(2 * d - 2);
}

double minimax_constant(const FrequencyVector& alpha) {
    return 1.0 - (1.0 + alpha.min()) / static_cast<double>(2 * alpha.dim() - 2);
}

namespace {

double lower_bound_C_prime(std::size_t d) { return 1.0 - 1.0 / static_cast<double>(d); }

}  // namespace

TijdemanParams::TijdemanParams(FrequencyVector alpha, double C, double C_prime, SumZeroVector x0)
    : alpha_(std::move(alpha)), C_(C), C_prime_(C_prime), x0_(std::move(x0)) {
    if (!(C_ >= 0.0) || !std::isfinite(C_)) throw InvalidArgument("C must be finite and >= 0");
    if (!std::isfinite(C_prime_) || C_prime_ < lower_bound_C_prime(dim()) - kEligibilityTolerance)
        throw InvalidArgument("C' must be >= 1 - 1/d = " + std::to_string(lower_bound_C_prime(dim())));
    if (x0_.dim() != dim()) throw InvalidArgument("x0 dimension does not match alpha");
}

bool TijdemanParams::canonical() const noexcept {
    const double lo = minimax_constant(alpha_) - kEligibilityTolerance;
    return C_ >= lo && C_ < 1.0 && C_prime_ >= lo && C_prime_ < 1.0;
}

bool TijdemanParams::satisfies_box_condition() const noexcept {
    const double d = static_cast<double>(dim());
    const double floor = lower_bound_C_prime(dim()) - kEligibilityTolerance;
    return C_ >= floor && C_prime_ >= floor && C_ <= 1.0 &&
           C_ + C_prime_ >= 2.0 - (1.0 + alpha_.min()) / (d - 1.0) - kEligibilityTolerance;
}

bool TijdemanParams::boundedness_guaranteed() const noexcept {
    if (!satisfies_box_condition()) return false;
    for (double v : x0_.values())
        if (v < C_ - 1.0 - kOrbitTolerance || v > C_ + kOrbitTolerance) return false;
    return true;
}

TijdemanParams canonical_params(const FrequencyVector& alpha) {
    const double c = std::max(minimax_constant(alpha), lower_bound_C_prime(alpha.dim()));
    return TijdemanParams(alpha, c, c, SumZeroVector::zero(alpha.dim()));
}

namespace {

// Smallest index minimizing (C - x_i)/alpha_i among eligible indices, 0-based; -1 if none.
int greedy_index(std::span<const double> x, std::span<const double> a, double C, double C_prime,
                 bool filter) noexcept {
    int best = -1;
    double bt = 0.0;
    const double threshold = -C_prime - kEligibilityTolerance;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (filter && x[i] + a[i] - 1.0 < threshold) continue;
        const double t = (C - x[i]) / a[i];
        if (best < 0 || t < bt - kTieRelTolerance * std::max(1.0, std::abs(bt))) {
            best = static_cast<int>(i);
            bt = t;
        }
    }
    return best;
}

StepResult apply_letter(const SumZeroVector& x, std::span<const double> a, int i) {
    std::vector<double> next(x.values().begin(), x.values().end());
    for (std::size_t j = 0; j < next.size(); ++j) next[j] += a[j];
    next[static_cast<std::size_t>(i)] -= 1.0;
    return {static_cast<Letter>(i + 1), SumZeroVector(std::move(next))};
}

void require_dim(std::size_t got, std::size_t want) {
    if (got != want) throw InvalidArgument("point dimension does not match alpha");
}

}  // namespace

Letter tijdeman_letter(std::span<const double> x, const FrequencyVector& alpha, double C, double C_prime) {
    require_dim(x.size(), alpha.dim());
    const int i = greedy_index(x, alpha.values(), C, C_prime, true);
    if (i < 0) throw EmptyEligibleSet("no index satisfies x_i + alpha_i - 1 >= -C'");
    return static_cast<Letter>(i + 1);
}

StepResult tijdeman_step(const SumZeroVector& x, const TijdemanParams& params) {
    const Letter l = tijdeman_letter(x.values(), params.alpha(), params.C(), params.C_prime());
    return apply_letter(x, params.alpha().values(), l - 1);
}

StepResult billiard_step(const SumZeroVector& x, const FrequencyVector& alpha) {
    require_dim(x.dim(), alpha.dim());
    const Letter l = geometry::hypercubic_region_of(x, alpha);
    return apply_letter(x, alpha.values(), l - 1);
}

namespace {

template <typename Rule>
OrbitTrace generate(const SumZeroVector& x0, const FrequencyVector& alpha, std::size_t steps,
                    const TraceOptions& options, Rule rule, double box_lo, double box_hi, bool check_box) {
    const std::size_t d = alpha.dim();
    const auto a = alpha.values();
    const auto start = x0.values();
    OrbitTrace trace{x0, LetterSequence(d), {}, {}, {}, {}, {}, 0.0};
    trace.letters.reserve(steps);
    trace.coord_min.assign(start.begin(), start.end());
    trace.coord_max.assign(start.begin(), start.end());
    if (options.keep_points) {
        trace.points.reserve(steps + 1);
        trace.running_max.reserve(steps + 1);
        trace.points.push_back(x0);
        trace.running_max.push_back(0.0);
    }
    std::size_t stride = 0;
    if (options.curve_samples > 0) {
        const std::size_t k = std::max<std::size_t>(options.curve_samples, 2) - 1;
        stride = std::max<std::size_t>(1, (steps + k - 1) / k);
        trace.running_max_curve.emplace_back(0, 0.0);
    }

    std::vector<double> counts(d, 0.0);
    std::vector<double> x(start.begin(), start.end());
    double running = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
        const int i = rule(std::span<const double>(x));
        const std::size_t li = static_cast<std::size_t>(i);
        trace.letters.push_back(static_cast<Letter>(i + 1));
        counts[li] += 1.0;
        const double m = static_cast<double>(n + 1);
        double dev = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double offset = std::fma(m, a[j], -counts[j]);
            x[j] = start[j] + offset;
            dev = std::max(dev, std::abs(offset));
            trace.coord_min[j] = std::min(trace.coord_min[j], x[j]);
            trace.coord_max[j] = std::max(trace.coord_max[j], x[j]);
            if (check_box && (x[j] < box_lo - kOrbitTolerance || x[j] > box_hi + kOrbitTolerance))
                throw BoundViolation("orbit left [-C', C]^d at step " + std::to_string(n + 1));
        }
        running = std::max(running, dev);
        if (options.keep_points) {
            // x sums to zero up to rounding; rebuild the last coordinate exactly.
            std::vector<double> p(x);
            double head = 0.0;
            for (std::size_t j = 0; j + 1 < d; ++j) head += p[j];
            if (std::abs(head + p[d - 1]) > SumZeroVector::kSumTolerance) p[d - 1] = -head;
            trace.points.emplace_back(std::move(p));
            trace.running_max.push_back(running);
        }
        if (stride > 0 && ((n + 1) % stride == 0 || n + 1 == steps))
            trace.running_max_curve.emplace_back(n + 1, running);
    }
    trace.max_deviation = running;
    return trace;
}

}  // namespace

OrbitTrace tijdeman_generate(const TijdemanParams& params, std::size_t steps, const TraceOptions& options) {
    const auto a = params.alpha().values();
    const double C = params.C();
    const double Cp = params.C_prime();
    auto rule = [&](std::span<const double> x) {
        const int i = greedy_index(x, a, C, Cp, true);
        if (i < 0) throw EmptyEligibleSet("no index satisfies x_i + alpha_i - 1 >= -C'");
        return i;
    };
    const bool check = options.check_bounds && params.boundedness_guaranteed();
    return generate(params.x0(), params.alpha(), steps, options, rule, -Cp, C, check);
}

OrbitTrace billiard_generate(const SumZeroVector& x0, const FrequencyVector& alpha, std::size_t steps,
                             const TraceOptions& options) {
    require_dim(x0.dim(), alpha.dim());
    if (!geometry::classify_hypercubic(x0.values(), alpha).inside)
        throw OutOfDomain("billiard starting point is outside E_alpha");
    const auto a = alpha.values();
    auto rule = [&](std::span<const double> x) { return greedy_index(x, a, 1.0, 0.0, false); };
    // E_alpha lies in [-(d-1) max alpha, 1]^d; the box check is a drift guard only.
    const double lo = -static_cast<double>(alpha.dim() - 1) * alpha.max();
    return generate(x0, alpha, steps, options, rule, lo, 1.0, options.check_bounds);
}

std::vector<std::int64_t> parikh(const LetterSequence& word) {
    std::vector<std::int64_t> p(word.alphabet_size(), 0);
    for (Letter l : word.letters()) ++p[l - 1];
    return p;
}

double discrepancy_prefix(const LetterSequence& word, const FrequencyVector& alpha) {
    if (word.alphabet_size() != alpha.dim()) throw InvalidArgument("alphabet size does not match alpha");
    const std::size_t d = alpha.dim();
    std::vector<double> counts(d, 0.0);
    double best = 0.0;
    for (std::size_t n = 0; n < word.size(); ++n) {
        counts[word[n] - 1] += 1.0;
        const double m = static_cast<double>(n + 1);
        for (std::size_t j = 0; j < d; ++j) best = std::max(best, std::abs(std::fma(m, alpha[j], -counts[j])));
    }
    return best;
}

namespace {

// min over beta of max_k f(k) - min_k f(k), f(k) = P[k] - k beta, via the hull of (k, P[k]).
double min_range(const std::vector<std::int64_t>& P) {
    const std::size_t n = P.size();
    if (n < 2) return 0.0;
    auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
        const std::int64_t ax = static_cast<std::int64_t>(a - o), ay = P[a] - P[o];
        const std::int64_t bx = static_cast<std::int64_t>(b - o), by = P[b] - P[o];
        return ax * by - ay * bx;
    };
    std::vector<std::size_t> lower, upper;
    for (std::size_t k = 0; k < n; ++k) {
        while (lower.size() >= 2 && turn(lower[lower.size() - 2], lower.back(), k) <= 0) lower.pop_back();
        lower.push_back(k);
        while (upper.size() >= 2 && turn(upper[upper.size() - 2], upper.back(), k) >= 0) upper.pop_back();
        upper.push_back(k);
    }
    auto range_at = [&](double beta) {
        double hi = -std::numeric_limits<double>::infinity();
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t k : upper) hi = std::max(hi, static_cast<double>(P[k]) - static_cast<double>(k) * beta);
        for (std::size_t k : lower) lo = std::min(lo, static_cast<double>(P[k]) - static_cast<double>(k) * beta);
        return hi - lo;
    };
    double best = std::numeric_limits<double>::infinity();
    for (const auto* hull : {&lower, &upper})
        for (std::size_t j = 0; j + 1 < hull->size(); ++j) {
            const std::size_t a = (*hull)[j], b = (*hull)[j + 1];
            best = std::min(best, range_at(static_cast<double>(P[b] - P[a]) / static_cast<double>(b - a)));
        }
    return best;
}

}  // namespace

std::int64_t balance_upper_bound(const LetterSequence& word) {
    const std::size_t d = word.alphabet_size();
    std::int64_t ub = 0;
    std::vector<std::int64_t> P(word.size() + 1);
    for (std::size_t i = 0; i < d; ++i) {
        P[0] = 0;
        for (std::size_t k = 0; k < word.size(); ++k) P[k + 1] = P[k] + (word[k] == i + 1 ? 1 : 0);
        ub = std::max(ub, static_cast<std::int64_t>(std::floor(2.0 * min_range(P) + 1e-9)));
    }
    return ub;
}

std::int64_t balance(const LetterSequence& word, std::size_t max_window) {
    const std::size_t L = word.size();
    if (max_window > L) throw InvalidArgument("max_window exceeds the word length");
    if (max_window == 0) return 0;
    const std::size_t d = word.alphabet_size();
    const std::int64_t ub = balance_upper_bound(word);
    const auto w = word.letters();
    std::int64_t best = 0;
    std::vector<std::int64_t> count(d), hi(d), lo(d);
    for (std::size_t m = 1; m <= max_window && best < ub; ++m) {
        std::fill(count.begin(), count.end(), 0);
        for (std::size_t k = 0; k < m; ++k) ++count[w[k] - 1];
        hi = count;
        lo = count;
        for (std::size_t k = m; k < L; ++k) {
            const std::size_t in = w[k] - 1u, out = w[k - m] - 1u;
            if (in == out) continue;
            ++count[in];
            --count[out];
            hi[in] = std::max(hi[in], count[in]);
            lo[out] = std::min(lo[out], count[out]);
        }
        for (std::size_t i = 0; i < d; ++i) best = std::max(best, hi[i] - lo[i]);
    }
    return best;
}

namespace {

struct VectorHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

}  // namespace

std::size_t abelian_complexity(const LetterSequence& word, std::size_t n) {
    if (n > word.size()) throw InvalidArgument("n exceeds the word length");
    if (n == 0) return 1;
    const auto w = word.letters();
    std::vector<std::int64_t> count(word.alphabet_size(), 0);
    for (std::size_t k = 0; k < n; ++k) ++count[w[k] - 1];
    std::unordered_set<std::vector<std::int64_t>, VectorHash> seen{count};
    for (std::size_t k = n; k < w.size(); ++k) {
        ++count[w[k] - 1];
        --count[w[k - n] - 1];
        seen.insert(count);
    }
    return seen.size();
}

}  // namespace fairseq
