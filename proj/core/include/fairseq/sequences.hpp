#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fairseq/vectors.hpp"

namespace fairseq {

// Letters are 1..d everywhere in the public API.
using Letter = std::uint8_t;

class LetterSequence {
public:
    explicit LetterSequence(std::size_t alphabet_size);
    // Throws InvalidArgument if a letter falls outside 1..alphabet_size.
    LetterSequence(std::size_t alphabet_size, std::vector<Letter> letters);

    std::size_t alphabet_size() const noexcept { return d_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    Letter operator[](std::size_t i) const noexcept { return letters_[i]; }
    std::span<const Letter> letters() const noexcept { return letters_; }

    void push_back(Letter letter);
    void reserve(std::size_t n) { letters_.reserve(n); }
    LetterSequence prefix(std::size_t n) const;

    bool operator==(const LetterSequence&) const = default;

private:
    std::size_t d_;
    std::vector<Letter> letters_;
};

// D_d = 1 - 1/(2d-2), the optimal worst-case discrepancy over d letters.
double d_constant(std::size_t d);

// 1 - (1 + min_i alpha_i)/(2d-2): the smallest common value of C = C' allowed
// by the boundedness condition C + C' >= 2 - (1 + min alpha)/(d-1).
double minimax_constant(const FrequencyVector& alpha);

// Generator parameters (alpha, C, C', x0).
class TijdemanParams {
public:
    // Validates C >= 0, C' >= 1 - 1/d and x0 of matching dimension.
    TijdemanParams(FrequencyVector alpha, double C, double C_prime, SumZeroVector x0);

    const FrequencyVector& alpha() const noexcept { return alpha_; }
    double C() const noexcept { return C_; }
    double C_prime() const noexcept { return C_prime_; }
    const SumZeroVector& x0() const noexcept { return x0_; }
    std::size_t dim() const noexcept { return alpha_.dim(); }

    // C, C' both in [minimax_constant(alpha), 1): the regime where the orbit
    // closure of 0 is a fundamental domain with a natural partition.
    bool canonical() const noexcept;
    // C, C' >= 1 - 1/d, C <= 1 and C + C' >= 2 - (1 + min alpha)/(d-1).
    bool satisfies_box_condition() const noexcept;
    // satisfies_box_condition() and x0 in [C-1, C]^d: the orbit then stays in [-C', C]^d.
    bool boundedness_guaranteed() const noexcept;

private:
    FrequencyVector alpha_;
    double C_;
    double C_prime_;
    SumZeroVector x0_;
};

// C = C' = max(minimax_constant(alpha), 1 - 1/d), x0 = 0.
// For d >= 3 the clamp is inactive. For d = 2 the unclamped value is below
// 1 - 1/d = 1/2 and the eligibility set can become empty, so 1/2 is used.
TijdemanParams canonical_params(const FrequencyVector& alpha);

struct StepResult {
    Letter letter;
    SumZeroVector next;
};

// Two travel times are tied when they differ by at most kTieRelTolerance * max(1, |t|).
inline constexpr double kTieRelTolerance = 1e-12;
// Slack on the eligibility test x_i + alpha_i - 1 >= -C'.
inline constexpr double kEligibilityTolerance = 1e-12;
// Slack on the [-C', C]^d box and on the Parikh identity.
inline constexpr double kOrbitTolerance = 1e-9;

// One application of the greedy travel-time rule.
StepResult tijdeman_step(const SumZeroVector& x, const TijdemanParams& params);

// One step of the hypercubic billiard map. Throws OutOfDomain if x is not in E_alpha.
StepResult billiard_step(const SumZeroVector& x, const FrequencyVector& alpha);

// Letter chosen by the Tijdeman rule at x, 1-based. Throws EmptyEligibleSet.
Letter tijdeman_letter(std::span<const double> x, const FrequencyVector& alpha, double C,
                       double C_prime);

struct TraceOptions {
    // Store every orbit point and the running maximum per step. Costs (d+1)
    // doubles per step; switch off for long runs.
    bool keep_points = true;
    // Number of (n, running max) samples kept regardless of keep_points; 0 disables.
    std::size_t curve_samples = 0;
    // Raise BoundViolation when the orbit leaves [-C'-tol, C+tol]^d while
    // TijdemanParams::boundedness_guaranteed() holds.
    bool check_bounds = true;
};

struct OrbitTrace {
    SumZeroVector x0;
    LetterSequence letters;
    // x_0..x_N when TraceOptions::keep_points.
    std::vector<SumZeroVector> points;
    // max_{k<=n} ||x_k - x_0||_inf when TraceOptions::keep_points.
    std::vector<double> running_max;
    // Decimated running-max curve, (n, value) pairs.
    std::vector<std::pair<std::size_t, double>> running_max_curve;
    // Coordinatewise extremes of x_n over 0 <= n <= N.
    std::vector<double> coord_min;
    std::vector<double> coord_max;
    // max_n ||x_n - x_0||_inf: a lower estimate of the discrepancy of the infinite word.
    double max_deviation = 0.0;

    std::size_t steps() const noexcept { return letters.size(); }
};

// Iterates the Tijdeman map N times from params.x0(). x_n is recomputed from the
// Parikh identity x_n = x_0 + n alpha - p(u_[0,n)) at every step.
OrbitTrace tijdeman_generate(const TijdemanParams& params, std::size_t steps,
                             const TraceOptions& options = {});

// Billiard coding of x0 under the exchange of pieces on E_alpha.
OrbitTrace billiard_generate(const SumZeroVector& x0, const FrequencyVector& alpha,
                             std::size_t steps, const TraceOptions& options = {});

// Letter counts p(w), component i-1 counting letter i.
std::vector<std::int64_t> parikh(const LetterSequence& word);

// max_{0<=n<=|w|} ||p(w_[0,n)) - n alpha||_inf. A monotone lower estimate of the
// discrepancy of any infinite word with prefix w.
double discrepancy_prefix(const LetterSequence& word, const FrequencyVector& alpha);

// Exact balance of the prefix over window lengths 1..max_window:
// max over letters i and lengths m of (max_k |w_[k,k+m)|_i - min_k |w_[k,k+m)|_i).
std::int64_t balance(const LetterSequence& word, std::size_t max_window);

// Upper bound on the balance over all window lengths: max_i floor(2 min_beta range_k(|w_[0,k)|_i - k beta)).
// balance() stops scanning window lengths once this bound is reached.
std::int64_t balance_upper_bound(const LetterSequence& word);

// Number of distinct Parikh vectors among the length-n factors of the prefix.
std::size_t abelian_complexity(const LetterSequence& word, std::size_t n);

}  // namespace fairseq
