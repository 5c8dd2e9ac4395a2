#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "fairseq/errors.hpp"
#include "fairseq/geometry/projection.hpp"
#include "fairseq/sampling.hpp"
#include "fairseq/sequences.hpp"

using namespace fairseq;

namespace {

LetterSequence word_of(std::size_t d, std::initializer_list<int> letters) {
    std::vector<Letter> v;
    for (int l : letters) v.push_back(static_cast<Letter>(l));
    return LetterSequence(d, v);
}

// Direct transcription of the greedy rule on plain doubles, used as an oracle.
int oracle_letter(const std::vector<double>& x, const std::vector<double>& a, double C, double Cp) {
    int best = -1;
    double best_t = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] + a[i] - 1.0 < -Cp - 1e-12) continue;
        const double t = (C - x[i]) / a[i];
        if (best < 0 || t < best_t - 1e-12 * std::max(1.0, std::abs(best_t))) {
            best = static_cast<int>(i);
            best_t = t;
        }
    }
    return best + 1;
}

// Balance by enumerating every window of every length.
std::int64_t brute_balance(const LetterSequence& w, std::size_t max_window) {
    std::int64_t best = 0;
    for (std::size_t m = 1; m <= max_window; ++m)
        for (Letter i = 1; i <= w.alphabet_size(); ++i) {
            std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = -1;
            for (std::size_t k = 0; k + m <= w.size(); ++k) {
                std::int64_t c = 0;
                for (std::size_t j = k; j < k + m; ++j) c += w[j] == i;
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            best = std::max(best, hi - lo);
        }
    return best;
}

double brute_discrepancy(const LetterSequence& w, const FrequencyVector& a) {
    double best = 0.0;
    for (std::size_t n = 0; n <= w.size(); ++n)
        for (Letter i = 1; i <= w.alphabet_size(); ++i) {
            double c = 0;
            for (std::size_t j = 0; j < n; ++j) c += w[j] == i;
            best = std::max(best, std::abs(c - n * a[i - 1]));
        }
    return best;
}

}  // namespace

TEST(FrequencyVector, Validation) {
    EXPECT_NO_THROW(FrequencyVector({0.5, 0.3, 0.2}));
    EXPECT_THROW(FrequencyVector({1.0}), InvalidArgument);
    EXPECT_THROW(FrequencyVector({0.5, 0.6}), InvalidArgument);
    EXPECT_THROW(FrequencyVector({0.0, 1.0}), InvalidArgument);
    EXPECT_THROW(FrequencyVector({1.2, -0.2}), InvalidArgument);
    const std::vector<double> w{2.0, 1.0, 1.0};
    const auto f = FrequencyVector::from_weights(w);
    EXPECT_DOUBLE_EQ(f[0], 0.5);
    EXPECT_EQ(f.argmax(), 0u);
}

TEST(SumZeroVector, Validation) {
    EXPECT_NO_THROW(SumZeroVector({0.2, -0.5, 0.3}));
    EXPECT_THROW(SumZeroVector({0.2, 0.1}), InvalidArgument);
    EXPECT_DOUBLE_EQ(SumZeroVector({0.2, -0.5, 0.3}).norm_inf(), 0.5);
}

TEST(Constants, DConstant) {
    EXPECT_DOUBLE_EQ(d_constant(2), 0.5);
    EXPECT_DOUBLE_EQ(d_constant(3), 0.75);
    EXPECT_DOUBLE_EQ(d_constant(4), 5.0 / 6.0);
    EXPECT_THROW(d_constant(1), InvalidArgument);
}

TEST(Constants, CanonicalParams) {
    const auto p = canonical_params(FrequencyVector{0.5, 0.3, 0.2});
    EXPECT_NEAR(p.C(), 0.7, 1e-15);
    EXPECT_NEAR(p.C_prime(), 0.7, 1e-15);
    EXPECT_EQ(p.x0(), SumZeroVector::zero(3));
    EXPECT_TRUE(p.canonical());
    EXPECT_TRUE(p.boundedness_guaranteed());

    const auto q = canonical_params(FrequencyVector{1.0 / 3, 1.0 / 3, 1.0 - 2.0 / 3});
    EXPECT_NEAR(q.C(), 2.0 / 3, 1e-15);
}

TEST(Constants, CanonicalParamsClampedForTwoLetters) {
    // (1 - min alpha)/2 lies below the validity bound C' >= 1/2, so d = 2 uses 1/2.
    const FrequencyVector a{0.7, 0.3};
    EXPECT_NEAR(minimax_constant(a), 0.35, 1e-15);
    const auto p = canonical_params(a);
    EXPECT_DOUBLE_EQ(p.C(), 0.5);
    EXPECT_DOUBLE_EQ(p.C_prime(), 0.5);
}

TEST(TijdemanParams, RejectsSmallCPrime) {
    const FrequencyVector a{0.5, 0.3, 0.2};
    EXPECT_THROW(TijdemanParams(a, 0.7, 0.5, SumZeroVector::zero(3)), InvalidArgument);
    EXPECT_THROW(TijdemanParams(a, -0.1, 0.7, SumZeroVector::zero(3)), InvalidArgument);
    EXPECT_THROW(TijdemanParams(a, 0.7, 0.7, SumZeroVector::zero(2)), InvalidArgument);
}

TEST(TijdemanStep, HandExamples) {
    const FrequencyVector a{0.5, 0.5};
    const TijdemanParams p(a, 0.75, 0.75, SumZeroVector::zero(2));
    auto s = tijdeman_step(SumZeroVector::zero(2), p);
    EXPECT_EQ(s.letter, 1);
    EXPECT_NEAR(s.next[0], -0.5, 1e-15);
    EXPECT_NEAR(s.next[1], 0.5, 1e-15);
    s = tijdeman_step(s.next, p);
    EXPECT_EQ(s.letter, 2);
    EXPECT_NEAR(s.next[0], 0.0, 1e-15);
    EXPECT_NEAR(s.next[1], 0.0, 1e-15);
}

TEST(TijdemanStep, ZeroTravelTimeWins) {
    const FrequencyVector a{0.5, 0.3, 0.2};
    const TijdemanParams p(a, 0.7, 0.7, SumZeroVector::zero(3));
    EXPECT_EQ(tijdeman_step(SumZeroVector({-0.3, 0.7, -0.4}), p).letter, 2);
}

TEST(TijdemanStep, EmptyEligibleSet) {
    const FrequencyVector a{0.5, 0.5};
    EXPECT_THROW(tijdeman_letter(std::vector<double>{-5.0, -5.0}, a, 0.75, 0.75), EmptyEligibleSet);
}

TEST(TijdemanStep, MatchesOracleOnRandomPoints) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t d = 2 + trial % 5;
        const auto alpha = random_frequency(d, rng);
        const auto params = canonical_params(alpha);
        std::vector<double> x(d);
        double s = 0;
        for (std::size_t i = 0; i + 1 < d; ++i) s += (x[i] = u(rng));
        x[d - 1] = -s;
        std::vector<double> a(alpha.values().begin(), alpha.values().end());
        const int expect = oracle_letter(x, a, params.C(), params.C_prime());
        if (expect == 0) continue;
        EXPECT_EQ(tijdeman_letter(x, alpha, params.C(), params.C_prime()), expect);
    }
}

TEST(TijdemanGenerate, Alternating) {
    const TijdemanParams p(FrequencyVector{0.5, 0.5}, 0.75, 0.75, SumZeroVector::zero(2));
    const auto t = tijdeman_generate(p, 6);
    EXPECT_EQ(t.letters, word_of(2, {1, 2, 1, 2, 1, 2}));
    ASSERT_EQ(t.points.size(), 7u);
    EXPECT_EQ(t.running_max.size(), 7u);
}

TEST(TijdemanGenerate, ZeroSteps) {
    const auto t = tijdeman_generate(canonical_params(FrequencyVector{0.5, 0.3, 0.2}), 0);
    EXPECT_TRUE(t.letters.empty());
    ASSERT_EQ(t.points.size(), 1u);
    EXPECT_EQ(t.points[0], SumZeroVector::zero(3));
}

TEST(TijdemanGenerate, StaysInBoxForFigureParams) {
    const TijdemanParams p(FrequencyVector{0.5, 0.3, 0.2}, 0.75, 0.75, SumZeroVector::zero(3));
    TraceOptions opt;
    opt.keep_points = false;
    const auto t = tijdeman_generate(p, 1'000'000, opt);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_LE(t.coord_max[i], 0.75 + 1e-9);
        EXPECT_GE(t.coord_min[i], -0.75 - 1e-9);
    }
}

TEST(TijdemanGenerate, ParikhIdentityAndStepRule) {
    std::mt19937_64 rng(5);
    const auto alpha = random_frequency(4, rng);
    const auto p = canonical_params(alpha);
    const auto t = tijdeman_generate(p, 5000);
    std::vector<double> counts(4, 0.0);
    for (std::size_t n = 0; n <= t.steps(); ++n) {
        for (std::size_t i = 0; i < 4; ++i)
            EXPECT_NEAR(t.points[n][i], n * alpha[i] - counts[i], 1e-9) << "n=" << n;
        if (n == t.steps()) break;
        const auto step = tijdeman_step(t.points[n], p);
        EXPECT_EQ(step.letter, t.letters[n]);
        counts[t.letters[n] - 1] += 1;
    }
    EXPECT_TRUE(std::is_sorted(t.running_max.begin(), t.running_max.end()));
}

TEST(TijdemanGenerate, Deterministic) {
    const auto p = canonical_params(FrequencyVector{0.41, 0.33, 0.26});
    EXPECT_EQ(tijdeman_generate(p, 20000).letters, tijdeman_generate(p, 20000).letters);
}

TEST(TijdemanGenerate, DecimatedCurve) {
    const auto p = canonical_params(FrequencyVector{0.41, 0.33, 0.26});
    TraceOptions opt;
    opt.keep_points = false;
    opt.curve_samples = 100;
    const auto t = tijdeman_generate(p, 100'000, opt);
    EXPECT_LE(t.running_max_curve.size(), 101u);
    EXPECT_GE(t.running_max_curve.size(), 50u);
    EXPECT_DOUBLE_EQ(t.running_max_curve.back().second, t.max_deviation);
}

TEST(BilliardStep, FigureConfiguration) {
    const FrequencyVector a{0.75, 0.25};
    const auto s = billiard_step(SumZeroVector({-0.4, 0.4}), a);
    EXPECT_EQ(s.letter, 1);
    const auto t = billiard_generate(SumZeroVector({-0.4, 0.4}), a, 4);
    EXPECT_EQ(t.letters, word_of(2, {1, 2, 1, 1}));
}

TEST(BilliardStep, CornerPointsAndTies) {
    const FrequencyVector a{0.5, 0.3, 0.2};
    for (std::size_t i = 0; i < 3; ++i) {
        std::vector<double> e(3, 0.0);
        e[i] = 1.0;
        const auto x = geometry::project_pi_alpha(e, a);
        const auto s = billiard_step(x, a);
        EXPECT_EQ(s.letter, i + 1);
        EXPECT_NEAR(s.next.norm_inf(), 0.0, 1e-15);
    }
    EXPECT_EQ(billiard_step(SumZeroVector::zero(2), FrequencyVector{0.5, 0.5}).letter, 1);
}

TEST(BilliardStep, OutOfDomain) {
    EXPECT_THROW(billiard_step(SumZeroVector({5.0, -5.0}), FrequencyVector{0.5, 0.5}), OutOfDomain);
    EXPECT_THROW(billiard_generate(SumZeroVector({5.0, -5.0}), FrequencyVector{0.5, 0.5}, 3), OutOfDomain);
}

TEST(BilliardGenerate, EqualsTijdemanWithUnitC) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 5; ++k) {
        const auto a = random_frequency(3, rng);
        const auto x0 = geometry::project_pi_alpha(std::vector<double>{u(rng), u(rng), u(rng)}, a);
        const auto b = billiard_generate(x0, a, 20000);
        const auto t = tijdeman_generate(TijdemanParams(a, 1.0, 3.0, x0), 20000);
        EXPECT_EQ(b.letters, t.letters);
    }
}

TEST(Parikh, Counts) {
    EXPECT_EQ(parikh(word_of(2, {1, 2, 1, 1})), (std::vector<std::int64_t>{3, 1}));
    EXPECT_EQ(parikh(LetterSequence(3)), (std::vector<std::int64_t>{0, 0, 0}));
    EXPECT_EQ(parikh(word_of(3, {1, 2, 3})), (std::vector<std::int64_t>{1, 1, 1}));
}

TEST(Discrepancy, Examples) {
    const FrequencyVector half{0.5, 0.5};
    EXPECT_DOUBLE_EQ(discrepancy_prefix(word_of(2, {1, 2, 1, 2, 1, 2}), half), 0.5);
    EXPECT_DOUBLE_EQ(discrepancy_prefix(LetterSequence(2), half), 0.0);
    const FrequencyVector a{0.5, 0.3, 0.2};
    const auto t = tijdeman_generate(canonical_params(a), 100'000);
    EXPECT_LE(discrepancy_prefix(t.letters, a), 1.0 - 1.2 / 4 + 1e-9);
}

TEST(Discrepancy, MatchesBruteForce) {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 20; ++k) {
        const auto a = random_frequency(3, rng);
        const auto t = tijdeman_generate(canonical_params(a), 300);
        EXPECT_NEAR(discrepancy_prefix(t.letters, a), brute_discrepancy(t.letters, a), 1e-12);
        EXPECT_NEAR(discrepancy_prefix(t.letters, a), t.max_deviation, 1e-9);
    }
}

TEST(Discrepancy, BelowFairConstantOnCanonicalWords) {
    std::mt19937_64 rng(21);
    for (std::size_t d = 2; d <= 6; ++d) {
        const auto a = random_frequency(d, rng);
        TraceOptions opt;
        opt.keep_points = false;
        const auto t = tijdeman_generate(canonical_params(a), 200'000, opt);
        EXPECT_LT(discrepancy_prefix(t.letters, a), d_constant(d)) << "d=" << d;
    }
}

TEST(Balance, Examples) {
    EXPECT_EQ(balance(word_of(2, {1, 2, 1, 2, 1, 2, 1, 2}), 4), 1);
    EXPECT_EQ(balance(word_of(2, {1, 2, 1, 1}), 4), 1);
    EXPECT_EQ(balance(word_of(2, {1, 1, 2, 2}), 2), 2);
    EXPECT_EQ(balance(LetterSequence(2), 0), 0);
    EXPECT_THROW(balance(word_of(2, {1, 2}), 3), InvalidArgument);
}

TEST(Balance, MatchesBruteForce) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> letter(1, 3);
    for (int k = 0; k < 40; ++k) {
        std::vector<Letter> v(60);
        for (auto& l : v) l = static_cast<Letter>(letter(rng));
        const LetterSequence w(3, v);
        EXPECT_EQ(balance(w, 60), brute_balance(w, 60));
        EXPECT_GE(balance_upper_bound(w), brute_balance(w, 60));
    }
    for (int k = 0; k < 10; ++k) {
        const auto a = random_frequency(3, rng);
        const auto t = tijdeman_generate(canonical_params(a), 400);
        EXPECT_EQ(balance(t.letters, 400), brute_balance(t.letters, 400));
    }
}

TEST(Balance, SturmianAndThreeLetterWords) {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 5; ++k) {
        const auto a2 = random_frequency(2, rng);
        const auto w2 = tijdeman_generate(canonical_params(a2), 100'000).letters;
        EXPECT_EQ(balance(w2, 2000), 1);
        const auto a3 = random_frequency(3, rng);
        const auto w3 = tijdeman_generate(canonical_params(a3), 100'000).letters;
        EXPECT_LE(balance(w3, 2000), 2);
    }
}

TEST(Balance, SandwichWithDiscrepancy) {
    std::mt19937_64 rng(8);
    for (std::size_t d = 2; d <= 5; ++d) {
        const auto a = random_frequency(d, rng);
        const auto w = tijdeman_generate(canonical_params(a), 50'000).letters;
        const double delta = discrepancy_prefix(w, a);
        EXPECT_LE(delta, static_cast<double>(balance(w, 500)) + 1e-9);
        EXPECT_LE(static_cast<double>(balance_upper_bound(w)), 4.0 * delta + 1e-9);
    }
}

TEST(AbelianComplexity, Examples) {
    std::mt19937_64 rng(4);
    const auto a = random_frequency(2, rng);
    const auto w = tijdeman_generate(canonical_params(a), 20'000).letters;
    for (std::size_t n : {1, 2, 7, 50, 333}) EXPECT_EQ(abelian_complexity(w, n), 2u) << n;
    EXPECT_EQ(abelian_complexity(word_of(2, {1, 1, 1, 1, 1}), 3), 1u);
    EXPECT_EQ(abelian_complexity(w, 0), 1u);
}

TEST(AbelianComplexity, MatchesBruteForce) {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> letter(1, 3);
    std::vector<Letter> v(200);
    for (auto& l : v) l = static_cast<Letter>(letter(rng));
    const LetterSequence w(3, v);
    for (std::size_t n = 1; n <= 20; ++n) {
        std::set<std::vector<int>> seen;
        for (std::size_t k = 0; k + n <= w.size(); ++k) {
            std::vector<int> c(3, 0);
            for (std::size_t j = k; j < k + n; ++j) ++c[w[j] - 1];
            seen.insert(c);
        }
        EXPECT_EQ(abelian_complexity(w, n), seen.size());
    }
}
