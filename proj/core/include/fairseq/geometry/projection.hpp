#pragma once

#include <span>
#include <vector>

#include "fairseq/geometry/polygon.hpp"
#include "fairseq/sequences.hpp"
#include "fairseq/vectors.hpp"

namespace fairseq::geometry {

// v - (sum v) alpha.
SumZeroVector project_pi_alpha(std::span<const double> v, const FrequencyVector& alpha);

// Drops the last coordinate.
std::vector<double> iota(const SumZeroVector& x);
// Restores the last coordinate as minus the sum of the others.
SumZeroVector iota_inverse(std::span<const double> q);

// Two-dimensional shortcuts for d = 3.
Vec2 iota2(const SumZeroVector& x);
Vec2 iota2(std::span<const double> x);
SumZeroVector iota2_inverse(Vec2 q);

inline constexpr double kDomainTolerance = 1e-9;

struct DomainClassification {
    bool inside = false;
    // Smallest argmin of (1 - x_i)/alpha_i, 1-based; meaningful when inside.
    Letter letter = 0;
    // min_i (x_i + s alpha_i) with s = min_i (1 - x_i)/alpha_i. Nonnegative iff x is in E_alpha.
    double margin = 0.0;
};

// Membership in E_alpha = pi_alpha([0,1)^d) and the piece E_{alpha,i} holding x.
DomainClassification classify_hypercubic(std::span<const double> x, const FrequencyVector& alpha);

// Letter of the piece E_{alpha,i} holding x. Throws OutOfDomain outside E_alpha.
Letter hypercubic_region_of(const SumZeroVector& x, const FrequencyVector& alpha);

// Letter of the piece S_{alpha,C,C',i} holding x (same rule as tijdeman_step).
Letter tijdeman_region_of(const SumZeroVector& x, const TijdemanParams& params);

enum class SystemKind { hypercubic, tijdeman };

// x + alpha - e_i for the letter i given by the chosen classification. For the
// hypercubic kind only params.alpha() is used.
SumZeroVector exchange_step(const SumZeroVector& x, SystemKind kind, const TijdemanParams& params);

}  // namespace fairseq::geometry
