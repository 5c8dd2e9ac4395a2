#pragma once

#include <optional>
#include <string>

#include "fairseq/vectors.hpp"

namespace fairseq {

struct RationalRelation {
    // Human-readable relation such as "alpha_1 ~ 3/8" or "alpha_1/alpha_2 ~ 2/3".
    std::string description;
    long long numerator = 0;
    long long denominator = 0;
};

// Heuristic: searches continued-fraction convergents with denominators up to
// max_denominator for each alpha_i and each ratio alpha_i/alpha_j, and reports the
// first p/q with |q alpha_i - p| <= tol (|q alpha_i - p alpha_j| <= tol for ratios). Absence of a relation does not prove total
// irrationality; relations involving three or more coordinates are not searched.
std::optional<RationalRelation> find_rational_relation(const FrequencyVector& alpha,
                                                       long long max_denominator = 1000000,
                                                       double tol = 1e-9);

}  // namespace fairseq
