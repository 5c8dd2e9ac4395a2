#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fairseq/geometry/polygon.hpp"
#include "fairseq/sequences.hpp"

namespace fairseq::complexity {

// Number of distinct length-n factors of the word. Exact.
std::size_t factor_complexity(const LetterSequence& word, std::size_t n);

struct ComplexityProfile {
    // counts[n-1] = p(n) for n = 1..n_max.
    std::vector<std::size_t> counts;
    std::size_t prefix_length = 0;
    std::size_t d = 0;
    // p(n_max) > (prefix_length - n_max)/10: the prefix is too short to trust the tail.
    bool saturation_warning = false;
    // Values n with p(n+1) < p(n).
    std::vector<std::size_t> monotonicity_violations;

    std::size_t n_max() const noexcept { return counts.size(); }
    std::size_t at(std::size_t n) const { return counts.at(n - 1); }
};

// p(1..n_max). Throws InvalidArgument unless 1 <= n_max <= |word|/10.
ComplexityProfile complexity_profile(const LetterSequence& word, std::size_t n_max);

// Least-squares slope of log p(n) against log n on [n_lo, n_hi].
// Throws DegenerateFit with fewer than 5 points, InvalidArgument on a bad range.
double exponent_fit(const ComplexityProfile& profile, std::size_t n_lo, std::size_t n_hi);

// sum_{k=0..dim} C(n,k). Throws Overflow for n > 60, InvalidArgument for dim < 1.
std::uint64_t arrangement_region_bound(std::uint64_t n, std::uint64_t dim);

struct RegionCount {
    std::size_t regions = 0;
    // Two parallel lines or three concurrent ones were found.
    bool degeneracy_warning = false;
};

inline constexpr std::size_t kMaxArrangementLines = 12;

// Connected components of the plane minus the boundary lines of the half-planes.
// Throws InvalidArgument for more than kMaxArrangementLines lines.
RegionCount count_regions_2d(std::span<const geometry::HalfPlane> lines);

}  // namespace fairseq::complexity
