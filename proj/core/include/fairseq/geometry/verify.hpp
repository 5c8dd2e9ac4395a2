#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <set>

#include "fairseq/geometry/partition.hpp"

namespace fairseq::geometry {

struct TilingReport {
    bool pass = false;
    std::size_t samples = 0;
    // Points farther than 1e-6 from every cell edge.
    std::size_t counted = 0;
    std::size_t exactly_once = 0;
    std::size_t uncovered = 0;
    std::size_t multiply_covered = 0;
    // exactly_once / counted.
    double coverage_fraction = 0.0;
    // uncovered / counted minus multiply_covered / counted: estimates 1 - total area.
    double deficit_fraction = 0.0;
};

inline constexpr double kTilingEdgeExclusion = 1e-6;
inline constexpr double kTilingPassFraction = 0.999;

// Samples uniform points of [-2,2]^2 and counts the translates P + q, ||q||_inf <= 4,
// covering each one.
TilingReport verify_tiling(const ExchangeSystem& system, std::size_t samples, std::uint64_t seed = 0);

struct NaturalPartitionReport {
    bool pass = false;
    std::size_t steps = 0;
    // (a) orbit point with letter i lies in atom i.
    bool orbit_in_atoms = false;
    std::size_t orbit_failures = 0;
    double max_orbit_distance = 0.0;
    // (b) t_i + P_i ⊂ P on sampled interior points.
    bool images_inside = false;
    std::size_t image_samples = 0;
    std::size_t image_failures = 0;
    // (c) generator letter equals point location, points near cell edges excluded.
    bool classification_agrees = false;
    std::size_t classified = 0;
    std::size_t mismatches = 0;
    std::size_t excluded = 0;
};

inline constexpr double kOrbitAtomTolerance = 1e-7;

// Runs the generator matching system.kind from x0 = 0 for `steps` steps and checks
// the natural-partition conditions against the atoms.
NaturalPartitionReport verify_natural_partition(const ExchangeSystem& system,
                                                const TijdemanParams& params, std::size_t steps,
                                                std::uint64_t seed = 0);

using LatticePoint = std::array<std::int64_t, 3>;

struct ModelSet {
    // Points whose projection lies in the open window, away from its boundary.
    std::set<LatticePoint> interior;
    // Points within kModelSetBoundary of the window boundary.
    std::set<LatticePoint> boundary;
};

inline constexpr double kModelSetBoundary = 1e-9;

// x in {0..M}^3 with x0 - pi_alpha(x) in the window (union of the atoms).
ModelSet model_set_vertices(const FrequencyVector& alpha, const SumZeroVector& x0,
                            const ExchangeSystem& window, int M);

// Parikh vectors of the prefixes of the billiard word from x0 that stay in {0..M}^3.
std::set<LatticePoint> broken_line_vertices(const FrequencyVector& alpha, const SumZeroVector& x0,
                                            int M);

}  // namespace fairseq::geometry
