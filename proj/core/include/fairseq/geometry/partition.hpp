#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "fairseq/geometry/polygon.hpp"
#include "fairseq/geometry/projection.hpp"
#include "fairseq/sequences.hpp"

namespace fairseq::geometry {

// P_i in iota-coordinates: interior-disjoint convex pieces and the translation t_i.
struct PartitionAtom {
    Letter letter = 0;
    std::vector<ConvexPolygon> polygons;
    Vec2 translation;

    double area() const noexcept;
    // Number of connected components of the union of the pieces.
    std::size_t component_count() const;
    bool contains(Vec2 p, double tol = 0.0) const noexcept;
    double distance(Vec2 p) const noexcept;
    // Boundary loops of the union, counterclockwise for outer boundaries.
    std::vector<std::vector<Vec2>> outlines() const;
};

struct ExchangeSystem {
    std::vector<PartitionAtom> atoms;
    FrequencyVector alpha;
    double C = 0.0;
    double C_prime = 0.0;
    SystemKind kind = SystemKind::tijdeman;

    double total_area() const noexcept;
    // 1-based letter of the first atom containing p within tol, or 0.
    Letter locate(Vec2 p, double tol = 0.0) const noexcept;
    // Largest pairwise overlap area between pieces of different atoms.
    double max_overlap() const;
    // The system of translated atoms t_i + P_i.
    ExchangeSystem translated() const;
};

struct QCell {
    Letter letter = 0;
    // Bit j-1 set when letter j belongs to the eligible set J.
    unsigned eligible_mask = 0;
    ConvexPolygon polygon;
};

// The cells Q_{i,J} in iota-coordinates. Throws UnsupportedDimension unless d = 3.
std::vector<QCell> q_cells(const TijdemanParams& params);

// iota(U) with U = (C-1, 1-C')^3 ∩ 1^perp, the region of starting points whose
// orbit closure is the fundamental domain. nullopt if empty.
std::optional<ConvexPolygon> seed_region(const TijdemanParams& params);

struct PartitionOptions {
    double area_tol = 1e-9;
    int n_cap = 5000;
    // Called after every iteration with (iteration, accumulated area, stored pieces).
    std::function<void(int, double, std::size_t)> progress;
};

struct PartitionStats {
    int iterations = 0;
    std::size_t cells_generated = 0;
    std::size_t cells_kept = 0;
    double achieved_area = 0.0;
};

// Fundamental domain and natural partition P = ∪ P_i for d = 3, refined from a
// square seed inside U by iterating the exchange of the Q_{i,J} cells.
// Throws UnsupportedDimension, InvalidArgument outside the canonical regime and
// NoConvergence when n_cap is reached first.
ExchangeSystem exact_partition_d3(const TijdemanParams& params, const PartitionOptions& options = {},
                                  PartitionStats* stats = nullptr);

// Parallelograms iota(E_{alpha,i}) of the hypercubic billiard, d = 3.
ExchangeSystem hypercubic_partition_d3(const FrequencyVector& alpha);

// Greedily merges pieces whose union is convex. Exposed for testing.
std::vector<ConvexPolygon> merge_convex_pieces(std::vector<ConvexPolygon> pieces);

struct Segment {
    Vec2 a;
    Vec2 b;
};

struct UnionBoundary {
    // Directed boundary edges of the union, interior on the left.
    std::vector<Segment> segments;
    // Boundary edges chained into closed loops.
    std::vector<std::vector<Vec2>> loops;
    // Connected components, pieces joined when they share an edge of positive length.
    std::size_t components = 0;
};

// Boundary of a union of interior-disjoint convex pieces; shared edges cancel.
UnionBoundary union_boundary(std::span<const ConvexPolygon> pieces);

}  // namespace fairseq::geometry
