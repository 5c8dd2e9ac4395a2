#include "fairseq/geometry/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fairseq/errors.hpp"

namespace fairseq::geometry {

namespace {

struct Piece {
    const ConvexPolygon* poly;
    Letter letter;
};

std::vector<Piece> pieces_of(const ExchangeSystem& system) {
    std::vector<Piece> out;
    for (const auto& a : system.atoms)
        for (const auto& p : a.polygons) out.push_back({&p, a.letter});
    return out;
}

// Uniform point of the atom, area-weighted over its pieces.
Vec2 sample_atom(const PartitionAtom& atom, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = u(rng) * atom.area();
    const ConvexPolygon* poly = &atom.polygons.back();
    for (const auto& p : atom.polygons) {
        if (r < p.area()) {
            poly = &p;
            break;
        }
        r -= p.area();
    }
    const auto& b = poly->bbox();
    for (;;) {
        const Vec2 q{b.lo.x + u(rng) * (b.hi.x - b.lo.x), b.lo.y + u(rng) * (b.hi.y - b.lo.y)};
        if (poly->contains(q)) return q;
    }
}

}  // namespace

TilingReport verify_tiling(const ExchangeSystem& system, std::size_t samples, std::uint64_t seed) {
    TilingReport rep;
    rep.samples = samples;
    const auto pieces = pieces_of(system);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (std::size_t s = 0; s < samples; ++s) {
        const Vec2 p{u(rng), u(rng)};
        std::size_t cover = 0;
        bool near_edge = false;
        for (const auto& pc : pieces) {
            const auto& b = pc.poly->bbox();
            // Lattice vectors q with p - q inside the piece's bounding box.
            const int qx0 = std::max(-4, static_cast<int>(std::ceil(p.x - b.hi.x - kTilingEdgeExclusion)));
            const int qx1 = std::min(4, static_cast<int>(std::floor(p.x - b.lo.x + kTilingEdgeExclusion)));
            const int qy0 = std::max(-4, static_cast<int>(std::ceil(p.y - b.hi.y - kTilingEdgeExclusion)));
            const int qy1 = std::min(4, static_cast<int>(std::floor(p.y - b.lo.y + kTilingEdgeExclusion)));
            for (int qx = qx0; qx <= qx1; ++qx)
                for (int qy = qy0; qy <= qy1; ++qy) {
                    const double dist = pc.poly->inner_distance({p.x - qx, p.y - qy});
                    if (std::abs(dist) <= kTilingEdgeExclusion) near_edge = true;
                    else if (dist > 0.0) ++cover;
                }
            if (near_edge) break;
        }
        if (near_edge) continue;
        ++rep.counted;
        if (cover == 1) ++rep.exactly_once;
        else if (cover == 0) ++rep.uncovered;
        else ++rep.multiply_covered;
    }
    if (rep.counted > 0) {
        const double n = static_cast<double>(rep.counted);
        rep.coverage_fraction = static_cast<double>(rep.exactly_once) / n;
        rep.deficit_fraction = static_cast<double>(rep.uncovered) / n - static_cast<double>(rep.multiply_covered) / n;
    }
    rep.pass = rep.counted > 0 && rep.coverage_fraction >= kTilingPassFraction;
    return rep;
}

NaturalPartitionReport verify_natural_partition(const ExchangeSystem& system, const TijdemanParams& params,
                                                std::size_t steps, std::uint64_t seed) {
    if (params.dim() != 3 || system.alpha.dim() != 3)
        throw UnsupportedDimension("natural-partition checks are implemented for d = 3 only");
    NaturalPartitionReport rep;
    rep.steps = steps;
    const auto x0 = SumZeroVector::zero(3);
    const auto trace = system.kind == SystemKind::hypercubic
                           ? billiard_generate(x0, params.alpha(), steps, {.keep_points = true, .check_bounds = false})
                           : tijdeman_generate(TijdemanParams(params.alpha(), params.C(), params.C_prime(), x0),
                                               steps, {.keep_points = true, .check_bounds = false});
    const auto pieces = pieces_of(system);
    for (std::size_t n = 0; n < steps; ++n) {
        const Vec2 p = iota2(trace.points[n]);
        const Letter l = trace.letters[n];
        const double dist = l <= system.atoms.size() ? system.atoms[l - 1].distance(p) : INFINITY;
        rep.max_orbit_distance = std::max(rep.max_orbit_distance, dist);
        if (!(dist <= kOrbitAtomTolerance)) ++rep.orbit_failures;

        Letter located = 0;
        bool ambiguous = false;
        for (const auto& pc : pieces) {
            if (!pc.poly->bbox().contains(p, kOrbitAtomTolerance)) continue;
            const double d = pc.poly->inner_distance(p);
            if (std::abs(d) <= kOrbitAtomTolerance) {
                ambiguous = true;
                break;
            }
            if (d > 0.0) located = pc.letter;
        }
        if (ambiguous) {
            ++rep.excluded;
            continue;
        }
        ++rep.classified;
        if (located != l) ++rep.mismatches;
    }
    rep.orbit_in_atoms = rep.orbit_failures == 0;
    rep.classification_agrees = rep.classified > 0 && rep.mismatches == 0;

    std::mt19937_64 rng(seed);
    for (const auto& atom : system.atoms) {
        if (atom.polygons.empty()) continue;
        for (int k = 0; k < 1000; ++k) {
            const Vec2 q = sample_atom(atom, rng) + atom.translation;
            ++rep.image_samples;
            bool inside = false;
            for (const auto& pc : pieces)
                if (pc.poly->contains(q, kOrbitAtomTolerance)) {
                    inside = true;
                    break;
                }
            if (!inside) ++rep.image_failures;
        }
    }
    rep.images_inside = rep.image_samples > 0 && rep.image_failures == 0;
    rep.pass = rep.orbit_in_atoms && rep.images_inside && rep.classification_agrees;
    return rep;
}

namespace {

double distance_to_segments(Vec2 p, const std::vector<Segment>& segs) {
    double m = INFINITY;
    for (const auto& s : segs) m = std::min(m, distance_to_segment(p, s.a, s.b));
    return m;
}

}  // namespace

ModelSet model_set_vertices(const FrequencyVector& alpha, const SumZeroVector& x0, const ExchangeSystem& window,
                            int M) {
    if (alpha.dim() != 3 || x0.dim() != 3) throw UnsupportedDimension("model sets are enumerated for d = 3 only");
    if (M < 0 || M > 200) throw InvalidArgument("M must lie in 0..200");
    std::vector<ConvexPolygon> polys;
    for (const auto& a : window.atoms) polys.insert(polys.end(), a.polygons.begin(), a.polygons.end());
    const auto boundary = union_boundary(polys).segments;
    BoundingBox box{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
    for (const auto& p : polys) {
        box.lo.x = std::min(box.lo.x, p.bbox().lo.x);
        box.lo.y = std::min(box.lo.y, p.bbox().lo.y);
        box.hi.x = std::max(box.hi.x, p.bbox().hi.x);
        box.hi.y = std::max(box.hi.y, p.bbox().hi.y);
    }
    const Vec2 c = iota2(x0);
    ModelSet out;
    for (int i = 0; i <= M; ++i)
        for (int j = 0; j <= M; ++j)
            for (int k = 0; k <= M; ++k) {
                const double s = i + j + k;
                // x0 - pi_alpha(x) in iota-coordinates.
                const Vec2 z{c.x - (i - s * alpha[0]), c.y - (j - s * alpha[1])};
                if (!box.contains(z, kModelSetBoundary)) continue;
                const LatticePoint x{i, j, k};
                if (distance_to_segments(z, boundary) < kModelSetBoundary) {
                    out.boundary.insert(x);
                    continue;
                }
                for (const auto& p : polys)
                    if (p.contains(z)) {
                        out.interior.insert(x);
                        break;
                    }
            }
    return out;
}

std::set<LatticePoint> broken_line_vertices(const FrequencyVector& alpha, const SumZeroVector& x0, int M) {
    if (alpha.dim() != 3) throw UnsupportedDimension("broken lines are enumerated for d = 3 only");
    const auto trace = billiard_generate(x0, alpha, static_cast<std::size_t>(3 * M + 3),
                                         {.keep_points = false, .check_bounds = false});
    std::set<LatticePoint> out;
    LatticePoint p{0, 0, 0};
    out.insert(p);
    for (Letter l : trace.letters.letters()) {
        ++p[l - 1];
        if (p[l - 1] > M) break;
        out.insert(p);
    }
    return out;
}

}  // namespace fairseq::geometry
