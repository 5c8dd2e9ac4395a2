#include "fairseq/geometry/partition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fairseq/errors.hpp"

namespace fairseq::geometry {

namespace {

constexpr double kJoinTolerance = 1e-8;

bool close(Vec2 a, Vec2 b, double tol = kJoinTolerance) { return norm(a - b) <= tol; }

ConvexPolygon big_square() { return ConvexPolygon::rectangle({-4.0, -4.0}, {4.0, 4.0}); }

std::optional<ConvexPolygon> clip_all(ConvexPolygon poly, const std::vector<HalfPlane>& hs) {
    std::optional<ConvexPolygon> cur = std::move(poly);
    for (const auto& h : hs) {
        if (!cur) break;
        cur = clip(*cur, h);
    }
    return cur;
}

// x_k as a linear form on iota-coordinates: x1 = q.x, x2 = q.y, x3 = -q.x - q.y.
Vec2 coord_form(std::size_t k) {
    switch (k) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        default: return {-1.0, -1.0};
    }
}

// {q : f(q) <= c} for the linear form f.
HalfPlane form_le(Vec2 f, double c) { return HalfPlane(f.x, f.y, c); }

struct Chebyshev {
    Vec2 center;
    double radius = 0.0;
};

// Largest inscribed disc of the polygon, by enumerating triples of edge constraints.
Chebyshev chebyshev_center(const ConvexPolygon& poly) {
    const auto hs = poly.half_planes();
    Chebyshev best{poly.centroid(), -1.0};
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j)
            for (std::size_t k = j + 1; k < hs.size(); ++k) {
                const std::array<const HalfPlane*, 3> t{&hs[i], &hs[j], &hs[k]};
                // a x + b y + r = c for the three constraints.
                double m[3][4];
                for (int r = 0; r < 3; ++r) {
                    m[r][0] = t[r]->normal().x;
                    m[r][1] = t[r]->normal().y;
                    m[r][2] = 1.0;
                    m[r][3] = t[r]->offset();
                }
                auto det3 = [](double a[3][4], int c0, int c1, int c2) {
                    return a[0][c0] * (a[1][c1] * a[2][c2] - a[1][c2] * a[2][c1]) -
                           a[0][c1] * (a[1][c0] * a[2][c2] - a[1][c2] * a[2][c0]) +
                           a[0][c2] * (a[1][c0] * a[2][c1] - a[1][c1] * a[2][c0]);
                };
                const double det = det3(m, 0, 1, 2);
                if (std::abs(det) < 1e-14) continue;
                const Vec2 p{det3(m, 3, 1, 2) / det, det3(m, 0, 3, 2) / det};
                const double r = det3(m, 0, 1, 3) / det;
                if (r <= best.radius) continue;
                bool feasible = true;
                for (const auto& h : hs)
                    if (h.signed_distance(p) + r > 1e-12) feasible = false;
                if (feasible) best = {p, r};
            }
    return best;
}

// Uniform grid over a box, each cell listing the pieces whose bounding box meets it.
class PieceIndex {
public:
    PieceIndex(BoundingBox box, int n) : box_(box), n_(n), cells_(static_cast<std::size_t>(n * n)) {}

    void add(ConvexPolygon p) {
        const std::size_t id = pieces_.size();
        for_cells(p.bbox(), [&](std::size_t c) { cells_[c].push_back(id); });
        pieces_.push_back(std::move(p));
        stamp_.push_back(0);
    }

    // poly minus every stored piece.
    std::vector<ConvexPolygon> subtract_from(const ConvexPolygon& poly) {
        ++epoch_;
        std::vector<std::size_t> ids;
        for_cells(poly.bbox(), [&](std::size_t c) {
            for (std::size_t id : cells_[c])
                if (stamp_[id] != epoch_) {
                    stamp_[id] = epoch_;
                    ids.push_back(id);
                }
        });
        std::sort(ids.begin(), ids.end());
        std::vector<ConvexPolygon> rest{poly};
        for (std::size_t id : ids) {
            const auto& other = pieces_[id];
            std::vector<ConvexPolygon> next;
            for (const auto& r : rest) {
                if (!r.bbox().overlaps(other.bbox())) {
                    next.push_back(r);
                    continue;
                }
                for (auto& s : subtract(r, other)) next.push_back(std::move(s));
            }
            rest = std::move(next);
            if (rest.empty()) break;
        }
        return rest;
    }

    const std::vector<ConvexPolygon>& pieces() const noexcept { return pieces_; }

    // Removes the pieces added after pieces().size() was `mark`.
    void rollback(std::size_t mark) {
        while (pieces_.size() > mark) {
            const std::size_t id = pieces_.size() - 1;
            for_cells(pieces_[id].bbox(), [&](std::size_t c) { cells_[c].pop_back(); });
            pieces_.pop_back();
            stamp_.pop_back();
        }
    }

private:
    template <typename F>
    void for_cells(const BoundingBox& b, F f) {
        auto idx = [&](double v, double lo, double hi) {
            const double t = (v - lo) / (hi - lo) * n_;
            return std::clamp(static_cast<int>(std::floor(t)), 0, n_ - 1);
        };
        const int x0 = idx(b.lo.x, box_.lo.x, box_.hi.x), x1 = idx(b.hi.x, box_.lo.x, box_.hi.x);
        const int y0 = idx(b.lo.y, box_.lo.y, box_.hi.y), y1 = idx(b.hi.y, box_.lo.y, box_.hi.y);
        for (int i = x0; i <= x1; ++i)
            for (int j = y0; j <= y1; ++j) f(static_cast<std::size_t>(i * n_ + j));
    }

    BoundingBox box_;
    int n_;
    std::vector<std::vector<std::size_t>> cells_;
    std::vector<ConvexPolygon> pieces_;
    std::vector<std::size_t> stamp_;
    std::size_t epoch_ = 0;
};

void require_d3(std::size_t d) {
    if (d != 3) throw UnsupportedDimension("exact partitions are implemented for d = 3 only");
}

std::array<Vec2, 3> translations(const FrequencyVector& a) {
    return {Vec2{a[0] - 1.0, a[1]}, Vec2{a[0], a[1] - 1.0}, Vec2{a[0], a[1]}};
}

bool mergeable(const ConvexPolygon& a, const ConvexPolygon& b, std::optional<ConvexPolygon>& merged) {
    if (!a.bbox().overlaps(b.bbox(), kJoinTolerance)) return false;
    std::vector<Vec2> pts(a.vertices().begin(), a.vertices().end());
    pts.insert(pts.end(), b.vertices().begin(), b.vertices().end());
    const double sum = a.area() + b.area();
    const auto hull = convex_hull(std::move(pts));
    if (hull.size() < 3) return false;
    if (std::abs(shoelace_area(hull) - sum) > 1e-10 + 1e-9 * sum) return false;
    merged = ConvexPolygon::try_make(hull);
    return merged.has_value();
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Ear-clipping triangulation of a simple counterclockwise loop.
std::vector<ConvexPolygon> triangulate(std::vector<Vec2> loop) {
    std::vector<ConvexPolygon> out;
    auto inside = [](Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
        return cross(b - a, p - a) > 0.0 && cross(c - b, p - b) > 0.0 && cross(a - c, p - c) > 0.0;
    };
    while (loop.size() > 3) {
        const std::size_t n = loop.size();
        bool clipped = false;
        for (std::size_t i = 0; i < n && !clipped; ++i) {
            const Vec2 a = loop[(i + n - 1) % n], b = loop[i], c = loop[(i + 1) % n];
            if (cross(b - a, c - b) <= 0.0) continue;
            bool ear = true;
            for (std::size_t k = 0; k < n && ear; ++k) {
                const Vec2 p = loop[k];
                if (p == a || p == b || p == c) continue;
                if (inside(p, a, b, c)) ear = false;
            }
            if (!ear) continue;
            if (auto t = ConvexPolygon::try_make({a, b, c})) out.push_back(std::move(*t));
            loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
        }
        if (!clipped) return {};
    }
    if (auto t = ConvexPolygon::try_make(loop)) out.push_back(std::move(*t));
    return out;
}

// Replaces a fragmented decomposition by one rebuilt from the union outline, when the
// outline consists of simple outer loops of the same total area.
std::vector<ConvexPolygon> rebuild_from_outline(std::vector<ConvexPolygon> pieces) {
    double area = 0.0;
    for (const auto& p : pieces) area += p.area();
    const auto ub = union_boundary(pieces);
    std::vector<ConvexPolygon> rebuilt;
    double rebuilt_area = 0.0;
    for (const auto& loop : ub.loops) {
        const double a = shoelace_area(loop);
        if (std::abs(a) < 1e-9) continue;
        if (a < 0.0) return pieces;
        auto tri = triangulate(loop);
        for (const auto& t : tri) rebuilt_area += t.area();
        for (auto& t : tri) rebuilt.push_back(std::move(t));
    }
    if (rebuilt.empty() || std::abs(rebuilt_area - area) > 1e-7) return pieces;
    return merge_convex_pieces(std::move(rebuilt));
}

}  // namespace

double PartitionAtom::area() const noexcept {
    double s = 0.0;
    for (const auto& p : polygons) s += p.area();
    return s;
}

std::size_t PartitionAtom::component_count() const { return union_boundary(polygons).components; }

bool PartitionAtom::contains(Vec2 p, double tol) const noexcept {
    return std::any_of(polygons.begin(), polygons.end(), [&](const ConvexPolygon& q) { return q.contains(p, tol); });
}

double PartitionAtom::distance(Vec2 p) const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& q : polygons) {
        if (q.contains(p)) return 0.0;
        m = std::min(m, q.boundary_distance(p));
    }
    return m;
}

std::vector<std::vector<Vec2>> PartitionAtom::outlines() const { return union_boundary(polygons).loops; }

double ExchangeSystem::total_area() const noexcept {
    double s = 0.0;
    for (const auto& a : atoms) s += a.area();
    return s;
}

Letter ExchangeSystem::locate(Vec2 p, double tol) const noexcept {
    for (const auto& a : atoms)
        if (a.contains(p, tol)) return a.letter;
    return 0;
}

double ExchangeSystem::max_overlap() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            for (const auto& p : atoms[i].polygons)
                for (const auto& q : atoms[j].polygons)
                    if (auto r = intersect(p, q)) worst = std::max(worst, r->area());
    return worst;
}

ExchangeSystem ExchangeSystem::translated() const {
    ExchangeSystem out = *this;
    for (auto& a : out.atoms)
        for (auto& p : a.polygons) p = p.translated(a.translation);
    return out;
}

std::vector<QCell> q_cells(const TijdemanParams& params) {
    require_d3(params.dim());
    const auto& a = params.alpha();
    const double C = params.C(), Cp = params.C_prime();
    std::vector<HalfPlane> bounding;
    for (std::size_t k = 0; k < 3; ++k) bounding.push_back(form_le(-1.0 * coord_form(k), Cp));
    std::vector<QCell> out;
    for (std::size_t i = 0; i < 3; ++i)
        for (unsigned J = 1; J < 8; ++J) {
            if (!(J & (1u << i))) continue;
            auto hs = bounding;
            for (std::size_t j = 0; j < 3; ++j) {
                const double e = 1.0 - a[j] - Cp;
                const Vec2 f = coord_form(j);
                if (J & (1u << j)) {
                    hs.push_back(form_le(-1.0 * f, -e));
                    if (j != i) {
                        // alpha_i x_j - alpha_j x_i <= C (alpha_i - alpha_j)
                        const Vec2 g = a[i] * f - a[j] * coord_form(i);
                        hs.push_back(form_le(g, C * (a[i] - a[j])));
                    }
                } else {
                    hs.push_back(form_le(f, e));
                }
            }
            if (auto poly = clip_all(big_square(), hs))
                out.push_back({static_cast<Letter>(i + 1), J, std::move(*poly)});
        }
    return out;
}

std::optional<ConvexPolygon> seed_region(const TijdemanParams& params) {
    require_d3(params.dim());
    std::vector<HalfPlane> hs;
    for (std::size_t k = 0; k < 3; ++k) {
        hs.push_back(form_le(coord_form(k), 1.0 - params.C_prime()));
        hs.push_back(form_le(-1.0 * coord_form(k), 1.0 - params.C()));
    }
    return clip_all(big_square(), hs);
}

ExchangeSystem exact_partition_d3(const TijdemanParams& params, const PartitionOptions& options,
                                  PartitionStats* stats) {
    require_d3(params.dim());
    if (!params.canonical()) throw InvalidArgument("exact partitions need C, C' in [1 - (1 + min alpha)/4, 1)");
    const auto cells = q_cells(params);
    const auto U = seed_region(params);
    if (!U) throw InvalidArgument("the seed region U is empty");
    const auto cheb = chebyshev_center(*U);
    const double h = cheb.radius / 4.0;
    const auto Q0 = ConvexPolygon::rectangle(cheb.center - Vec2{h, h}, cheb.center + Vec2{h, h});
    const auto t = translations(params.alpha());

    const double Cp = params.C_prime();
    PieceIndex acc({{-Cp - 0.5, -Cp - 0.5}, {2.0 * Cp + 0.5, 2.0 * Cp + 0.5}}, 96);
    acc.add(Q0);
    double area = Q0.area();
    std::vector<ConvexPolygon> frontier{Q0};
    PartitionStats st;
    while (area < 1.0 - options.area_tol) {
        if (st.iterations >= options.n_cap || frontier.empty()) {
            if (stats) *stats = st;
            throw NoConvergence("refinement stopped at area " + std::to_string(area) + " after " +
                                    std::to_string(st.iterations) + " iterations",
                                area, st.iterations);
        }
        ++st.iterations;
        std::vector<ConvexPolygon> next;
        const std::size_t mark = acc.pieces().size();
        for (const auto& f : frontier)
            for (const auto& k : cells) {
                auto piece = intersect(f, k.polygon);
                if (!piece) continue;
                ++st.cells_generated;
                for (auto& p : acc.subtract_from(piece->translated(t[k.letter - 1]))) {
                    area += p.area();
                    acc.add(p);
                    next.push_back(std::move(p));
                }
            }
        // Fragments cut out by the subtraction are glued back before they propagate.
        acc.rollback(mark);
        frontier = merge_convex_pieces(std::move(next));
        for (const auto& p : frontier) acc.add(p);
        if (options.progress) options.progress(st.iterations, area, acc.pieces().size());
    }
    st.cells_kept = acc.pieces().size();

    ExchangeSystem sys{{}, params.alpha(), params.C(), Cp, SystemKind::tijdeman};
    for (std::size_t i = 0; i < 3; ++i) sys.atoms.push_back({static_cast<Letter>(i + 1), {}, t[i]});
    for (const auto& p : acc.pieces())
        for (const auto& k : cells)
            if (auto r = intersect(p, k.polygon)) sys.atoms[k.letter - 1].polygons.push_back(std::move(*r));
    for (auto& a : sys.atoms) a.polygons = rebuild_from_outline(merge_convex_pieces(std::move(a.polygons)));
    st.achieved_area = sys.total_area();
    if (stats) *stats = st;
    return sys;
}

ExchangeSystem hypercubic_partition_d3(const FrequencyVector& alpha) {
    require_d3(alpha.dim());
    const auto t = translations(alpha);
    ExchangeSystem sys{{}, alpha, 1.0, 2.0 * alpha.max(), SystemKind::hypercubic};
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
        std::vector<Vec2> v;
        for (auto [l, m] : {std::pair{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}) {
            std::array<double, 3> y{};
            y[i] = 1.0;
            y[j] = l;
            y[k] = m;
            const double s = y[0] + y[1] + y[2];
            v.push_back({y[0] - s * alpha[0], y[1] - s * alpha[1]});
        }
        sys.atoms.push_back({static_cast<Letter>(i + 1), {ConvexPolygon(std::move(v))}, t[i]});
    }
    return sys;
}

std::vector<ConvexPolygon> merge_convex_pieces(std::vector<ConvexPolygon> pieces) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(pieces.begin(), pieces.end(),
                  [](const ConvexPolygon& a, const ConvexPolygon& b) { return a.bbox().lo.x < b.bbox().lo.x; });
        std::vector<bool> dead(pieces.size(), false);
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (dead[i]) continue;
            for (std::size_t j = i + 1; j < pieces.size(); ++j) {
                if (dead[j]) continue;
                if (pieces[j].bbox().lo.x > pieces[i].bbox().hi.x + kJoinTolerance) break;
                std::optional<ConvexPolygon> merged;
                if (mergeable(pieces[i], pieces[j], merged)) {
                    pieces[i] = std::move(*merged);
                    dead[j] = true;
                    changed = true;
                }
            }
        }
        std::vector<ConvexPolygon> alive;
        for (std::size_t i = 0; i < pieces.size(); ++i)
            if (!dead[i]) alive.push_back(std::move(pieces[i]));
        pieces = std::move(alive);
    }
    std::sort(pieces.begin(), pieces.end(), [](const ConvexPolygon& a, const ConvexPolygon& b) {
        const Vec2 p = a.centroid(), q = b.centroid();
        return p.x < q.x || (p.x == q.x && p.y < q.y);
    });
    return pieces;
}

UnionBoundary union_boundary(std::span<const ConvexPolygon> pieces) {
    struct Edge {
        Segment s;
        std::size_t owner;
        bool alive = true;
    };
    std::vector<Edge> edges;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        const auto v = pieces[p].vertices();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2 a = v[i], b = v[(i + 1) % v.size()];
            // Split the edge at vertices of other pieces lying on it (T-junctions).
            std::vector<double> ts{0.0, 1.0};
            const Vec2 ab = b - a;
            const double len2 = dot(ab, ab);
            for (std::size_t q = 0; q < pieces.size(); ++q) {
                if (q == p || !pieces[q].bbox().overlaps(pieces[p].bbox(), kJoinTolerance)) continue;
                for (Vec2 w : pieces[q].vertices()) {
                    const double tt = dot(w - a, ab) / len2;
                    if (tt <= 1e-9 || tt >= 1.0 - 1e-9) continue;
                    if (distance_to_segment(w, a, b) <= kJoinTolerance) ts.push_back(tt);
                }
            }
            std::sort(ts.begin(), ts.end());
            for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
                const Vec2 s = a + ts[k] * ab, e = a + ts[k + 1] * ab;
                if (!close(s, e)) edges.push_back({{s, e}, p});
            }
        }
    }
    DisjointSets ds(pieces.size());
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    auto minx = [&](std::size_t i) { return std::min(edges[i].s.a.x, edges[i].s.b.x); };
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return minx(i) < minx(j); });
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        auto& e = edges[order[oi]];
        if (!e.alive) continue;
        for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
            auto& f = edges[order[oj]];
            if (minx(order[oj]) > minx(order[oi]) + kJoinTolerance) break;
            if (!f.alive || f.owner == e.owner) continue;
            if (close(e.s.a, f.s.b) && close(e.s.b, f.s.a)) {
                e.alive = f.alive = false;
                ds.unite(e.owner, f.owner);
                break;
            }
        }
    }
    UnionBoundary out;
    for (const auto& e : edges)
        if (e.alive) out.segments.push_back(e.s);
    for (std::size_t p = 0; p < pieces.size(); ++p)
        if (ds.find(p) == p) ++out.components;

    std::vector<bool> used(out.segments.size(), false);
    for (std::size_t s = 0; s < out.segments.size(); ++s) {
        if (used[s]) continue;
        std::vector<Vec2> loop{out.segments[s].a};
        used[s] = true;
        Vec2 cur = out.segments[s].b;
        bool closed = false;
        while (!closed) {
            if (close(cur, loop.front())) {
                closed = true;
                break;
            }
            std::size_t found = out.segments.size();
            for (std::size_t k = 0; k < out.segments.size(); ++k)
                if (!used[k] && close(out.segments[k].a, cur)) {
                    found = k;
                    break;
                }
            if (found == out.segments.size()) break;
            used[found] = true;
            loop.push_back(cur);
            cur = out.segments[found].b;
        }
        // Drop collinear intermediate points left by edge splitting.
        std::vector<Vec2> simple;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const Vec2 a = loop[(i + loop.size() - 1) % loop.size()], b = loop[i], c = loop[(i + 1) % loop.size()];
            const double len = norm(c - a);
            if (len > 0.0 && std::abs(cross(c - a, b - a)) / len <= kJoinTolerance) continue;
            simple.push_back(b);
        }
        if (simple.size() >= 3) out.loops.push_back(std::move(simple));
    }
    return out;
}

}  // namespace fairseq::geometry
