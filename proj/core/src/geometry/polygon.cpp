#include "fairseq/geometry/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairseq/errors.hpp"

namespace fairseq::geometry {

double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }

double distance_to_segment(Vec2 p, Vec2 a, Vec2 b) noexcept {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

HalfPlane::HalfPlane(double a, double b, double c, bool closed) : closed_(closed) {
    const double n = std::hypot(a, b);
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("half-plane normal must be nonzero");
    a_ = a / n;
    b_ = b / n;
    c_ = c / n;
}

HalfPlane HalfPlane::left_of(Vec2 p, Vec2 q) {
    // Left of p->q: cross(q - p, z - p) >= 0, i.e. (dy) x - (dx) y <= dy p.x - dx p.y.
    const Vec2 d = q - p;
    return HalfPlane(d.y, -d.x, d.y * p.x - d.x * p.y);
}

HalfPlane HalfPlane::complement() const noexcept {
    HalfPlane h = *this;
    h.a_ = -a_;
    h.b_ = -b_;
    h.c_ = -c_;
    return h;
}

double shoelace_area(std::span<const Vec2> loop) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) s += cross(loop[i], loop[(i + 1) % loop.size()]);
    return 0.5 * s;
}

namespace {

// Dedups consecutive vertices, orients counterclockwise and drops collinear vertices.
std::vector<Vec2> clean(std::vector<Vec2> v) {
    std::vector<Vec2> out;
    out.reserve(v.size());
    for (Vec2 p : v)
        if (out.empty() || norm(p - out.back()) > ConvexPolygon::kVertexTolerance) out.push_back(p);
    while (out.size() > 1 && norm(out.front() - out.back()) <= ConvexPolygon::kVertexTolerance) out.pop_back();
    if (shoelace_area(out) < 0.0) std::reverse(out.begin(), out.end());
    bool changed = true;
    while (changed && out.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < out.size() && out.size() >= 3; ++i) {
            const Vec2 a = out[(i + out.size() - 1) % out.size()];
            const Vec2 b = out[i];
            const Vec2 c = out[(i + 1) % out.size()];
            const double len = norm(c - a);
            // Distance from b to the line ac.
            if (len == 0.0 || std::abs(cross(c - a, b - a)) / len <= ConvexPolygon::kVertexTolerance) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return out;
}

bool is_convex(const std::vector<Vec2>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i], b = v[(i + 1) % v.size()], c = v[(i + 2) % v.size()];
        if (cross(b - a, c - b) < -ConvexPolygon::kVertexTolerance * norm(b - a)) return false;
    }
    return true;
}

BoundingBox box_of(const std::vector<Vec2>& v) {
    BoundingBox b{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
                  {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
    for (Vec2 p : v) {
        b.lo.x = std::min(b.lo.x, p.x);
        b.lo.y = std::min(b.lo.y, p.y);
        b.hi.x = std::max(b.hi.x, p.x);
        b.hi.y = std::max(b.hi.y, p.y);
    }
    return b;
}

}  // namespace

ConvexPolygon::ConvexPolygon(Unchecked, std::vector<Vec2> vertices)
    : vertices_(std::move(vertices)), area_(shoelace_area(vertices_)), bbox_(box_of(vertices_)) {}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) {
    auto v = clean(std::move(vertices));
    if (v.size() < 3) throw InvalidArgument("polygon has fewer than 3 distinct vertices");
    if (!is_convex(v)) throw InvalidArgument("polygon is not convex");
    const double a = shoelace_area(v);
    if (!(a >= kMinArea)) throw InvalidArgument("polygon area below 1e-12");
    *this = ConvexPolygon(Unchecked{}, std::move(v));
}

std::optional<ConvexPolygon> ConvexPolygon::try_make(std::vector<Vec2> vertices) {
    auto v = clean(std::move(vertices));
    if (v.size() < 3 || !is_convex(v)) return std::nullopt;
    ConvexPolygon p(Unchecked{}, std::move(v));
    if (!(p.area_ >= kMinArea) || 2.0 * p.area_ / p.perimeter() < kMinWidth) return std::nullopt;
    return p;
}

ConvexPolygon ConvexPolygon::rectangle(Vec2 lo, Vec2 hi) {
    return ConvexPolygon({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
}

double ConvexPolygon::perimeter() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) s += norm(vertices_[(i + 1) % vertices_.size()] - vertices_[i]);
    return s;
}

Vec2 ConvexPolygon::centroid() const noexcept {
    double cx = 0.0, cy = 0.0;
    const Vec2 o = vertices_[0];
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Vec2 a = vertices_[i] - o, b = vertices_[(i + 1) % vertices_.size()] - o;
        const double w = cross(a, b);
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    return {o.x + cx / (6.0 * area_), o.y + cy / (6.0 * area_)};
}

double ConvexPolygon::inner_distance(Vec2 p) const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Vec2 a = vertices_[i], b = vertices_[(i + 1) % vertices_.size()];
        const Vec2 e = b - a;
        m = std::min(m, cross(e, p - a) / norm(e));
    }
    return m;
}

bool ConvexPolygon::contains(Vec2 p, double tol) const noexcept {
    if (!bbox_.contains(p, tol)) return false;
    return inner_distance(p) >= -tol;
}

double ConvexPolygon::boundary_distance(Vec2 p) const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        m = std::min(m, distance_to_segment(p, vertices_[i], vertices_[(i + 1) % vertices_.size()]));
    return m;
}

double ConvexPolygon::distance(Vec2 p) const noexcept {
    return inner_distance(p) >= 0.0 ? 0.0 : boundary_distance(p);
}

HalfPlane ConvexPolygon::edge_half_plane(std::size_t i) const {
    return HalfPlane::left_of(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
}

std::vector<HalfPlane> ConvexPolygon::half_planes() const {
    std::vector<HalfPlane> out;
    out.reserve(vertices_.size());
    for (std::size_t i = 0; i < vertices_.size(); ++i) out.push_back(edge_half_plane(i));
    return out;
}

ConvexPolygon ConvexPolygon::translated(Vec2 t) const {
    std::vector<Vec2> v(vertices_);
    for (auto& p : v) p += t;
    return ConvexPolygon(Unchecked{}, std::move(v));
}

std::optional<ConvexPolygon> clip(const ConvexPolygon& poly, const HalfPlane& h) {
    const auto v = poly.vertices();
    const std::size_t n = v.size();
    std::vector<double> s(n);
    bool all_in = true, all_out = true;
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = h.signed_distance(v[i]);
        if (s[i] > 0.0) all_in = false;
        if (s[i] < 0.0) all_out = false;
    }
    if (all_in) return poly;
    if (all_out) return std::nullopt;
    std::vector<Vec2> out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        if (s[i] <= 0.0) out.push_back(v[i]);
        if ((s[i] < 0.0 && s[j] > 0.0) || (s[i] > 0.0 && s[j] < 0.0)) {
            const double t = s[i] / (s[i] - s[j]);
            out.push_back(v[i] + t * (v[j] - v[i]));
        }
    }
    return ConvexPolygon::try_make(std::move(out));
}

std::optional<ConvexPolygon> intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (!a.bbox().overlaps(b.bbox())) return std::nullopt;
    std::optional<ConvexPolygon> cur = a;
    for (std::size_t i = 0; i < b.size() && cur; ++i) cur = clip(*cur, b.edge_half_plane(i));
    return cur;
}

std::vector<ConvexPolygon> subtract(const ConvexPolygon& poly, const ConvexPolygon& other) {
    if (!poly.bbox().overlaps(other.bbox())) return {poly};
    std::vector<ConvexPolygon> pieces;
    std::optional<ConvexPolygon> rest = poly;
    for (std::size_t i = 0; i < other.size() && rest; ++i) {
        const HalfPlane inside = other.edge_half_plane(i);
        if (auto outside = clip(*rest, inside.complement())) {
            if (outside->area() >= rest->area()) return {poly};
            pieces.push_back(std::move(*outside));
        }
        rest = clip(*rest, inside);
    }
    return pieces;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
    std::sort(points.begin(), points.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) return points;
    std::vector<Vec2> h(2 * points.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], points[i] - h[k - 2]) <= 0.0) --k;
        h[k++] = points[i];
    }
    for (std::size_t i = points.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 1] - h[k - 2], points[i] - h[k - 2]) <= 0.0) --k;
        h[k++] = points[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace fairseq::geometry
