#pragma once

#include <optional>
#include <span>
#include <vector>

namespace fairseq::geometry {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(Vec2 o) noexcept { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) noexcept { x -= o.x; y -= o.y; return *this; }
    friend Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) noexcept;
double distance_to_segment(Vec2 p, Vec2 a, Vec2 b) noexcept;

struct BoundingBox {
    Vec2 lo;
    Vec2 hi;

    bool overlaps(const BoundingBox& o, double tol = 0.0) const noexcept {
        return lo.x <= o.hi.x + tol && o.lo.x <= hi.x + tol && lo.y <= o.hi.y + tol &&
               o.lo.y <= hi.y + tol;
    }
    bool contains(Vec2 p, double tol = 0.0) const noexcept {
        return p.x >= lo.x - tol && p.x <= hi.x + tol && p.y >= lo.y - tol && p.y <= hi.y + tol;
    }
};

// The region {p : a p.x + b p.y <= c} (or < c when !closed), with (a,b) a unit vector.
class HalfPlane {
public:
    // Normalizes (a,b); throws InvalidArgument when (a,b) = (0,0).
    HalfPlane(double a, double b, double c, bool closed = true);

    // The half-plane to the left of the directed line from p to q.
    static HalfPlane left_of(Vec2 p, Vec2 q);

    Vec2 normal() const noexcept { return {a_, b_}; }
    double offset() const noexcept { return c_; }
    bool closed() const noexcept { return closed_; }

    // a x + b y - c: negative inside, positive outside, Euclidean distance to the boundary line.
    double signed_distance(Vec2 p) const noexcept { return a_ * p.x + b_ * p.y - c_; }
    bool contains(Vec2 p, double tol = 0.0) const noexcept { return signed_distance(p) <= tol; }
    // Closure of the complement.
    HalfPlane complement() const noexcept;

private:
    double a_;
    double b_;
    double c_;
    bool closed_;
};

// Convex polygon with counterclockwise vertices, at least three of them, no repeated
// or collinear vertices and positive area.
class ConvexPolygon {
public:
    static constexpr double kVertexTolerance = 1e-9;
    static constexpr double kMinArea = 1e-12;
    // Polygons thinner than this (2 area / perimeter) are treated as empty.
    static constexpr double kMinWidth = 1e-10;

    // Cleans the vertex list (dedup, orientation, collinear removal) and validates it.
    // Throws InvalidArgument if the result is not a convex polygon of positive area.
    explicit ConvexPolygon(std::vector<Vec2> vertices);
    // Same as the constructor but returns nullopt instead of throwing, and also
    // rejects slivers below kMinArea / kMinWidth.
    static std::optional<ConvexPolygon> try_make(std::vector<Vec2> vertices);

    static ConvexPolygon rectangle(Vec2 lo, Vec2 hi);

    std::span<const Vec2> vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    Vec2 operator[](std::size_t i) const noexcept { return vertices_[i]; }

    double area() const noexcept { return area_; }
    double perimeter() const noexcept;
    Vec2 centroid() const noexcept;
    const BoundingBox& bbox() const noexcept { return bbox_; }

    // Closed containment with tolerance on the edge distance.
    bool contains(Vec2 p, double tol = 0.0) const noexcept;
    // Smallest signed edge distance: positive inside, negative outside.
    double inner_distance(Vec2 p) const noexcept;
    // Euclidean distance from p to the polygon boundary.
    double boundary_distance(Vec2 p) const noexcept;
    // Distance from p to the (closed) polygon; zero inside.
    double distance(Vec2 p) const noexcept;

    // Edge i runs from vertex i to vertex i+1; the polygon lies on its left.
    HalfPlane edge_half_plane(std::size_t i) const;
    std::vector<HalfPlane> half_planes() const;

    ConvexPolygon translated(Vec2 t) const;

private:
    struct Unchecked {};
    ConvexPolygon(Unchecked, std::vector<Vec2> vertices);

    std::vector<Vec2> vertices_;
    double area_ = 0.0;
    BoundingBox bbox_{};
};

// poly ∩ h, or nullopt if the intersection has area below ConvexPolygon::kMinArea.
std::optional<ConvexPolygon> clip(const ConvexPolygon& poly, const HalfPlane& h);

// Intersection of two convex polygons.
std::optional<ConvexPolygon> intersect(const ConvexPolygon& a, const ConvexPolygon& b);

// Decomposition of poly \ other into interior-disjoint convex pieces.
std::vector<ConvexPolygon> subtract(const ConvexPolygon& poly, const ConvexPolygon& other);

// Counterclockwise convex hull (Andrew's monotone chain); collinear points dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

// Signed shoelace area of a closed vertex loop.
double shoelace_area(std::span<const Vec2> loop) noexcept;

}  // namespace fairseq::geometry
