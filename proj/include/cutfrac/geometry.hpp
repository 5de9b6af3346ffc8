#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace cutfrac {

using Point = Eigen::Vector2d;

inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Unit normal obtained by rotating `t` clockwise (points to the right of `t`).
inline Point right_normal(const Point& t) { return {t.y(), -t.x()}; }
inline Point left_normal(const Point& t) { return {-t.y(), t.x()}; }

/// Axis-aligned computational domain [x0,x1] x [y0,y1].
struct Rectangle {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    double diameter() const;
    bool contains(const Point& p, double tol = 0.0) const;
    bool strictly_contains(const Point& p, double tol) const;
};

enum class Side { Left = 0, Right = 1, Bottom = 2, Top = 3 };
inline constexpr std::array<Side, 4> kAllSides{Side::Left, Side::Right, Side::Bottom, Side::Top};

/// Bitmask (1 << Side) of the rectangle sides `p` lies on, within `tol`.
unsigned boundary_sides(const Rectangle& r, const Point& p, double tol);

struct Triangle {
    std::array<Point, 3> v;

    double signed_area() const;
    double area() const { return std::abs(signed_area()); }
    double diameter() const;
    Point barycenter() const { return (v[0] + v[1] + v[2]) / 3.0; }
    /// Barycentric coordinates of p; the third is 1 - first two so they sum to one.
    std::array<double, 3> barycentric(const Point& p) const;
};

double signed_area(std::span<const Point> polygon);
double polyline_length(std::span<const Point> polyline);
double distance_to_segment(const Point& p, const Point& a, const Point& b);
double distance_to_polyline(const Point& p, std::span<const Point> polyline);
double segment_distance(const Point& a, const Point& b, const Point& c, const Point& d);

/// Parameter interval [t0,t1] of the segment a->b lying inside the closed CCW triangle.
/// Endpoint parameters 0 and 1 are returned exactly when the endpoint is inside.
std::optional<std::pair<double, double>> clip_segment(const Point& a, const Point& b,
                                                      const Triangle& tri);

/// Sutherland-Hodgman clip of an arbitrary (possibly non-convex, either orientation)
/// polygon against a convex CCW triangle. Degenerate bridges may appear in the output;
/// they carry zero signed area.
std::vector<Point> clip_polygon(std::span<const Point> subject, const Triangle& tri);

/// Crossing-number point-in-polygon test.
bool point_in_polygon(const Point& p, std::span<const Point> polygon);

struct BoundingBox {
    Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

    void extend(const Point& p) { lo = lo.cwiseMin(p); hi = hi.cwiseMax(p); }
    bool contains(const Point& p, double tol = 0.0) const {
        return p.x() >= lo.x() - tol && p.x() <= hi.x() + tol && p.y() >= lo.y() - tol &&
               p.y() <= hi.y() + tol;
    }
    bool overlaps(const BoundingBox& o, double tol = 0.0) const {
        return lo.x() <= o.hi.x() + tol && o.lo.x() <= hi.x() + tol && lo.y() <= o.hi.y() + tol &&
               o.lo.y() <= hi.y() + tol;
    }
};

BoundingBox bounding_box(std::span<const Point> points);

} // namespace cutfrac
