#include "cutfrac/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace cutfrac {

double Rectangle::diameter() const { return std::hypot(width(), height()); }

bool Rectangle::contains(const Point& p, double tol) const {
    return p.x() >= x0 - tol && p.x() <= x1 + tol && p.y() >= y0 - tol && p.y() <= y1 + tol;
}

bool Rectangle::strictly_contains(const Point& p, double tol) const {
    return p.x() > x0 + tol && p.x() < x1 - tol && p.y() > y0 + tol && p.y() < y1 - tol;
}

unsigned boundary_sides(const Rectangle& r, const Point& p, double tol) {
    unsigned mask = 0;
    if (std::abs(p.x() - r.x0) <= tol) mask |= 1u << static_cast<unsigned>(Side::Left);
    if (std::abs(p.x() - r.x1) <= tol) mask |= 1u << static_cast<unsigned>(Side::Right);
    if (std::abs(p.y() - r.y0) <= tol) mask |= 1u << static_cast<unsigned>(Side::Bottom);
    if (std::abs(p.y() - r.y1) <= tol) mask |= 1u << static_cast<unsigned>(Side::Top);
    return mask;
}

double Triangle::signed_area() const { return 0.5 * cross(v[1] - v[0], v[2] - v[0]); }

double Triangle::diameter() const {
    return std::max({(v[1] - v[0]).norm(), (v[2] - v[1]).norm(), (v[0] - v[2]).norm()});
}

std::array<double, 3> Triangle::barycentric(const Point& p) const {
    const double twice_area = cross(v[1] - v[0], v[2] - v[0]);
    const double l1 = cross(p - v[0], v[2] - v[0]) / twice_area;
    const double l2 = cross(v[1] - v[0], p - v[0]) / twice_area;
    return {1.0 - l1 - l2, l1, l2};
}

double signed_area(std::span<const Point> polygon) {
    if (polygon.size() < 3) return 0.0;
    const Point& o = polygon.front();
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < polygon.size(); ++i)
        twice += cross(polygon[i] - o, polygon[i + 1] - o);
    return 0.5 * twice;
}

double polyline_length(std::span<const Point> polyline) {
    double len = 0.0;
    for (std::size_t i = 1; i < polyline.size(); ++i) len += (polyline[i] - polyline[i - 1]).norm();
    return len;
}

double distance_to_segment(const Point& p, const Point& a, const Point& b) {
    const Point d = b - a;
    const double len2 = d.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(d) / len2, 0.0, 1.0);
    return (p - (a + t * d)).norm();
}

double distance_to_polyline(const Point& p, std::span<const Point> polyline) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < polyline.size(); ++i)
        best = std::min(best, distance_to_segment(p, polyline[i - 1], polyline[i]));
    return best;
}

double segment_distance(const Point& a, const Point& b, const Point& c, const Point& d) {
    const double o1 = cross(b - a, c - a);
    const double o2 = cross(b - a, d - a);
    const double o3 = cross(d - c, a - c);
    const double o4 = cross(d - c, b - c);
    if (((o1 < 0 && o2 > 0) || (o1 > 0 && o2 < 0)) && ((o3 < 0 && o4 > 0) || (o3 > 0 && o4 < 0)))
        return 0.0;
    return std::min({distance_to_segment(a, c, d), distance_to_segment(b, c, d),
                     distance_to_segment(c, a, b), distance_to_segment(d, a, b)});
}

std::optional<std::pair<double, double>> clip_segment(const Point& a, const Point& b,
                                                      const Triangle& tri) {
    double t0 = 0.0, t1 = 1.0;
    for (int i = 0; i < 3; ++i) {
        const Point& p = tri.v[i];
        const Point e = tri.v[(i + 1) % 3] - p;
        const double fa = cross(e, a - p);
        const double fb = cross(e, b - p);
        if (fa >= 0.0 && fb >= 0.0) continue;
        if (fa < 0.0 && fb < 0.0) return std::nullopt;
        const double t = fa / (fa - fb);
        if (fa < 0.0)
            t0 = std::max(t0, t);
        else
            t1 = std::min(t1, t);
    }
    if (t0 > t1) return std::nullopt;
    return std::make_pair(t0, t1);
}

std::vector<Point> clip_polygon(std::span<const Point> subject, const Triangle& tri) {
    std::vector<Point> current(subject.begin(), subject.end());
    std::vector<Point> next;
    for (int i = 0; i < 3 && !current.empty(); ++i) {
        const Point& p = tri.v[i];
        const Point e = tri.v[(i + 1) % 3] - p;
        next.clear();
        const std::size_t m = current.size();
        for (std::size_t k = 0; k < m; ++k) {
            const Point& s = current[(k + m - 1) % m];
            const Point& q = current[k];
            const double fs = cross(e, s - p);
            const double fq = cross(e, q - p);
            if (fq >= 0.0) {
                if (fs < 0.0) next.push_back(s + fs / (fs - fq) * (q - s));
                next.push_back(q);
            } else if (fs >= 0.0) {
                next.push_back(s + fs / (fs - fq) * (q - s));
            }
        }
        std::swap(current, next);
    }
    return current;
}

bool point_in_polygon(const Point& p, std::span<const Point> polygon) {
    bool inside = false;
    const std::size_t m = polygon.size();
    for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
        const Point& a = polygon[i];
        const Point& b = polygon[j];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            const double x = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
            if (p.x() < x) inside = !inside;
        }
    }
    return inside;
}

BoundingBox bounding_box(std::span<const Point> points) {
    BoundingBox box;
    for (const auto& p : points) box.extend(p);
    return box;
}

} // namespace cutfrac
