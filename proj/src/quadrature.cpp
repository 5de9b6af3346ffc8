#include "cutfrac/quadrature.hpp"

#include <cmath>
#include <numeric>

namespace cutfrac {

double QuadratureRule::total_weight() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

void QuadratureRule::append(const QuadratureRule& other) {
    points.insert(points.end(), other.points.begin(), other.points.end());
    weights.insert(weights.end(), other.weights.begin(), other.weights.end());
}

void append_triangle_rule(QuadratureRule& rule, const Point& a, const Point& b, const Point& c) {
    const double area = 0.5 * cross(b - a, c - a);
    if (area == 0.0) return;
    for (const auto& orbit : kDegree4Orbits) {
        const double s = orbit.a;
        const double r = 1.0 - 2.0 * s;
        const double w = orbit.weight * area;
        rule.points.push_back(s * a + s * b + r * c);
        rule.points.push_back(s * a + r * b + s * c);
        rule.points.push_back(r * a + s * b + s * c);
        rule.weights.insert(rule.weights.end(), 3, w);
    }
}

QuadratureRule triangle_rule(const Triangle& tri) {
    QuadratureRule rule;
    append_triangle_rule(rule, tri.v[0], tri.v[1], tri.v[2]);
    return rule;
}

void append_polygon_rule(QuadratureRule& rule, std::span<const Point> polygon) {
    for (std::size_t i = 1; i + 1 < polygon.size(); ++i)
        append_triangle_rule(rule, polygon[0], polygon[i], polygon[i + 1]);
}

void append_segment_rule(QuadratureRule& rule, const Point& a, const Point& b) {
    static const double g = std::sqrt(0.6);
    static constexpr std::array<double, 3> w{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    const std::array<double, 3> t{0.5 - 0.5 * g, 0.5, 0.5 + 0.5 * g};
    const double len = (b - a).norm();
    for (int i = 0; i < 3; ++i) {
        rule.points.push_back(a + t[static_cast<std::size_t>(i)] * (b - a));
        rule.weights.push_back(w[static_cast<std::size_t>(i)] * len);
    }
}

} // namespace cutfrac
