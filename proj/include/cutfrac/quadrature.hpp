#pragma once

#include <array>
#include <span>
#include <vector>

#include "cutfrac/geometry.hpp"

namespace cutfrac {

/// Points and weights; weights already include the measure of the integration domain.
struct QuadratureRule {
    std::vector<Point> points;
    std::vector<double> weights;

    double total_weight() const;
    void append(const QuadratureRule& other);
};

/// Symmetric 6-point rule, exact for polynomials of degree 4 on triangles.
/// Entries: barycentric (a, a, 1 - 2a) orbits with weight relative to the area.
struct TriangleRuleOrbit {
    double a;
    double weight;
};
inline constexpr std::array<TriangleRuleOrbit, 2> kDegree4Orbits{{
    {0.44594849091596488632, 0.22338158967801146570},
    {0.09157621350977074346, 0.10995174365532186764},
}};

/// Degree-4 rule on a triangle, weights scaled by the signed area.
void append_triangle_rule(QuadratureRule& rule, const Point& a, const Point& b, const Point& c);
QuadratureRule triangle_rule(const Triangle& tri);
/// Fan triangulation from the first vertex; exact for polynomials on any simple polygon.
void append_polygon_rule(QuadratureRule& rule, std::span<const Point> polygon);

/// 3-point Gauss-Legendre on a segment.
void append_segment_rule(QuadratureRule& rule, const Point& a, const Point& b);

} // namespace cutfrac
