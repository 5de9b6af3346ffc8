#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutfrac/fracture_graph.hpp"
#include "cutfrac/model.hpp"
#include "cutfrac/subdomains.hpp"

namespace cutfrac {

/// Exact bulk solution, one smooth branch per subdomain (each branch may be evaluated
/// slightly outside its subdomain).
struct ExactSolution {
    std::function<double(const Point&, int subdomain)> value;
    std::function<Point(const Point&, int subdomain)> gradient;
};

struct ManufacturedCase {
    std::string name;
    Rectangle domain;
    FractureGraph graph;
    SubdomainMap subdomains;
    ModelSpec model;
    std::optional<ExactSolution> exact;

    /// Nodes where two or more edge ends meet; the mesh must have vertices there.
    std::vector<Point> junctions() const;
};

/// Circle r = 3/4 around the origin in (0,1)^2, a = (1, 1000), f = -4.
/// With `extra_fracture`, the circle is split at 45 degrees and a curved fracture with
/// a_gamma = 0 runs from there to the right side.
ManufacturedCase case_example1(bool extra_fracture = false);
/// Circle r = e in (1, e^{5/4})^2 with a = a_gamma = 1 and fracture source f_gamma.
/// The exact solution is consistent with f_gamma = 1 only.
ManufacturedCase case_example2(double f_gamma = 1.0, bool extra_fracture = false);
/// Five-edge network with two junctions in (0,1)^2; no exact solution.
ManufacturedCase case_example3(const std::array<double, 5>& a_gamma);
/// The six fracture-permeability configurations shown for the junction network.
std::vector<std::array<double, 5>> example3_configurations();
/// Linear exact solution across a straight fracture at y = 1/sqrt(2); a1 = a2 = 1, a_gamma = 0.
ManufacturedCase case_patch_test();
/// Horizontal fracture at y = 0.5 + offset in (0,1)^2; f = 1, u = 0 on the boundary.
ManufacturedCase case_straight_fracture(double offset);

/// Curve sampling helpers.
std::vector<Point> arc_points(const Point& center, double radius, double theta0, double theta1, int segments);
std::vector<Point> bezier_points(std::span<const Point> control, int segments);

struct OracleReport {
    double bulk = 0.0;               ///< max |-div(a grad u) - f| and gradient consistency
    double trace_jump = 0.0;         ///< max |u_1 - u_2| on the fractures
    double interface_balance = 0.0;  ///< max |f_gamma - [[n.a grad u]] + div_gamma(a_gamma grad_gamma u)|
    std::string worst;               ///< equation and point of the largest residual
    bool admitted(double tol = 1e-4) const { return bulk < tol && trace_jump < tol && interface_balance < tol; }
};

/// Finite-difference check of the strong form at random points. Throws MissingExact.
OracleReport measure_residuals(const ManufacturedCase& c, int samples = 1000, std::uint64_t seed = 20240601);
/// As measure_residuals, throwing OracleFailed when any residual reaches 1e-4.
OracleReport residual_oracle(const ManufacturedCase& c, int samples = 1000, std::uint64_t seed = 20240601);

} // namespace cutfrac
