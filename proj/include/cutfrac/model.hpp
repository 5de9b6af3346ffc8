#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "cutfrac/fracture_graph.hpp"
#include "cutfrac/geometry.hpp"

namespace cutfrac {

enum class BcType { Neumann, Dirichlet };

struct BoundaryCondition {
    BcType type = BcType::Neumann;
    /// Dirichlet data for the copy of a boundary vertex in `subdomain`. Where a fracture meets
    /// the boundary, each copy can take its own branch.
    std::function<double(const Point&, int subdomain)> g;
};

/// Problem data and method parameters. Unset parameters take defaults from resolve().
struct ModelSpec {
    std::vector<double> a;  ///< permeability per subdomain
    std::function<double(const Point&, int subdomain)> f;
    std::function<double(const Point&, int edge)> f_gamma;
    std::array<BoundaryCondition, 4> bc;  ///< indexed by Side

    std::optional<double> beta;         ///< Nitsche penalty; default 10 * min a (averages are weighted toward the smaller a)
    std::optional<double> gamma;        ///< ghost penalty; default 0.1
    std::optional<double> beta_gamma;   ///< junction penalty; default 10 * max a_gamma
    std::optional<double> gamma_point;  ///< junction point stabilization; default gamma * h
};

/// Parameters with defaults filled in for a given mesh size.
struct ResolvedParameters {
    double h = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double beta_gamma = 0.0;
    double gamma_point = 0.0;
};

/// Throws InvalidInput when a permeability or parameter is out of range.
ResolvedParameters resolve(const ModelSpec& model, const FractureGraph& graph, int subdomain_count, double h);

/// Interface weights {kappa1, kappa2} for an edge between subdomains s1 and s2:
/// kappa1 = a[s2] / (a[s1] + a[s2]). Equal halves when s1 == s2.
std::array<double, 2> interface_weights(const ModelSpec& model, int s1, int s2);

} // namespace cutfrac
