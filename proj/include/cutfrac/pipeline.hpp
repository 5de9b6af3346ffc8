#pragma once

#include <memory>
#include <optional>

#include "cutfrac/assembly.hpp"
#include "cutfrac/cases.hpp"
#include "cutfrac/solver.hpp"

namespace cutfrac {

struct RunOptions {
    int n = 32;
    std::optional<double> beta;
    std::optional<double> gamma;
    std::optional<double> beta_gamma;
    std::optional<double> gamma_point;
    SolverOptions solver;
    bool estimate_condition = false;
    Execution exec = Execution::Parallel;
};

/// Mesh, cut topology and DOF map of a case at one resolution. Not movable: the
/// discretization views refer to its members.
struct Discretized {
    Mesh mesh;
    CutTopology topo;
    DofSpace space;
    ModelSpec model;
    ResolvedParameters params;

    Discretized() = default;
    Discretized(const Discretized&) = delete;
    Discretized& operator=(const Discretized&) = delete;

    Discretization view(const ManufacturedCase& c) const {
        return {mesh, c.graph, c.subdomains, topo, space, model, params};
    }
};

std::unique_ptr<Discretized> discretize(const ManufacturedCase& c, const RunOptions& opts);

/// Constrained free-DOF system of a discretized case.
ReducedSystem build_reduced_system(const ManufacturedCase& c, const Discretized& d, Execution exec);

struct Solution {
    std::unique_ptr<Discretized> disc;
    ReducedSystem system;
    SolveReport report;
    Eigen::VectorXd coefficients;  ///< full length, Dirichlet values included

    SolutionField field(const ManufacturedCase& c) const {
        return {&disc->mesh, &disc->topo, &disc->space, &c.subdomains, coefficients};
    }
};

/// Assemble, constrain, solve and optionally estimate the condition number.
Solution solve_case(const ManufacturedCase& c, const RunOptions& opts);

} // namespace cutfrac
