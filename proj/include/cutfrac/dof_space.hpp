#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "cutfrac/cut_topology.hpp"
#include "cutfrac/mesh.hpp"

namespace cutfrac {

/// One copy of an element's P1 basis, belonging to subdomain k.
struct ElementCopy {
    int subdomain = -1;
    std::array<int, 3> dofs{-1, -1, -1};
};

/// Doubled-element P1 space: one continuous P1 field per subdomain over its active mesh.
/// Degrees of freedom are numbered by subdomain, then by mesh vertex.
class DofSpace {
public:
    int ndof() const { return ndof_; }
    int subdomain_count() const { return static_cast<int>(dof_of_.size()); }
    /// -1 when vertex v is not in the active mesh of k.
    int dof_of(int k, int v) const { return dof_of_.at(static_cast<std::size_t>(k)).at(static_cast<std::size_t>(v)); }
    const std::vector<ElementCopy>& copies(int e) const { return copies_.at(static_cast<std::size_t>(e)); }
    /// Copy of element e for subdomain k; throws OutsideCoverage when e is not active in k.
    const ElementCopy& copy(int e, int k) const;
    int vertex_of(int dof) const { return vertex_of_.at(static_cast<std::size_t>(dof)); }
    int subdomain_of(int dof) const { return subdomain_of_.at(static_cast<std::size_t>(dof)); }
    /// DOFs whose vertex lies on the domain boundary, ascending.
    const std::vector<int>& boundary_dofs() const { return boundary_dofs_; }

    friend DofSpace build_dof_space(const Mesh&, const CutTopology&);

private:
    int ndof_ = 0;
    std::vector<std::vector<int>> dof_of_;
    std::vector<std::vector<ElementCopy>> copies_;
    std::vector<int> vertex_of_;
    std::vector<int> subdomain_of_;
    std::vector<int> boundary_dofs_;
};

DofSpace build_dof_space(const Mesh& mesh, const CutTopology& topo);

/// P1 hat values and (constant) gradients on a triangle.
struct BasisEval {
    std::array<double, 3> values;
    std::array<Point, 3> gradients;
};
BasisEval eval_basis(const Triangle& tri, const std::array<double, 3>& barycentric);
/// Gradients of the three hat functions as rows of a 3x2 matrix.
Eigen::Matrix<double, 3, 2> basis_gradients(const Triangle& tri);

struct SolutionField {
    const Mesh* mesh = nullptr;
    const CutTopology* topo = nullptr;
    const DofSpace* space = nullptr;
    const SubdomainMap* subdomains = nullptr;
    Eigen::VectorXd coefficients;

    /// Value of copy k at p, or of the subdomain containing p when k is nullopt.
    /// Throws OutsideCoverage when no active element of k contains p.
    double value(const Point& p, std::optional<int> k = std::nullopt) const;
    /// Value of copy k inside element e at p.
    double value_in(int e, int k, const Point& p) const;
    Point gradient_in(int e, int k) const;
};

double evaluate_solution(const SolutionField& field, const Point& p, std::optional<int> k = std::nullopt);

} // namespace cutfrac
