#include "cutfrac/dof_space.hpp"

#include <algorithm>

#include "cutfrac/error.hpp"

namespace cutfrac {

const ElementCopy& DofSpace::copy(int e, int k) const {
    for (const auto& c : copies(e))
        if (c.subdomain == k) return c;
    throw Error(ErrorKind::OutsideCoverage,
                "element " + std::to_string(e) + " is not active in subdomain " + std::to_string(k));
}

DofSpace build_dof_space(const Mesh& mesh, const CutTopology& topo) {
    DofSpace s;
    const int nsub = topo.subdomain_count();
    const auto nv = static_cast<std::size_t>(mesh.vertex_count());
    s.dof_of_.assign(static_cast<std::size_t>(nsub), std::vector<int>(nv, -1));
    for (int k = 0; k < nsub; ++k) {
        auto& map = s.dof_of_[static_cast<std::size_t>(k)];
        for (int e : topo.active(k))
            for (int v : mesh.triangles[static_cast<std::size_t>(e)]) map[static_cast<std::size_t>(v)] = 0;
        for (std::size_t v = 0; v < nv; ++v) {
            if (map[v] < 0) continue;
            map[v] = s.ndof_++;
            s.vertex_of_.push_back(static_cast<int>(v));
            s.subdomain_of_.push_back(k);
            if (mesh.vertex_sides[v] != 0) s.boundary_dofs_.push_back(map[v]);
        }
    }
    s.copies_.resize(static_cast<std::size_t>(mesh.element_count()));
    for (int e = 0; e < mesh.element_count(); ++e) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(e)];
        for (int k : topo.subdomains_of(e)) {
            ElementCopy c{k, {}};
            for (int i = 0; i < 3; ++i)
                c.dofs[static_cast<std::size_t>(i)] = s.dof_of_[static_cast<std::size_t>(k)][static_cast<std::size_t>(tri[static_cast<std::size_t>(i)])];
            s.copies_[static_cast<std::size_t>(e)].push_back(c);
        }
    }
    return s;
}

Eigen::Matrix<double, 3, 2> basis_gradients(const Triangle& tri) {
    const double twice = cross(tri.v[1] - tri.v[0], tri.v[2] - tri.v[0]);
    Eigen::Matrix<double, 3, 2> g;
    for (int i = 0; i < 3; ++i) {
        const Point& a = tri.v[static_cast<std::size_t>((i + 1) % 3)];
        const Point& b = tri.v[static_cast<std::size_t>((i + 2) % 3)];
        // gradient of the hat function of vertex i is the inward normal of the opposite side
        g(i, 0) = (a.y() - b.y()) / twice;
        g(i, 1) = (b.x() - a.x()) / twice;
    }
    return g;
}

BasisEval eval_basis(const Triangle& tri, const std::array<double, 3>& barycentric) {
    BasisEval out;
    out.values = barycentric;
    const auto g = basis_gradients(tri);
    for (int i = 0; i < 3; ++i) out.gradients[static_cast<std::size_t>(i)] = g.row(i).transpose();
    return out;
}

double SolutionField::value_in(int e, int k, const Point& p) const {
    const auto& c = space->copy(e, k);
    const auto b = mesh->triangle(e).barycentric(p);
    double v = 0.0;
    for (int i = 0; i < 3; ++i) v += b[static_cast<std::size_t>(i)] * coefficients[c.dofs[static_cast<std::size_t>(i)]];
    return v;
}

Point SolutionField::gradient_in(int e, int k) const {
    const auto& c = space->copy(e, k);
    const auto g = basis_gradients(mesh->triangle(e));
    Point grad = Point::Zero();
    for (int i = 0; i < 3; ++i) grad += coefficients[c.dofs[static_cast<std::size_t>(i)]] * g.row(i).transpose();
    return grad;
}

double SolutionField::value(const Point& p, std::optional<int> k) const {
    const int side = k ? *k : subdomains->classify(p);
    const int e = mesh->locate(p);
    if (e < 0) throw Error(ErrorKind::OutsideCoverage, "point outside the mesh");
    if (topo->is_active(e, side)) return value_in(e, side, p);
    // p may sit on the border of element e; try the elements sharing its vertices
    for (int v : mesh->triangles[static_cast<std::size_t>(e)]) {
        for (int other : mesh->vertex_star(v)) {
            if (!topo->is_active(other, side)) continue;
            const auto b = mesh->triangle(other).barycentric(p);
            if (std::min({b[0], b[1], b[2]}) >= -1e-12) return value_in(other, side, p);
        }
    }
    throw Error(ErrorKind::OutsideCoverage, "point not covered by the active mesh of subdomain " + std::to_string(side));
}

double evaluate_solution(const SolutionField& field, const Point& p, std::optional<int> k) {
    return field.value(p, k);
}

} // namespace cutfrac
