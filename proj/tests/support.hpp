#pragma once

#include <memory>
#include <random>

#include "doctest.h"

#include "cutfrac/error.hpp"
#include "cutfrac/pipeline.hpp"

namespace cutfrac::test {

#define CHECK_THROWS_KIND(expr, k)                                     \
    do {                                                               \
        bool thrown_ = false;                                          \
        try {                                                          \
            (void)(expr);                                              \
        } catch (const ::cutfrac::Error& e_) {                         \
            thrown_ = true;                                            \
            CHECK_MESSAGE(e_.kind() == (k), ::cutfrac::to_string(e_.kind())); \
        }                                                              \
        CHECK_MESSAGE(thrown_, "expected " << ::cutfrac::to_string(k)); \
    } while (0)

/// Case with a single straight fracture from (x0, y) to (x1, y) on the unit square.
inline ManufacturedCase straight_case(double y, double a_gamma = 0.0, double x0 = 0.0, double x1 = 1.0) {
    ManufacturedCase c;
    c.name = "straight";
    c.domain = {0.0, 0.0, 1.0, 1.0};
    c.graph = build_fracture_graph({{x0, y}, {x1, y}}, {{{{x0, y}, {x1, y}}, a_gamma, {{0, 1}}}}, c.domain.diameter());
    c.subdomains = build_subdomain_map(c.domain, c.graph);
    c.model.a.assign(static_cast<std::size_t>(c.subdomains.count()), 1.0);
    c.model.f = [](const Point&, int) { return 0.0; };
    c.model.f_gamma = [](const Point&, int) { return 0.0; };
    for (auto& bc : c.model.bc) bc = {BcType::Dirichlet, [](const Point&, int) { return 0.0; }};
    return c;
}

/// Unfractured rectangle.
inline ManufacturedCase plain_case(const Rectangle& domain = {}) {
    ManufacturedCase c;
    c.name = "plain";
    c.domain = domain;
    c.graph = build_fracture_graph({}, {}, domain.diameter());
    c.subdomains = build_subdomain_map(c.domain, c.graph);
    c.model.a = {1.0};
    c.model.f = [](const Point&, int) { return 0.0; };
    c.model.f_gamma = [](const Point&, int) { return 0.0; };
    for (auto& bc : c.model.bc) bc = {BcType::Dirichlet, [](const Point&, int) { return 0.0; }};
    return c;
}

inline std::unique_ptr<Discretized> make(const ManufacturedCase& c, int n, RunOptions opts = {}) {
    opts.n = n;
    return discretize(c, opts);
}

/// Coefficients taking the value fn(vertex) on every copy.
template <class F>
Eigen::VectorXd interpolate(const DofSpace& space, const Mesh& mesh, F&& fn) {
    Eigen::VectorXd v(space.ndof());
    for (int i = 0; i < space.ndof(); ++i) v[i] = fn(mesh.vertices[static_cast<std::size_t>(space.vertex_of(i))]);
    return v;
}

inline Eigen::VectorXd random_vector(Eigen::Index n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    Eigen::VectorXd v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

inline double max_asymmetry(const SparseMatrix& A) {
    const SparseMatrix At = A.transpose();
    const SparseMatrix D = A - At;
    return D.nonZeros() ? D.coeffs().cwiseAbs().maxCoeff() : 0.0;
}

} // namespace cutfrac::test
