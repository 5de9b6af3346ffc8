#include <cmath>
#include <set>

#include "support.hpp"

using namespace cutfrac;
using namespace cutfrac::test;

TEST_CASE("no fracture: one dof per vertex") {
    const auto c = plain_case();
    const auto d = make(c, 4);
    CHECK(d->space.ndof() == d->mesh.vertex_count());
}

TEST_CASE("one cut row duplicates the vertices of that row") {
    const auto c = straight_case(0.51);
    const auto d = make(c, 4);
    // lower copy covers grid rows 0..3 of vertices, upper copy rows 2..4
    std::set<int> lower, upper;
    for (int e = 0; e < d->mesh.element_count(); ++e) {
        const auto& tri = d->mesh.triangles[static_cast<std::size_t>(e)];
        double ylo = 1e9, yhi = -1e9;
        for (int v : tri) {
            ylo = std::min(ylo, d->mesh.vertices[v].y());
            yhi = std::max(yhi, d->mesh.vertices[v].y());
        }
        if (ylo < 0.51) lower.insert(tri.begin(), tri.end());
        if (yhi > 0.51) upper.insert(tri.begin(), tri.end());
    }
    CHECK(lower.size() == 20);
    CHECK(upper.size() == 15);
    CHECK(d->space.ndof() == 25 + 10);
    CHECK(d->space.ndof() == static_cast<int>(lower.size() + upper.size()));
}

TEST_CASE("dof count sums the active vertex sets and the map is injective") {
    for (const auto& c : {case_example1(true), case_example3({0, 0, 0, 0, 0})}) {
        const auto d = make(c, 16);
        int expect = 0;
        std::set<int> seen;
        for (int k = 0; k < c.subdomains.count(); ++k) {
            std::set<int> verts;
            for (int e : d->topo.active(k))
                for (int v : d->mesh.triangles[static_cast<std::size_t>(e)]) verts.insert(v);
            expect += static_cast<int>(verts.size());
            for (int v : verts) {
                const int dof = d->space.dof_of(k, v);
                REQUIRE(dof >= 0);
                CHECK(seen.insert(dof).second);
                CHECK(d->space.vertex_of(dof) == v);
                CHECK(d->space.subdomain_of(dof) == k);
            }
        }
        CHECK(d->space.ndof() == expect);
    }
}

TEST_CASE("elements at a junction vertex carry three copies") {
    const auto c = case_example3({0, 0, 0, 0, 0});
    const auto d = make(c, 32);
    for (int node : {0, 1}) {
        const int v = d->mesh.vertex_at(c.graph.nodes()[static_cast<std::size_t>(node)]);
        REQUIRE(v >= 0);
        int dofs = 0;
        for (int k = 0; k < c.subdomains.count(); ++k) dofs += d->space.dof_of(k, v) >= 0;
        CHECK(dofs == 3);
        std::set<int> seen;
        for (int e : d->mesh.vertex_star(v))
            for (int k : d->topo.subdomains_of(e)) seen.insert(k);
        CHECK(seen.size() == 3);
    }
    // uncut elements have exactly one copy
    for (int e = 0; e < d->mesh.element_count(); ++e)
        if (!d->topo.is_cut(e)) CHECK(d->space.copies(e).size() == 1);
}

TEST_CASE("P1 basis values and gradients") {
    const Triangle tri{{Point(0, 0), Point(1, 0), Point(0, 1)}};
    const auto mid = eval_basis(tri, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    for (double v : mid.values) CHECK(v == doctest::Approx(1.0 / 3));
    const auto v0 = eval_basis(tri, {1, 0, 0});
    CHECK(v0.values == std::array<double, 3>{1, 0, 0});
    CHECK((v0.gradients[0] - Point(-1, -1)).norm() < 1e-15);
    CHECK((v0.gradients[1] - Point(1, 0)).norm() < 1e-15);
    CHECK((v0.gradients[2] - Point(0, 1)).norm() < 1e-15);
}

TEST_CASE("partition of unity at every quadrature point") {
    for (const auto& c : {case_example1(), case_example2(), case_example3({0, 0, 0, 0, 0})}) {
        for (int n : {8, 16, 32}) {
            const auto d = make(c, n);
            for (int e = 0; e < d->mesh.element_count(); ++e) {
                const Triangle tri = d->mesh.triangle(e);
                for (int k : d->topo.subdomains_of(e)) {
                    for (const Point& q : d->topo.side_rule(d->mesh, e, k).points) {
                        const auto b = eval_basis(tri, tri.barycentric(q));
                        CHECK(std::abs(b.values[0] + b.values[1] + b.values[2] - 1.0) <= 1e-14);
                    }
                }
            }
        }
    }
}

TEST_CASE("solution evaluation") {
    const auto c = straight_case(0.51);
    const auto d = make(c, 8);
    SolutionField f{&d->mesh, &d->topo, &d->space, &c.subdomains, Eigen::VectorXd::Ones(d->space.ndof())};
    CHECK(f.value({0.2, 0.3}) == doctest::Approx(1.0));
    CHECK(evaluate_solution(f, {0.7, 0.9}) == doctest::Approx(1.0));

    f.coefficients = interpolate(d->space, d->mesh, [](const Point& p) { return p.x(); });
    CHECK(std::abs(f.value({0.3, 0.7}) - 0.3) <= 1e-14);

    // copies on the cut row are independent
    for (int i = 0; i < d->space.ndof(); ++i) f.coefficients[i] = d->space.subdomain_of(i);
    const Point on(0.33, 0.51);
    CHECK(f.value(on, 0) == doctest::Approx(0.0));
    CHECK(f.value(on, 1) == doctest::Approx(1.0));
    CHECK_THROWS_KIND(f.value({0.5, 0.1}, 1), ErrorKind::OutsideCoverage);
}

TEST_CASE("each copy is continuous across faces of its active mesh") {
    const auto c = case_example3({0, 0, 0, 0, 0});
    const auto d = make(c, 16);
    SolutionField f{&d->mesh, &d->topo, &d->space, &c.subdomains, random_vector(d->space.ndof(), 3)};
    for (const Face& face : d->mesh.faces) {
        if (!face.interior()) continue;
        const Point mid = 0.5 * (d->mesh.vertices[face.vertices[0]] + d->mesh.vertices[face.vertices[1]]);
        for (int k = 0; k < c.subdomains.count(); ++k) {
            if (!d->topo.is_active(face.elements[0], k) || !d->topo.is_active(face.elements[1], k)) continue;
            CHECK(std::abs(f.value_in(face.elements[0], k, mid) - f.value_in(face.elements[1], k, mid)) <= 1e-14);
        }
    }
}
