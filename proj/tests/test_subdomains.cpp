#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace cutfrac;
using namespace cutfrac::test;

TEST_CASE("circle splits the unit square into inside and outside") {
    const auto c = case_example1();
    CHECK(c.subdomains.count() == 2);
    CHECK(classify_point(c.subdomains, {0.1, 0.1}) == 0);
    CHECK(classify_point(c.subdomains, {0.9, 0.9}) == 1);
    const Point on = c.graph.edge(0).polyline[1000];
    CHECK_THROWS_KIND(classify_point(c.subdomains, on), ErrorKind::OnInterface);
    CHECK_THROWS_KIND(classify_point(c.subdomains, {1.5, 0.5}), ErrorKind::OutsideDomain);

    const double quarter = std::numbers::pi * 0.75 * 0.75 / 4.0;
    CHECK(c.subdomains.area(0) == doctest::Approx(quarter).epsilon(1e-6));
    CHECK(c.subdomains.area(0) + c.subdomains.area(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("interior points classify into their own subdomain") {
    for (const auto& c : {case_example1(), case_example1(true), case_example2(), case_example3({0, 0, 0, 0, 0})}) {
        for (int k = 0; k < c.subdomains.count(); ++k) CHECK(c.subdomains.classify(c.subdomains.interior_point(k)) == k);
    }
}

TEST_CASE("subdomain counts of the named geometries") {
    CHECK(case_example1(true).subdomains.count() == 3);
    CHECK(case_example2().subdomains.count() == 2);
    CHECK(case_example3({0, 0, 0, 0, 0}).subdomains.count() == 4);
    CHECK(plain_case().subdomains.count() == 1);
}

TEST_CASE("classification is unchanged by resampling the polyline") {
    const Rectangle dom{0, 0, 1, 1};
    auto build = [&](int segs) {
        const auto pts = arc_points({0, 0}, 0.75, 0.0, std::numbers::pi / 2, segs);
        FractureGraph g = build_fracture_graph({pts.front(), pts.back()}, {{pts, 0.0, {{0, 1}}}}, dom.diameter());
        return std::make_pair(g, build_subdomain_map(dom, g));
    };
    const auto [g1, m1] = build(256);
    const auto [g2, m2] = build(2560);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double sag = 0.75 * (1.0 - std::cos(std::numbers::pi / 2 / 256 / 2));
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        const Point p(u(rng), u(rng));
        if (std::abs(p.norm() - 0.75) <= 2.0 * sag) continue;
        CHECK(m1.classify(p) == m2.classify(p));
        ++checked;
    }
    CHECK(checked > 1900);
}

TEST_CASE("edge sides of the circle are inside and outside") {
    const auto c = case_example1();
    const auto sides = c.subdomains.edge_sides(0);
    // the arc runs counter-clockwise, so the inside is on its left
    CHECK(sides[0] == 0);
    CHECK(sides[1] == 1);
}

TEST_CASE("fractures leaving the domain are rejected") {
    const auto g = build_fracture_graph({{0.5, 0.5}, {1.5, 0.5}}, {{{{0.5, 0.5}, {1.5, 0.5}}, 0.0, {}}}, 1.0);
    CHECK_THROWS_KIND(build_subdomain_map({0, 0, 1, 1}, g), ErrorKind::InvalidInput);
}
