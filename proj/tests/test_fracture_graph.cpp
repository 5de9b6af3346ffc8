#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace cutfrac;
using namespace cutfrac::test;

TEST_CASE("single straight edge has one incidence per node") {
    const auto g = build_fracture_graph({{0.0, 0.5}, {1.0, 0.5}}, {{{{0.0, 0.5}, {1.0, 0.5}}, 0.0, {}}}, std::sqrt(2.0));
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.incident_edges(0) == std::vector<int>{0});
    CHECK(g.incident_edges(1) == std::vector<int>{0});
    CHECK(g.edge(0).endpoint_node_ids == std::array<int, 2>{0, 1});
}

TEST_CASE("junction network has two nodes of degree three") {
    const auto c = case_example3({0, 0, 0, 0, 0});
    int deg3 = 0;
    for (int i = 0; i < c.graph.node_count(); ++i) {
        const auto& inc = c.graph.incident_edges(i);
        if (inc.size() == 3) ++deg3;
        // recompute the incidence from the edge endpoints
        std::vector<int> expect;
        for (int j = 0; j < c.graph.edge_count(); ++j) {
            const auto ids = c.graph.edge(j).endpoint_node_ids;
            if (ids[0] == i || ids[1] == i) expect.push_back(j);
        }
        CHECK(inc == expect);
    }
    CHECK(deg3 == 2);
    CHECK(c.graph.incident_edges(0).size() == 3);
    CHECK(c.graph.incident_edges(1).size() == 3);
}

TEST_CASE("endpoints snap bitwise onto nodes") {
    const Point a(0.0, 0.5), b(1.0, 0.5);
    const auto g = build_fracture_graph({a, b}, {{{{0.0, 0.5 + 1e-14}, {0.5, 0.5}, {1.0 - 1e-14, 0.5}}, 0.0, {}}}, 1.0);
    CHECK(g.edge(0).polyline.front() == a);
    CHECK(g.edge(0).polyline.back() == b);
}

TEST_CASE("crossing edges and dangling endpoints are rejected") {
    const std::vector<Point> nodes{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
    CHECK_THROWS_KIND(build_fracture_graph(nodes, {{{{0, 0}, {1, 1}}, 0.0, {}}, {{{0, 1}, {1, 0}}, 0.0, {}}}, 1.0),
                      ErrorKind::EdgeCrossing);
    CHECK_THROWS_KIND(build_fracture_graph({{0, 0}}, {{{{0, 0}, {0.5, 0.5}}, 0.0, {}}}, 1.0), ErrorKind::DanglingEndpoint);
    CHECK_THROWS_KIND(build_fracture_graph({{0, 0}, {1, 1}}, {{{{0, 0}, {1, 1}}, -1.0, {}}}, 1.0), ErrorKind::InvalidInput);
}

TEST_CASE("edges may meet at a shared node") {
    const std::vector<Point> nodes{{0, 0.5}, {0.5, 0.5}, {1, 0.5}, {0.5, 1}};
    const std::vector<RawEdge> edges{{{{0, 0.5}, {0.5, 0.5}}, 0.0, {}},
                                     {{{0.5, 0.5}, {1, 0.5}}, 0.0, {}},
                                     {{{0.5, 0.5}, {0.5, 1}}, 0.0, {}}};
    const auto g = build_fracture_graph(nodes, edges, 1.0);
    CHECK(g.incident_edges(1).size() == 3);
}

TEST_CASE("triangle intersection of a vertical line") {
    const Triangle tri{{Point(0, 0), Point(1, 0), Point(0, 1)}};
    const auto g = build_fracture_graph({{0.5, -1.0}, {0.5, 2.0}}, {{{{0.5, -1.0}, {0.5, 2.0}}, 0.0, {}}}, 3.0);
    const auto cut = intersect_triangle(g.edge(0), tri);
    REQUIRE(cut.has_value());
    CHECK(cut->length() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK((cut->polyline.front() - Point(0.5, 0.0)).norm() < 1e-12);
    CHECK((cut->polyline.back() - Point(0.5, 0.5)).norm() < 1e-12);
}

TEST_CASE("triangle intersection: miss, double crossing, lying on a side") {
    const Triangle tri{{Point(0, 0), Point(1, 0), Point(0, 1)}};
    const auto far = build_fracture_graph({{2, 2}, {3, 3}}, {{{{2, 2}, {3, 3}}, 0.0, {}}}, 2.0);
    CHECK_FALSE(intersect_triangle(far.edge(0), tri).has_value());

    const std::vector<Point> s{{0.1, -0.5}, {0.1, 0.5}, {0.2, 1.5}, {0.3, 0.5}, {0.3, -0.5}};
    const auto zig = build_fracture_graph({s.front(), s.back()}, {{s, 0.0, {}}}, 3.0);
    CHECK_THROWS_KIND(intersect_triangle(zig.edge(0), tri), ErrorKind::MultipleCrossings);

    const auto side = build_fracture_graph({{-1, 0}, {2, 0}}, {{{{-1, 0}, {2, 0}}, 0.0, {}}}, 3.0);
    CHECK_THROWS_KIND(intersect_triangle(side.edge(0), tri), ErrorKind::FractureOnMeshFace);
}

TEST_CASE("exterior tangents") {
    const auto g = build_fracture_graph({{0.0, 0.5}, {1.0, 0.5}, {0.3, 0.3}}, {{{{0.0, 0.5}, {1.0, 0.5}}, 0.0, {{0, 1}}}}, 1.0);
    CHECK((edge_tangent_at_node(g, 0, 1) - Point(1, 0)).norm() < 1e-15);
    CHECK((edge_tangent_at_node(g, 0, 0) - Point(-1, 0)).norm() < 1e-15);
    CHECK_THROWS_KIND(edge_tangent_at_node(g, 0, 2), ErrorKind::NotIncident);
}

TEST_CASE("tangents at a smooth joint are anti-parallel") {
    const int segs = 512;
    const Point c(0, 0);
    const double r = 0.75;
    const auto a1 = arc_points(c, r, 0.0, std::numbers::pi / 4, segs);
    const auto a2 = arc_points(c, r, std::numbers::pi / 4, std::numbers::pi / 2, segs);
    const auto g = build_fracture_graph({a1.front(), a1.back(), a2.back()}, {{a1, 0.0, {{0, 1}}}, {a2, 0.0, {{1, 2}}}}, 1.0);
    const Point t1 = edge_tangent_at_node(g, 0, 1), t2 = edge_tangent_at_node(g, 1, 1);
    const double resolution = (std::numbers::pi / 4) / segs;
    CHECK(std::acos(std::clamp(-t1.dot(t2), -1.0, 1.0)) <= resolution * 1.01);
}

TEST_CASE("intersection lengths over a mesh add up to the edge length") {
    const auto c = case_example1();
    const Mesh mesh = build_structured_mesh(c.domain, 16);
    const Edge& e = c.graph.edge(0);
    double total = 0.0;
    for (int t = 0; t < mesh.element_count(); ++t) {
        const auto cut = intersect_triangle(e, mesh.triangle(t));
        if (!cut) continue;
        CHECK(cut->length() <= e.length());
        total += cut->length();
    }
    CHECK(std::abs(total - e.length()) <= 1e-10 * e.length());
}
