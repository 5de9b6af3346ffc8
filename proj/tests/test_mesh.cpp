#include <cmath>
#include <sstream>

#include "support.hpp"

using namespace cutfrac;
using namespace cutfrac::test;

TEST_CASE("2x2 grid of the unit square") {
    const Mesh m = build_structured_mesh({0, 0, 1, 1}, 2);
    CHECK(m.vertex_count() == 9);
    CHECK(m.element_count() == 8);
    CHECK(m.h == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("mesh is conforming, positively oriented and quasi-uniform") {
    for (int n : {2, 5, 16}) {
        const Mesh m = build_structured_mesh({-1, 2, 3, 3.5}, n);
        CHECK(static_cast<int>(m.faces.size()) == 3 * n * n + 2 * n);
        int boundary = 0;
        for (std::size_t f = 0; f < m.faces.size(); ++f) {
            const Face& face = m.faces[f];
            if (!face.interior()) {
                ++boundary;
                const Point mid = 0.5 * (m.vertices[face.vertices[0]] + m.vertices[face.vertices[1]]);
                CHECK(boundary_sides(m.domain, mid, 1e-12) != 0u);
            }
            const Point nrm = m.face_normal(static_cast<int>(f));
            CHECK(nrm.norm() == doctest::Approx(1.0));
            const Point mid = 0.5 * (m.vertices[face.vertices[0]] + m.vertices[face.vertices[1]]);
            const Point bc = m.triangle(face.elements[0]).barycenter();
            CHECK(nrm.dot(mid - bc) > 0.0);
        }
        CHECK(boundary == 4 * n);
        for (int e = 0; e < m.element_count(); ++e) CHECK(m.triangle(e).signed_area() > 0.0);
        CHECK(m.h / m.min_diameter() <= 4.0);
    }
}

TEST_CASE("snapping onto an existing grid point moves nothing") {
    const std::vector<Point> snap{{0.5, 0.5}};
    const Mesh m = build_structured_mesh({0, 0, 1, 1}, 4, snap);
    const int v = m.vertex_at({0.5, 0.5});
    REQUIRE(v >= 0);
    CHECK(m.vertices[static_cast<std::size_t>(v)] == Point(0.5, 0.5));
}

TEST_CASE("snapping moves the nearest vertex onto an off-grid node") {
    const std::vector<Point> snap{{0.37, 0.61}};
    const Mesh m = build_structured_mesh({0, 0, 1, 1}, 4, snap);
    CHECK(m.vertex_at({0.37, 0.61}) >= 0);
    for (int e = 0; e < m.element_count(); ++e) CHECK(m.triangle(e).signed_area() > 0.0);
}

TEST_CASE("snapping failures") {
    const std::vector<Point> two{{0.37, 0.61}, {0.36, 0.6}};
    CHECK_THROWS_KIND(build_structured_mesh({0, 0, 1, 1}, 4, two), ErrorKind::SnapTooFar);
    CHECK_THROWS_KIND(build_structured_mesh({0, 0, 1, 1}, 1), ErrorKind::InvalidInput);
}

TEST_CASE("point location") {
    const Mesh m = build_structured_mesh({0, 0, 1, 1}, 8);
    for (const Point p : {Point(0.01, 0.02), Point(0.5, 0.5), Point(0.99, 0.3), Point(1.0, 1.0)}) {
        const int e = m.locate(p);
        REQUIRE(e >= 0);
        const auto b = m.triangle(e).barycentric(p);
        for (double x : b) CHECK(x >= -1e-12);
    }
    CHECK(m.locate({1.5, 0.5}) == -1);
}

TEST_CASE("mesh dump lists vertices and triangles") {
    const Mesh m = build_structured_mesh({0, 0, 1, 1}, 2);
    std::ostringstream os;
    write_mesh(os, m);
    const std::string s = os.str();
    CHECK(std::count(s.begin(), s.end(), '\n') >= 9 + 8);
}
