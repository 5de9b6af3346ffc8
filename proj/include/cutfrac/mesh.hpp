#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "cutfrac/geometry.hpp"

namespace cutfrac {

/// Mesh face (edge of a triangle). `elements[1]` is -1 on the domain boundary.
struct Face {
    std::array<int, 2> vertices{-1, -1};
    std::array<int, 2> elements{-1, -1};

    bool interior() const { return elements[1] >= 0; }
};

/// Conforming triangulation of a rectangle.
struct Mesh {
    Rectangle domain;
    int n = 0;  ///< grid subdivisions per axis
    std::vector<Point> vertices;
    std::vector<std::array<int, 3>> triangles;  ///< counter-clockwise
    std::vector<Face> faces;
    std::vector<std::array<int, 3>> element_faces;  ///< face opposite local vertex i
    std::vector<unsigned> vertex_sides;             ///< bitmask of boundary sides, see boundary_sides()
    double h = 0.0;                                 ///< max element diameter

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int element_count() const { return static_cast<int>(triangles.size()); }
    Triangle triangle(int e) const;
    double face_length(int f) const;
    /// Unit normal of face f pointing out of faces[f].elements[0].
    Point face_normal(int f) const;

    /// Element containing p (closed, tolerance 1e-12 relative), or -1.
    int locate(const Point& p) const;
    /// Elements having vertex v as a corner.
    std::vector<int> vertex_star(int v) const;
    /// Vertex coinciding exactly with p, or -1.
    int vertex_at(const Point& p) const;

    double min_diameter() const;

private:
    friend Mesh build_structured_mesh(const Rectangle&, int, std::span<const Point>);
    std::vector<std::vector<int>> vertex_elements_;
};

/// n x n grid, each cell split along its SW-NE diagonal. The grid vertex nearest each snap
/// node (with the same boundary sides) is moved onto it.
/// Throws InvalidInput (n < 2, node outside domain) and SnapTooFar (move longer than h/2,
/// two nodes claiming one vertex, or a resulting non-positive area).
Mesh build_structured_mesh(const Rectangle& domain, int n, std::span<const Point> snap_nodes = {});

/// Vertex list then triangle list, one per line.
void write_mesh(std::ostream& os, const Mesh& mesh);

} // namespace cutfrac
