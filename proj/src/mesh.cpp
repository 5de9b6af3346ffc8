#include "cutfrac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "cutfrac/error.hpp"

namespace cutfrac {

Triangle Mesh::triangle(int e) const {
    const auto& t = triangles.at(static_cast<std::size_t>(e));
    return {{vertices[static_cast<std::size_t>(t[0])], vertices[static_cast<std::size_t>(t[1])],
             vertices[static_cast<std::size_t>(t[2])]}};
}

double Mesh::face_length(int f) const {
    const auto& fc = faces.at(static_cast<std::size_t>(f));
    return (vertices[static_cast<std::size_t>(fc.vertices[1])] - vertices[static_cast<std::size_t>(fc.vertices[0])]).norm();
}

Point Mesh::face_normal(int f) const {
    const auto& fc = faces.at(static_cast<std::size_t>(f));
    const Point& a = vertices[static_cast<std::size_t>(fc.vertices[0])];
    const Point& b = vertices[static_cast<std::size_t>(fc.vertices[1])];
    Point nrm = right_normal((b - a).normalized());
    const Point c = triangle(fc.elements[0]).barycenter();
    if (nrm.dot(c - a) > 0.0) nrm = -nrm;
    return nrm;
}

int Mesh::locate(const Point& p) const {
    const double cw = domain.width() / n;
    const double ch = domain.height() / n;
    const int ci = std::clamp(static_cast<int>(std::floor((p.x() - domain.x0) / cw)), 0, n - 1);
    const int cj = std::clamp(static_cast<int>(std::floor((p.y() - domain.y0) / ch)), 0, n - 1);
    const double tol = 1e-12;
    int best = -1;
    double best_min = -std::numeric_limits<double>::infinity();
    for (int j = std::max(0, cj - 1); j <= std::min(n - 1, cj + 1); ++j) {
        for (int i = std::max(0, ci - 1); i <= std::min(n - 1, ci + 1); ++i) {
            for (int s = 0; s < 2; ++s) {
                const int e = 2 * (j * n + i) + s;
                const auto b = triangle(e).barycentric(p);
                const double m = std::min({b[0], b[1], b[2]});
                if (m > best_min) {
                    best_min = m;
                    best = e;
                }
            }
        }
    }
    return best_min >= -tol ? best : -1;
}

std::vector<int> Mesh::vertex_star(int v) const { return vertex_elements_.at(static_cast<std::size_t>(v)); }

int Mesh::vertex_at(const Point& p) const {
    const int e = locate(p);
    if (e < 0) return -1;
    for (int v : triangles[static_cast<std::size_t>(e)])
        if (vertices[static_cast<std::size_t>(v)] == p) return v;
    return -1;
}

double Mesh::min_diameter() const {
    double d = std::numeric_limits<double>::infinity();
    for (int e = 0; e < element_count(); ++e) d = std::min(d, triangle(e).diameter());
    return d;
}

Mesh build_structured_mesh(const Rectangle& domain, int n, std::span<const Point> snap_nodes) {
    if (n < 2) throw Error(ErrorKind::InvalidInput, "mesh needs at least 2 subdivisions per axis");
    Mesh m;
    m.domain = domain;
    m.n = n;
    const double dx = domain.width() / n;
    const double dy = domain.height() / n;
    const double tol = 1e-12 * domain.diameter();
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };

    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            const double x = i == n ? domain.x1 : domain.x0 + i * dx;
            const double y = j == n ? domain.y1 : domain.y0 + j * dy;
            m.vertices.emplace_back(x, y);
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int sw = vid(i, j), se = vid(i + 1, j), ne = vid(i + 1, j + 1), nw = vid(i, j + 1);
            m.triangles.push_back({sw, se, ne});
            m.triangles.push_back({sw, ne, nw});
        }
    }
    const double grid_h = std::hypot(dx, dy);

    std::vector<int> claimed(m.vertices.size(), -1);
    for (std::size_t s = 0; s < snap_nodes.size(); ++s) {
        const Point& p = snap_nodes[s];
        if (!domain.contains(p, tol)) throw Error(ErrorKind::InvalidInput, "snap node outside the domain");
        const unsigned sides = boundary_sides(domain, p, tol);
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < m.vertices.size(); ++v) {
            if (boundary_sides(domain, m.vertices[v], tol) != sides) continue;
            const double d = (m.vertices[v] - p).norm();
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(v);
            }
        }
        if (best < 0 || best_d > 0.5 * grid_h)
            throw Error(ErrorKind::SnapTooFar, "no mesh vertex within h/2 of a fracture junction");
        if (claimed[static_cast<std::size_t>(best)] >= 0 && m.vertices[static_cast<std::size_t>(best)] != p)
            throw Error(ErrorKind::SnapTooFar, "two fracture junctions snap to the same mesh vertex; refine the mesh");
        claimed[static_cast<std::size_t>(best)] = static_cast<int>(s);
        m.vertices[static_cast<std::size_t>(best)] = p;
    }

    for (int e = 0; e < m.element_count(); ++e)
        if (!(m.triangle(e).signed_area() > 0.0))
            throw Error(ErrorKind::SnapTooFar, "vertex snapping produced a degenerate triangle");

    m.vertex_sides.resize(m.vertices.size());
    for (std::size_t v = 0; v < m.vertices.size(); ++v) m.vertex_sides[v] = boundary_sides(domain, m.vertices[v], tol);

    std::map<std::pair<int, int>, int> face_index;
    m.element_faces.resize(m.triangles.size());
    for (int e = 0; e < m.element_count(); ++e) {
        const auto& t = m.triangles[static_cast<std::size_t>(e)];
        for (int i = 0; i < 3; ++i) {
            const int a = t[static_cast<std::size_t>((i + 1) % 3)], b = t[static_cast<std::size_t>((i + 2) % 3)];
            const auto key = std::minmax(a, b);
            auto [it, inserted] = face_index.try_emplace({key.first, key.second}, static_cast<int>(m.faces.size()));
            if (inserted) {
                m.faces.push_back({{key.first, key.second}, {e, -1}});
            } else {
                m.faces[static_cast<std::size_t>(it->second)].elements[1] = e;
            }
            m.element_faces[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)] = it->second;
        }
    }

    m.vertex_elements_.resize(m.vertices.size());
    for (int e = 0; e < m.element_count(); ++e)
        for (int v : m.triangles[static_cast<std::size_t>(e)]) m.vertex_elements_[static_cast<std::size_t>(v)].push_back(e);

    m.h = 0.0;
    for (int e = 0; e < m.element_count(); ++e) m.h = std::max(m.h, m.triangle(e).diameter());
    return m;
}

void write_mesh(std::ostream& os, const Mesh& mesh) {
    os.precision(17);
    os << mesh.vertices.size() << '\n';
    for (const auto& v : mesh.vertices) os << v.x() << ' ' << v.y() << '\n';
    os << mesh.triangles.size() << '\n';
    for (const auto& t : mesh.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

} // namespace cutfrac
