#include "cutfrac/subdomains.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cutfrac/error.hpp"

namespace cutfrac {

namespace {

struct Arc {
    int from = -1;
    int to = -1;
    std::vector<Point> points;
    bool boundary = false;
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int i) {
        while (parent[static_cast<std::size_t>(i)] != i) {
            parent[static_cast<std::size_t>(i)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
            i = parent[static_cast<std::size_t>(i)];
        }
        return i;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

Point centroid(const std::vector<Point>& poly) {
    const double a = signed_area(poly);
    if (std::abs(a) == 0.0) return poly.front();
    Point c = Point::Zero();
    const Point& o = poly.front();
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        const double t = 0.5 * cross(poly[i] - o, poly[i + 1] - o);
        c += t * (o + poly[i] + poly[i + 1]) / 3.0;
    }
    return c / a;
}

} // namespace

SubdomainMap build_subdomain_map(const Rectangle& domain, const FractureGraph& graph,
                                 double interface_tolerance) {
    if (!(domain.width() > 0.0) || !(domain.height() > 0.0))
        throw Error(ErrorKind::InvalidInput, "domain must have positive width and height");
    SubdomainMap map;
    map.domain_ = domain;
    const double diam = domain.diameter();
    map.interface_tol_ = interface_tolerance > 0.0 ? interface_tolerance : 1e-10 * diam;
    const double tol = 1e-12 * diam;

    std::vector<Point> verts = graph.nodes();
    for (const auto& p : verts)
        if (!domain.contains(p, tol))
            throw Error(ErrorKind::InvalidInput, "fracture node outside the domain");
    for (const auto& e : graph.edges()) {
        for (const auto& p : e.polyline)
            if (!domain.contains(p, tol))
                throw Error(ErrorKind::InvalidInput, "fracture polyline leaves the domain");
        map.edge_polylines_.push_back(e.polyline);
    }

    const std::array<Point, 4> corners{Point(domain.x0, domain.y0), Point(domain.x1, domain.y0),
                                       Point(domain.x1, domain.y1), Point(domain.x0, domain.y1)};
    std::array<int, 4> corner_ids{};
    for (int c = 0; c < 4; ++c) {
        int id = -1;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if ((verts[i] - corners[static_cast<std::size_t>(c)]).norm() <= tol) id = static_cast<int>(i);
        if (id < 0) {
            id = static_cast<int>(verts.size());
            verts.push_back(corners[static_cast<std::size_t>(c)]);
        }
        corner_ids[static_cast<std::size_t>(c)] = id;
    }

    std::vector<Arc> arcs;
    for (const auto& e : graph.edges())
        arcs.push_back({e.endpoint_node_ids[0], e.endpoint_node_ids[1], e.polyline, false});

    // Boundary pieces, traversed counter-clockwise: bottom, right, top, left.
    for (int s = 0; s < 4; ++s) {
        const Point& a = corners[static_cast<std::size_t>(s)];
        const Point& b = corners[static_cast<std::size_t>((s + 1) % 4)];
        const Point dir = (b - a).normalized();
        std::vector<std::pair<double, int>> on_side;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (distance_to_segment(verts[i], a, b) <= tol)
                on_side.emplace_back((verts[i] - a).dot(dir), static_cast<int>(i));
        }
        std::sort(on_side.begin(), on_side.end());
        for (std::size_t k = 1; k < on_side.size(); ++k) {
            const int u = on_side[k - 1].second;
            const int v = on_side[k].second;
            if (u == v) continue;
            arcs.push_back({u, v, {verts[static_cast<std::size_t>(u)], verts[static_cast<std::size_t>(v)]}, true});
        }
    }

    // Half-edge 2a runs along arc a, 2a+1 against it.
    const int nhe = 2 * static_cast<int>(arcs.size());
    auto he_origin = [&](int he) {
        const Arc& a = arcs[static_cast<std::size_t>(he / 2)];
        return he % 2 == 0 ? a.from : a.to;
    };
    auto he_points = [&](int he) {
        std::vector<Point> pts = arcs[static_cast<std::size_t>(he / 2)].points;
        if (he % 2 == 1) std::reverse(pts.begin(), pts.end());
        return pts;
    };
    auto he_angle = [&](int he) {
        const Arc& a = arcs[static_cast<std::size_t>(he / 2)];
        const Point d = he % 2 == 0 ? Point(a.points[1] - a.points[0])
                                    : Point(a.points[a.points.size() - 2] - a.points.back());
        return std::atan2(d.y(), d.x());
    };

    std::vector<std::vector<int>> outgoing(verts.size());
    for (int he = 0; he < nhe; ++he) outgoing[static_cast<std::size_t>(he_origin(he))].push_back(he);
    std::vector<int> pos(static_cast<std::size_t>(nhe));
    for (auto& out : outgoing) {
        std::sort(out.begin(), out.end(), [&](int x, int y) { return he_angle(x) < he_angle(y); });
        for (std::size_t k = 0; k < out.size(); ++k) pos[static_cast<std::size_t>(out[k])] = static_cast<int>(k);
    }
    auto next_he = [&](int he) {
        const int twin = he ^ 1;
        const auto& out = outgoing[static_cast<std::size_t>(he_origin(twin))];
        const int deg = static_cast<int>(out.size());
        return out[static_cast<std::size_t>((pos[static_cast<std::size_t>(twin)] - 1 + deg) % deg)];
    };

    std::vector<int> cycle_of(static_cast<std::size_t>(nhe), -1);
    std::vector<std::vector<Point>> cycle_points;
    std::vector<int> cycle_first_he;
    for (int start = 0; start < nhe; ++start) {
        if (cycle_of[static_cast<std::size_t>(start)] >= 0) continue;
        const int id = static_cast<int>(cycle_points.size());
        std::vector<Point> pts;
        int he = start;
        do {
            cycle_of[static_cast<std::size_t>(he)] = id;
            auto seg = he_points(he);
            pts.insert(pts.end(), seg.begin(), seg.end() - 1);
            he = next_he(he);
        } while (he != start);
        cycle_points.push_back(std::move(pts));
        cycle_first_he.push_back(start);
    }

    UnionFind uf(static_cast<int>(verts.size()));
    for (const auto& a : arcs) uf.unite(a.from, a.to);

    int exterior = -1;
    for (std::size_t a = 0; a < arcs.size(); ++a)
        if (arcs[a].boundary) exterior = cycle_of[2 * a + 1];

    const double area_tol = 1e-12 * domain.area();
    const int ncycles = static_cast<int>(cycle_points.size());
    std::vector<double> cyc_area(static_cast<std::size_t>(ncycles));
    for (int c = 0; c < ncycles; ++c) cyc_area[static_cast<std::size_t>(c)] = signed_area(cycle_points[static_cast<std::size_t>(c)]);

    std::vector<int> face_cycles, hole_cycles;
    for (int c = 0; c < ncycles; ++c) {
        if (c == exterior) continue;
        (cyc_area[static_cast<std::size_t>(c)] > area_tol ? face_cycles : hole_cycles).push_back(c);
    }

    // Order faces by distance of their outer cycle from the lower-left corner.
    const Point origin(domain.x0, domain.y0);
    struct Key {
        double dist;
        double cy, cx;
        int cycle;
    };
    std::vector<Key> keys;
    for (int c : face_cycles) {
        const auto& pts = cycle_points[static_cast<std::size_t>(c)];
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) best = std::min(best, std::abs(p.x() - origin.x()) + std::abs(p.y() - origin.y()));
        const Point cen = centroid(pts);
        keys.push_back({best, cen.y(), cen.x(), c});
    }
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.cy != b.cy) return a.cy < b.cy;
        return a.cx < b.cx;
    });

    std::vector<int> face_of_cycle(static_cast<std::size_t>(ncycles), -1);
    for (std::size_t k = 0; k < keys.size(); ++k) {
        const int c = keys[k].cycle;
        SubdomainMap::Face face;
        face.cycles.push_back(cycle_points[static_cast<std::size_t>(c)]);
        face.outer_box = bounding_box(face.cycles.front());
        face.outer_area = cyc_area[static_cast<std::size_t>(c)];
        face.area = face.outer_area;
        map.faces_.push_back(std::move(face));
        face_of_cycle[static_cast<std::size_t>(c)] = static_cast<int>(k);
    }

    for (int c : hole_cycles) {
        const int comp = uf.find(he_origin(cycle_first_he[static_cast<std::size_t>(c)]));
        const Point probe = cycle_points[static_cast<std::size_t>(c)].front();
        int best = -1;
        for (std::size_t k = 0; k < keys.size(); ++k) {
            const int fc = keys[k].cycle;
            if (uf.find(he_origin(cycle_first_he[static_cast<std::size_t>(fc)])) == comp) continue;
            const auto& f = map.faces_[k];
            if (!f.outer_box.contains(probe) || !point_in_polygon(probe, f.cycles.front())) continue;
            if (best < 0 || f.outer_area < map.faces_[static_cast<std::size_t>(best)].outer_area)
                best = static_cast<int>(k);
        }
        if (best < 0) throw Error(ErrorKind::InvalidInput, "fracture component lies outside every face");
        auto& f = map.faces_[static_cast<std::size_t>(best)];
        f.cycles.push_back(cycle_points[static_cast<std::size_t>(c)]);
        f.area += cyc_area[static_cast<std::size_t>(c)];
        face_of_cycle[static_cast<std::size_t>(c)] = best;
    }

    for (int j = 0; j < graph.edge_count(); ++j) {
        map.edge_sides_.push_back({face_of_cycle[static_cast<std::size_t>(cycle_of[static_cast<std::size_t>(2 * j)])],
                                   face_of_cycle[static_cast<std::size_t>(cycle_of[static_cast<std::size_t>(2 * j + 1)])]});
    }
    return map;
}

int SubdomainMap::locate(const Point& p) const {
    int best = -1;
    for (std::size_t k = 0; k < faces_.size(); ++k) {
        const auto& f = faces_[k];
        if (!f.outer_box.contains(p) || !point_in_polygon(p, f.cycles.front())) continue;
        if (best < 0 || f.outer_area < faces_[static_cast<std::size_t>(best)].outer_area) best = static_cast<int>(k);
    }
    return best;
}

double SubdomainMap::distance_to_fractures(const Point& p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& pl : edge_polylines_) d = std::min(d, distance_to_polyline(p, pl));
    return d;
}

int SubdomainMap::classify(const Point& p) const {
    if (!domain_.contains(p))
        throw Error(ErrorKind::OutsideDomain, "point lies outside the domain");
    if (distance_to_fractures(p) <= interface_tol_)
        throw Error(ErrorKind::OnInterface, "point lies on a fracture");
    const int k = locate(p);
    if (k < 0) throw Error(ErrorKind::OutsideDomain, "point lies in no subdomain");
    return k;
}

Point SubdomainMap::interior_point(int k) const {
    const auto& face = faces_.at(static_cast<std::size_t>(k));
    struct Candidate {
        double len;
        Point mid, normal;
    };
    std::vector<Candidate> cands;
    for (const auto& cyc : face.cycles) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const Point& a = cyc[i];
            const Point& b = cyc[(i + 1) % cyc.size()];
            const double len = (b - a).norm();
            if (len == 0.0) continue;
            cands.push_back({len, 0.5 * (a + b), left_normal((b - a) / len)});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.len > b.len; });
    for (const auto& c : cands) {
        for (double s : {0.25, 0.1, 0.01, 1e-3}) {
            const Point p = c.mid + s * c.len * c.normal;
            if (!domain_.strictly_contains(p, interface_tol_)) continue;
            if (locate(p) == k && distance_to_fractures(p) > 10.0 * interface_tol_) return p;
        }
    }
    throw Error(ErrorKind::InvalidInput, "could not find an interior point of subdomain " + std::to_string(k));
}

int classify_point(const SubdomainMap& map, const Point& p) { return map.classify(p); }

} // namespace cutfrac
