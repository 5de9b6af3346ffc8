#include "cutfrac/fracture_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cutfrac/error.hpp"

namespace cutfrac {

namespace {

std::string point_str(const Point& p) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << p.x() << ", " << p.y() << ')';
    return os.str();
}

bool finite(const Point& p) { return std::isfinite(p.x()) && std::isfinite(p.y()); }

struct SegmentRef {
    int edge;
    int segment;
    BoundingBox box;
};

// Two segments of different edges may only meet at a node shared by both edges, and
// must leave that node in different directions.
bool allowed_contact(const FractureGraph& g, int ea, const Point& a0, const Point& a1, int eb,
                     const Point& b0, const Point& b1, double tol) {
    const auto& ida = g.edge(ea).endpoint_node_ids;
    const auto& idb = g.edge(eb).endpoint_node_ids;
    for (int na : ida) {
        if (na != idb[0] && na != idb[1]) continue;
        const Point& x = g.nodes()[static_cast<std::size_t>(na)];
        if (distance_to_segment(x, a0, a1) > tol || distance_to_segment(x, b0, b1) > tol) continue;
        const Point u = ((a0 - x).norm() > (a1 - x).norm() ? a0 : a1) - x;
        const Point w = ((b0 - x).norm() > (b1 - x).norm() ? b0 : b1) - x;
        const bool overlapping =
            std::abs(cross(u, w)) <= 1e-12 * u.norm() * w.norm() && u.dot(w) > 0.0;
        return !overlapping;
    }
    return false;
}

void check_crossings(const FractureGraph& g, double tol) {
    std::vector<SegmentRef> segs;
    for (int j = 0; j < g.edge_count(); ++j) {
        const auto& pl = g.edge(j).polyline;
        for (std::size_t s = 0; s + 1 < pl.size(); ++s) {
            BoundingBox b;
            b.extend(pl[s]);
            b.extend(pl[s + 1]);
            segs.push_back({j, static_cast<int>(s), b});
        }
    }
    std::sort(segs.begin(), segs.end(),
              [](const SegmentRef& a, const SegmentRef& b) { return a.box.lo.x() < b.box.lo.x(); });
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t k = i + 1; k < segs.size(); ++k) {
            if (segs[k].box.lo.x() > segs[i].box.hi.x() + tol) break;
            if (segs[i].edge == segs[k].edge) continue;
            if (!segs[i].box.overlaps(segs[k].box, tol)) continue;
            const auto& pa = g.edge(segs[i].edge).polyline;
            const auto& pb = g.edge(segs[k].edge).polyline;
            const Point& a0 = pa[static_cast<std::size_t>(segs[i].segment)];
            const Point& a1 = pa[static_cast<std::size_t>(segs[i].segment) + 1];
            const Point& b0 = pb[static_cast<std::size_t>(segs[k].segment)];
            const Point& b1 = pb[static_cast<std::size_t>(segs[k].segment) + 1];
            if (segment_distance(a0, a1, b0, b1) > tol) continue;
            if (allowed_contact(g, segs[i].edge, a0, a1, segs[k].edge, b0, b1, tol)) continue;
            std::ostringstream os;
            os << "edges " << segs[i].edge << " and " << segs[k].edge
               << " intersect away from a shared node near " << point_str(a0);
            throw Error(ErrorKind::EdgeCrossing, os.str());
        }
    }
}

} // namespace

FractureGraph FractureGraph::with_permeabilities(std::span<const double> a_gamma) const {
    if (a_gamma.size() != edges_.size())
        throw Error(ErrorKind::InvalidInput, "expected one fracture permeability per edge");
    FractureGraph copy = *this;
    for (std::size_t j = 0; j < edges_.size(); ++j) {
        if (!(a_gamma[j] >= 0.0) || !std::isfinite(a_gamma[j]))
            throw Error(ErrorKind::InvalidInput, "fracture permeability must be finite and >= 0");
        copy.edges_[j].a_gamma = a_gamma[j];
    }
    return copy;
}

FractureGraph build_fracture_graph(std::vector<Point> nodes, std::vector<RawEdge> raw_edges,
                                   double reference_length) {
    FractureGraph g;
    BoundingBox box;
    for (const auto& p : nodes) {
        if (!finite(p)) throw Error(ErrorKind::InvalidInput, "non-finite node coordinate");
        box.extend(p);
    }
    for (const auto& e : raw_edges) {
        for (const auto& p : e.points) {
            if (!finite(p)) throw Error(ErrorKind::InvalidInput, "non-finite edge point");
            box.extend(p);
        }
    }
    if (reference_length <= 0.0)
        reference_length = nodes.empty() && raw_edges.empty() ? 1.0 : (box.hi - box.lo).norm();
    if (!(reference_length > 0.0)) reference_length = 1.0;
    g.reference_length_ = reference_length;
    const double tol = g.snap_tolerance();

    g.nodes_ = std::move(nodes);
    const int n_nodes = static_cast<int>(g.nodes_.size());
    for (std::size_t j = 0; j < raw_edges.size(); ++j) {
        RawEdge& raw = raw_edges[j];
        if (raw.points.size() < 2)
            throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(j) + " has fewer than 2 points");
        if (!std::isfinite(raw.a_gamma) || raw.a_gamma < 0.0)
            throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(j) + " has a_gamma < 0");
        for (std::size_t k = 1; k < raw.points.size(); ++k) {
            if ((raw.points[k] - raw.points[k - 1]).norm() <= tol)
                throw Error(ErrorKind::InvalidInput,
                            "edge " + std::to_string(j) + " has repeated consecutive points");
        }
        Edge edge;
        edge.a_gamma = raw.a_gamma;
        const std::array<Point, 2> ends{raw.points.front(), raw.points.back()};
        for (int end = 0; end < 2; ++end) {
            int node = -1;
            if (raw.endpoints) {
                node = (*raw.endpoints)[static_cast<std::size_t>(end)];
                if (node < 0 || node >= n_nodes)
                    throw Error(ErrorKind::InvalidInput,
                                "edge " + std::to_string(j) + " references a missing node");
                if ((g.nodes_[static_cast<std::size_t>(node)] - ends[static_cast<std::size_t>(end)]).norm() > tol)
                    throw Error(ErrorKind::DanglingEndpoint,
                                "edge " + std::to_string(j) + " endpoint " +
                                    point_str(ends[static_cast<std::size_t>(end)]) +
                                    " does not coincide with node " + std::to_string(node));
            } else {
                double best = tol;
                for (int i = 0; i < n_nodes; ++i) {
                    const double d = (g.nodes_[static_cast<std::size_t>(i)] - ends[static_cast<std::size_t>(end)]).norm();
                    if (d <= best) {
                        best = d;
                        node = i;
                    }
                }
                if (node < 0)
                    throw Error(ErrorKind::DanglingEndpoint,
                                "edge " + std::to_string(j) + " endpoint " +
                                    point_str(ends[static_cast<std::size_t>(end)]) + " matches no node");
            }
            edge.endpoint_node_ids[static_cast<std::size_t>(end)] = node;
        }
        edge.polyline = std::move(raw.points);
        edge.polyline.front() = g.nodes_[static_cast<std::size_t>(edge.endpoint_node_ids[0])];
        edge.polyline.back() = g.nodes_[static_cast<std::size_t>(edge.endpoint_node_ids[1])];
        g.edges_.push_back(std::move(edge));
    }

    g.incident_edges_.assign(g.nodes_.size(), {});
    g.incidences_.assign(g.nodes_.size(), {});
    for (int j = 0; j < g.edge_count(); ++j) {
        for (int end = 0; end < 2; ++end) {
            const auto i = static_cast<std::size_t>(g.edges_[static_cast<std::size_t>(j)].endpoint_node_ids[static_cast<std::size_t>(end)]);
            g.incidences_[i].push_back({j, end});
            auto& inc = g.incident_edges_[i];
            if (std::find(inc.begin(), inc.end(), j) == inc.end()) inc.push_back(j);
        }
    }
    check_crossings(g, tol);
    return g;
}

Point edge_tangent_at_end(const Edge& edge, int end) {
    const auto& pl = edge.polyline;
    const Point t = end == 0 ? Point(pl[0] - pl[1]) : Point(pl[pl.size() - 1] - pl[pl.size() - 2]);
    return t.normalized();
}

Point edge_tangent_at_node(const FractureGraph& graph, int edge, int node) {
    const Edge& e = graph.edge(edge);
    if (e.endpoint_node_ids[1] == node) return edge_tangent_at_end(e, 1);
    if (e.endpoint_node_ids[0] == node) return edge_tangent_at_end(e, 0);
    throw Error(ErrorKind::NotIncident,
                "node " + std::to_string(node) + " is not an endpoint of edge " + std::to_string(edge));
}

namespace {

struct Piece {
    int segment;
    double t0, t1;
};

Point at(const Point& a, const Point& b, double t) {
    if (t == 0.0) return a;
    if (t == 1.0) return b;
    return a + t * (b - a);
}

bool lies_on_side(const Point& p, const Point& q, const Triangle& tri, double tol) {
    for (int i = 0; i < 3; ++i) {
        const Point& a = tri.v[static_cast<std::size_t>(i)];
        const Point& b = tri.v[static_cast<std::size_t>((i + 1) % 3)];
        if (distance_to_segment(p, a, b) <= tol && distance_to_segment(q, a, b) <= tol) return true;
    }
    return false;
}

} // namespace

std::optional<CutDescription> intersect_triangle(const Edge& edge, const Triangle& tri,
                                                 std::span<const int> candidates) {
    if (!(tri.signed_area() > 0.0))
        throw Error(ErrorKind::InvalidInput, "triangle must have positive (CCW) area");
    const double diam = tri.diameter();
    const double min_len = 1e-13 * diam;
    const double face_tol = 1e-12 * diam;
    const auto& pl = edge.polyline;

    std::vector<std::vector<Piece>> runs;
    for (int s : candidates) {
        const Point& a = pl[static_cast<std::size_t>(s)];
        const Point& b = pl[static_cast<std::size_t>(s) + 1];
        const auto clipped = clip_segment(a, b, tri);
        if (!clipped) continue;
        const Piece piece{s, clipped->first, clipped->second};
        if (!runs.empty()) {
            const Piece& last = runs.back().back();
            if (last.segment + 1 == s && last.t1 == 1.0 && piece.t0 == 0.0) {
                runs.back().push_back(piece);
                continue;
            }
        }
        runs.push_back({piece});
    }

    std::optional<CutDescription> result;
    for (const auto& run : runs) {
        CutDescription cd;
        cd.first_segment = run.front().segment;
        cd.t_begin = run.front().t0;
        cd.last_segment = run.back().segment;
        cd.t_end = run.back().t1;
        cd.polyline.push_back(at(pl[static_cast<std::size_t>(cd.first_segment)],
                                 pl[static_cast<std::size_t>(cd.first_segment) + 1], cd.t_begin));
        for (const auto& piece : run)
            cd.polyline.push_back(at(pl[static_cast<std::size_t>(piece.segment)],
                                     pl[static_cast<std::size_t>(piece.segment) + 1], piece.t1));
        // drop zero-length pieces produced by clipping exactly at a polyline vertex
        std::vector<Point> cleaned{cd.polyline.front()};
        for (std::size_t k = 1; k < cd.polyline.size(); ++k)
            if ((cd.polyline[k] - cleaned.back()).norm() > 0.0) cleaned.push_back(cd.polyline[k]);
        cd.polyline = std::move(cleaned);
        if (cd.polyline.size() < 2 || cd.length() <= min_len) continue;
        for (std::size_t k = 1; k < cd.polyline.size(); ++k) {
            const Point& p = cd.polyline[k - 1];
            const Point& q = cd.polyline[k];
            if ((q - p).norm() > min_len && lies_on_side(p, q, tri, face_tol))
                throw Error(ErrorKind::FractureOnMeshFace,
                            "fracture runs along a mesh face near " + point_str(p));
        }
        if (result)
            throw Error(ErrorKind::MultipleCrossings,
                        "edge crosses one triangle more than once near " + point_str(cd.polyline.front()) +
                            "; refine the mesh");
        result = std::move(cd);
    }
    return result;
}

std::optional<CutDescription> intersect_triangle(const Edge& edge, const Triangle& tri) {
    std::vector<int> all(edge.segment_count());
    std::iota(all.begin(), all.end(), 0);
    return intersect_triangle(edge, tri, all);
}

} // namespace cutfrac
