#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "cutfrac/geometry.hpp"

namespace cutfrac {

/// One fracture curve, stored as a polyline whose ends coincide bitwise with graph nodes.
struct Edge {
    std::vector<Point> polyline;
    double a_gamma = 0.0;
    std::array<int, 2> endpoint_node_ids{-1, -1};

    double length() const { return polyline_length(polyline); }
    std::size_t segment_count() const { return polyline.size() - 1; }
};

/// Unvalidated edge input. `endpoints` may be omitted; nodes are then found by proximity.
struct RawEdge {
    std::vector<Point> points;
    double a_gamma = 0.0;
    std::optional<std::array<int, 2>> endpoints;
};

/// An edge end attached to a node. end == 0 is the polyline start, end == 1 its last point.
struct NodeIncidence {
    int edge = -1;
    int end = 0;
};

/// Planar graph of fracture curves. Immutable once built.
class FractureGraph {
public:
    FractureGraph() = default;

    const std::vector<Point>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int j) const { return edges_.at(static_cast<std::size_t>(j)); }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Distinct edges having node i as an endpoint, ascending.
    const std::vector<int>& incident_edges(int node) const {
        return incident_edges_.at(static_cast<std::size_t>(node));
    }
    /// Edge ends attached to node i; a closed edge contributes two entries.
    const std::vector<NodeIncidence>& incidences(int node) const {
        return incidences_.at(static_cast<std::size_t>(node));
    }

    double reference_length() const { return reference_length_; }
    /// Node/endpoint coincidence tolerance, 1e-12 x reference length.
    double snap_tolerance() const { return 1e-12 * reference_length_; }

    /// Same geometry with per-edge permeabilities replaced.
    FractureGraph with_permeabilities(std::span<const double> a_gamma) const;

    friend FractureGraph build_fracture_graph(std::vector<Point> nodes, std::vector<RawEdge> edges,
                                              double reference_length);

private:
    std::vector<Point> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> incident_edges_;
    std::vector<std::vector<NodeIncidence>> incidences_;
    double reference_length_ = 1.0;
};

/// Validates and snaps the raw graph. `reference_length` (normally the domain diameter)
/// scales the tolerances; pass 0 to use the bounding-box diameter of the input.
/// Throws DanglingEndpoint, EdgeCrossing, InvalidInput.
FractureGraph build_fracture_graph(std::vector<Point> nodes, std::vector<RawEdge> edges,
                                   double reference_length = 0.0);

/// Exterior unit tangent of edge j at node i. Throws NotIncident.
Point edge_tangent_at_node(const FractureGraph& graph, int edge, int node);
Point edge_tangent_at_end(const Edge& edge, int end);

/// Part of one edge inside a triangle: a single run of consecutive polyline pieces.
struct CutDescription {
    int edge = -1;
    std::vector<Point> polyline;
    int first_segment = 0;  ///< polyline segment holding polyline.front()
    double t_begin = 0.0;   ///< parameter of polyline.front() on that segment
    int last_segment = 0;
    double t_end = 1.0;

    double length() const { return polyline_length(polyline); }
    bool starts_at_edge_start() const { return first_segment == 0 && t_begin == 0.0; }
    bool ends_at_edge_end(const Edge& e) const {
        return last_segment == static_cast<int>(e.segment_count()) - 1 && t_end == 1.0;
    }
};

/// Portion of `edge` inside the closed triangle, or nullopt when the edge misses its
/// interior. Touching contacts shorter than 1e-13 x diameter are ignored.
/// Throws MultipleCrossings (more than one run) and FractureOnMeshFace (a run lying on a
/// triangle side).
std::optional<CutDescription> intersect_triangle(const Edge& edge, const Triangle& tri);

/// Same, restricted to the listed (ascending) candidate segments.
std::optional<CutDescription> intersect_triangle(const Edge& edge, const Triangle& tri,
                                                 std::span<const int> candidate_segments);

} // namespace cutfrac
