#pragma once

#include <array>
#include <vector>

#include "cutfrac/fracture_graph.hpp"
#include "cutfrac/geometry.hpp"

namespace cutfrac {

/// Partition of the domain into the connected components of (domain minus fractures).
///
/// Components are found as faces of the planar arrangement formed by the fracture edges
/// and the domain boundary. Indices are 0-based; subdomain 0 is the one touching the
/// lower-left corner of the domain (ties broken by centroid), the rest follow by distance
/// from that corner.
class SubdomainMap {
public:
    int count() const { return static_cast<int>(faces_.size()); }
    const Rectangle& domain() const { return domain_; }
    double interface_tolerance() const { return interface_tol_; }

    /// Subdomain containing p. Throws OutsideDomain, OnInterface.
    int classify(const Point& p) const;
    /// Subdomain containing p with no proximity check; -1 when outside every face.
    int locate(const Point& p) const;
    /// Distance from p to the nearest fracture edge.
    double distance_to_fractures(const Point& p) const;

    /// {left, right} subdomain of edge j relative to its polyline direction.
    std::array<int, 2> edge_sides(int edge) const { return edge_sides_.at(static_cast<std::size_t>(edge)); }

    /// Boundary cycles of subdomain k: outer cycle (CCW) first, then holes (CW or degenerate).
    const std::vector<std::vector<Point>>& cycles(int k) const {
        return faces_.at(static_cast<std::size_t>(k)).cycles;
    }
    double area(int k) const { return faces_.at(static_cast<std::size_t>(k)).area; }
    /// A point strictly inside subdomain k, away from the fractures.
    Point interior_point(int k) const;

    friend SubdomainMap build_subdomain_map(const Rectangle& domain, const FractureGraph& graph,
                                            double interface_tolerance);

private:
    struct Face {
        std::vector<std::vector<Point>> cycles;
        BoundingBox outer_box;
        double outer_area = 0.0;
        double area = 0.0;
    };

    Rectangle domain_;
    double interface_tol_ = 0.0;
    std::vector<Face> faces_;
    std::vector<std::array<int, 2>> edge_sides_;
    std::vector<std::vector<Point>> edge_polylines_;
};

/// Throws InvalidInput when a fracture leaves the domain.
/// `interface_tolerance` <= 0 selects 1e-10 x domain diameter.
SubdomainMap build_subdomain_map(const Rectangle& domain, const FractureGraph& graph,
                                 double interface_tolerance = 0.0);

/// Convenience wrapper over SubdomainMap::classify.
int classify_point(const SubdomainMap& map, const Point& p);

} // namespace cutfrac
