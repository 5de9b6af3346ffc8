#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "cutfrac/fracture_graph.hpp"
#include "cutfrac/mesh.hpp"
#include "cutfrac/quadrature.hpp"
#include "cutfrac/subdomains.hpp"

namespace cutfrac {

/// One straight piece of a fracture inside one element.
struct InterfacePiece {
    int edge = -1;
    int element = -1;
    /// Subdomains on either side, sides[0] <= sides[1]; equal for an edge that lies inside a
    /// single subdomain (dangling into it).
    std::array<int, 2> sides{-1, -1};
    Point a, b;        ///< along the edge direction
    Point tangent;     ///< unit, along the edge direction
    Point normal;      ///< unit, pointing from sides[0] towards sides[1]
    QuadratureRule rule;

    bool separates() const { return sides[0] != sides[1]; }
};

/// Portion of one edge inside one element, in order of traversal along the edge.
struct EdgeVisit {
    int element = -1;
    CutDescription cut;
    int first_piece = 0;  ///< index range into CutTopology::pieces()
    int last_piece = 0;   ///< inclusive
};

class CutTopology {
public:
    int subdomain_count() const { return nsub_; }
    int element_count() const { return static_cast<int>(elem_subdomains_.size()); }

    /// Subdomains whose active mesh contains element e, ascending.
    const std::vector<int>& subdomains_of(int e) const { return elem_subdomains_.at(static_cast<std::size_t>(e)); }
    bool is_active(int e, int k) const;
    /// True when a fracture crosses the element.
    bool is_cut(int e) const { return !elem_pieces_.at(static_cast<std::size_t>(e)).empty(); }

    /// Bulk rule over element e restricted to subdomain k. For elements not cut this is
    /// the full-element rule.
    QuadratureRule side_rule(const Mesh& mesh, int e, int k) const;
    /// Measure of element e inside subdomain k.
    double side_area(const Mesh& mesh, int e, int k) const;

    const std::vector<int>& active(int k) const { return active_.at(static_cast<std::size_t>(k)); }
    const std::vector<int>& cut_elements() const { return cut_elements_; }
    /// Interior faces of the active mesh of k that touch a cut element.
    const std::vector<int>& cut_faces(int k) const { return cut_faces_.at(static_cast<std::size_t>(k)); }

    const std::vector<InterfacePiece>& pieces() const { return pieces_; }
    const std::vector<int>& element_pieces(int e) const { return elem_pieces_.at(static_cast<std::size_t>(e)); }
    const std::vector<EdgeVisit>& edge_path(int edge) const { return edge_paths_.at(static_cast<std::size_t>(edge)); }

    friend CutTopology compute_cut_topology(const Mesh&, const FractureGraph&, const SubdomainMap&);

private:
    int nsub_ = 0;
    std::vector<std::vector<int>> elem_subdomains_;
    std::vector<std::vector<QuadratureRule>> side_rules_;  ///< parallel to elem_subdomains_ on cut elements
    std::vector<std::vector<int>> active_;
    std::vector<int> cut_elements_;
    std::vector<std::vector<int>> cut_faces_;
    std::vector<InterfacePiece> pieces_;
    std::vector<std::vector<int>> elem_pieces_;
    std::vector<std::vector<EdgeVisit>> edge_paths_;
};

/// Throws MultipleCrossings, FractureOnMeshFace, EmptyCut.
CutTopology compute_cut_topology(const Mesh& mesh, const FractureGraph& graph, const SubdomainMap& subdomains);

} // namespace cutfrac
