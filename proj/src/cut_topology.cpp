#include "cutfrac/cut_topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "cutfrac/error.hpp"

namespace cutfrac {

bool CutTopology::is_active(int e, int k) const {
    const auto& s = subdomains_of(e);
    return std::binary_search(s.begin(), s.end(), k);
}

QuadratureRule CutTopology::side_rule(const Mesh& mesh, int e, int k) const {
    const auto& rules = side_rules_.at(static_cast<std::size_t>(e));
    if (rules.empty()) {
        if (!is_active(e, k)) return {};
        return triangle_rule(mesh.triangle(e));
    }
    const auto& subs = subdomains_of(e);
    const auto it = std::lower_bound(subs.begin(), subs.end(), k);
    if (it == subs.end() || *it != k) return {};
    return rules[static_cast<std::size_t>(it - subs.begin())];
}

double CutTopology::side_area(const Mesh& mesh, int e, int k) const {
    const auto& rules = side_rules_.at(static_cast<std::size_t>(e));
    if (rules.empty()) return is_active(e, k) ? mesh.triangle(e).area() : 0.0;
    const auto& subs = subdomains_of(e);
    const auto it = std::lower_bound(subs.begin(), subs.end(), k);
    if (it == subs.end() || *it != k) return 0.0;
    return rules[static_cast<std::size_t>(it - subs.begin())].total_weight();
}

namespace {

// Maps fracture segments to the structured grid cells their bounding boxes overlap.
class SegmentBuckets {
public:
    SegmentBuckets(const Mesh& mesh, const FractureGraph& graph)
        : n_(mesh.n), domain_(mesh.domain), cells_(static_cast<std::size_t>(mesh.n * mesh.n)) {
        for (int j = 0; j < graph.edge_count(); ++j) {
            const auto& pl = graph.edge(j).polyline;
            for (std::size_t s = 0; s + 1 < pl.size(); ++s) {
                BoundingBox b;
                b.extend(pl[s]);
                b.extend(pl[s + 1]);
                const auto [i0, j0, i1, j1] = range(b);
                for (int cj = j0; cj <= j1; ++cj)
                    for (int ci = i0; ci <= i1; ++ci)
                        cells_[static_cast<std::size_t>(cj * n_ + ci)].push_back({j, static_cast<int>(s)});
            }
        }
    }

    std::vector<std::pair<int, int>> candidates(const Triangle& tri) const {
        BoundingBox b;
        for (const auto& v : tri.v) b.extend(v);
        const auto [i0, j0, i1, j1] = range(b);
        std::vector<std::pair<int, int>> out;
        for (int cj = j0; cj <= j1; ++cj)
            for (int ci = i0; ci <= i1; ++ci) {
                const auto& c = cells_[static_cast<std::size_t>(cj * n_ + ci)];
                out.insert(out.end(), c.begin(), c.end());
            }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    std::array<int, 4> range(const BoundingBox& b) const {
        const double cw = domain_.width() / n_, ch = domain_.height() / n_;
        // widen by a small margin so that points on cell borders land in both cells
        const double mx = 1e-9 * cw, my = 1e-9 * ch;
        auto ix = [&](double x) { return std::clamp(static_cast<int>(std::floor((x - domain_.x0) / cw)), 0, n_ - 1); };
        auto iy = [&](double y) { return std::clamp(static_cast<int>(std::floor((y - domain_.y0) / ch)), 0, n_ - 1); };
        return {ix(b.lo.x() - mx), iy(b.lo.y() - my), ix(b.hi.x() + mx), iy(b.hi.y() + my)};
    }

    int n_;
    Rectangle domain_;
    std::vector<std::vector<std::pair<int, int>>> cells_;
};

} // namespace

CutTopology compute_cut_topology(const Mesh& mesh, const FractureGraph& graph, const SubdomainMap& subdomains) {
    CutTopology topo;
    const int ne = mesh.element_count();
    topo.nsub_ = subdomains.count();
    topo.elem_subdomains_.assign(static_cast<std::size_t>(ne), {});
    topo.side_rules_.assign(static_cast<std::size_t>(ne), {});
    topo.elem_pieces_.assign(static_cast<std::size_t>(ne), {});
    topo.edge_paths_.assign(static_cast<std::size_t>(graph.edge_count()), {});

    const SegmentBuckets buckets(mesh, graph);

    for (int e = 0; e < ne; ++e) {
        const Triangle tri = mesh.triangle(e);
        const auto cands = buckets.candidates(tri);
        std::vector<int> involved;
        std::size_t pos = 0;
        while (pos < cands.size()) {
            const int j = cands[pos].first;
            std::vector<int> segs;
            while (pos < cands.size() && cands[pos].first == j) segs.push_back(cands[pos++].second);
            auto cd = intersect_triangle(graph.edge(j), tri, segs);
            if (!cd) continue;
            cd->edge = j;
            const auto lr = subdomains.edge_sides(j);
            const std::array<int, 2> sides{std::min(lr[0], lr[1]), std::max(lr[0], lr[1])};
            involved.push_back(lr[0]);
            involved.push_back(lr[1]);
            EdgeVisit visit;
            visit.element = e;
            visit.first_piece = static_cast<int>(topo.pieces_.size());
            for (std::size_t k = 1; k < cd->polyline.size(); ++k) {
                InterfacePiece piece;
                piece.edge = j;
                piece.element = e;
                piece.sides = sides;
                piece.a = cd->polyline[k - 1];
                piece.b = cd->polyline[k];
                piece.tangent = (piece.b - piece.a).normalized();
                piece.normal = sides[0] == lr[0] ? right_normal(piece.tangent) : left_normal(piece.tangent);
                append_segment_rule(piece.rule, piece.a, piece.b);
                topo.elem_pieces_[static_cast<std::size_t>(e)].push_back(static_cast<int>(topo.pieces_.size()));
                topo.pieces_.push_back(std::move(piece));
            }
            visit.last_piece = static_cast<int>(topo.pieces_.size()) - 1;
            visit.cut = std::move(*cd);
            topo.edge_paths_[static_cast<std::size_t>(j)].push_back(std::move(visit));
        }
        if (involved.empty()) continue;
        std::sort(involved.begin(), involved.end());
        involved.erase(std::unique(involved.begin(), involved.end()), involved.end());
        topo.elem_subdomains_[static_cast<std::size_t>(e)] = involved;
        topo.cut_elements_.push_back(e);
        if (involved.size() < 2) continue;

        const BoundingBox tbox = bounding_box(tri.v);
        double total = 0.0;
        for (int k : involved) {
            QuadratureRule rule;
            for (const auto& cycle : subdomains.cycles(k)) {
                if (!bounding_box(cycle).overlaps(tbox)) continue;
                const auto clipped = clip_polygon(cycle, tri);
                append_polygon_rule(rule, clipped);
            }
            total += rule.total_weight();
            topo.side_rules_[static_cast<std::size_t>(e)].push_back(std::move(rule));
        }
        if (std::abs(total - tri.area()) > 1e-9 * tri.area())
            throw Error(ErrorKind::EmptyCut, "cut pieces of element " + std::to_string(e) +
                                                 " do not cover it; fracture geometry is inconsistent");
    }

    for (auto& path : topo.edge_paths_) {
        std::sort(path.begin(), path.end(), [](const EdgeVisit& x, const EdgeVisit& y) {
            if (x.cut.first_segment != y.cut.first_segment) return x.cut.first_segment < y.cut.first_segment;
            return x.cut.t_begin < y.cut.t_begin;
        });
    }

    // Elements no fracture enters inherit their subdomain from uncut neighbours.
    std::vector<int> label(static_cast<std::size_t>(ne), -1);
    for (int seed = 0; seed < ne; ++seed) {
        if (topo.is_cut(seed) || label[static_cast<std::size_t>(seed)] >= 0) continue;
        const int k = subdomains.locate(mesh.triangle(seed).barycenter());
        if (k < 0) throw Error(ErrorKind::OutsideDomain, "element barycenter outside every subdomain");
        std::deque<int> queue{seed};
        label[static_cast<std::size_t>(seed)] = k;
        while (!queue.empty()) {
            const int e = queue.front();
            queue.pop_front();
            for (int f : mesh.element_faces[static_cast<std::size_t>(e)]) {
                const auto& face = mesh.faces[static_cast<std::size_t>(f)];
                if (!face.interior()) continue;
                const int other = face.elements[0] == e ? face.elements[1] : face.elements[0];
                if (topo.is_cut(other) || label[static_cast<std::size_t>(other)] >= 0) continue;
                label[static_cast<std::size_t>(other)] = k;
                queue.push_back(other);
            }
        }
    }
    for (int e = 0; e < ne; ++e)
        if (!topo.is_cut(e)) topo.elem_subdomains_[static_cast<std::size_t>(e)] = {label[static_cast<std::size_t>(e)]};

    topo.active_.assign(static_cast<std::size_t>(topo.nsub_), {});
    for (int e = 0; e < ne; ++e)
        for (int k : topo.elem_subdomains_[static_cast<std::size_t>(e)]) topo.active_[static_cast<std::size_t>(k)].push_back(e);

    topo.cut_faces_.assign(static_cast<std::size_t>(topo.nsub_), {});
    for (int f = 0; f < static_cast<int>(mesh.faces.size()); ++f) {
        const auto& face = mesh.faces[static_cast<std::size_t>(f)];
        if (!face.interior()) continue;
        const int e0 = face.elements[0], e1 = face.elements[1];
        if (!topo.is_cut(e0) && !topo.is_cut(e1)) continue;
        for (int k = 0; k < topo.nsub_; ++k)
            if (topo.is_active(e0, k) && topo.is_active(e1, k)) topo.cut_faces_[static_cast<std::size_t>(k)].push_back(f);
    }
    return topo;
}

} // namespace cutfrac
