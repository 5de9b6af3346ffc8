#include "cutfrac/assembly.hpp"

#include <algorithm>

namespace cutfrac {

namespace {

struct Entry {
    int row;
    int col;
    double value;
};

void collect_upper(const LocalBlock& blk, std::vector<Entry>& out) {
    const int n = static_cast<int>(blk.dofs.size());
    for (int i = 0; i < n; ++i) {
        const int gi = blk.dofs[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const int gj = blk.dofs[static_cast<std::size_t>(j)];
            if (gi <= gj) out.push_back({gi, gj, blk.K(i, j)});
        }
    }
}

} // namespace

SparseMatrix scatter_blocks(int ndof, std::span<const std::vector<LocalBlock>* const> groups) {
    std::vector<Entry> upper;
    for (const auto* group : groups)
        for (const auto& blk : *group) collect_upper(blk, upper);
    std::stable_sort(upper.begin(), upper.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(2 * upper.size());
    for (std::size_t i = 0; i < upper.size();) {
        double sum = 0.0;
        std::size_t k = i;
        for (; k < upper.size() && upper[k].row == upper[i].row && upper[k].col == upper[i].col; ++k)
            sum += upper[k].value;
        trips.emplace_back(upper[i].row, upper[i].col, sum);
        if (upper[i].row != upper[i].col) trips.emplace_back(upper[i].col, upper[i].row, sum);
        i = k;
    }
    SparseMatrix A(ndof, ndof);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();
    return A;
}

void scatter_load(Eigen::VectorXd& rhs, const std::vector<LocalBlock>& blocks) {
    for (const auto& blk : blocks)
        for (std::size_t i = 0; i < blk.dofs.size(); ++i) rhs[blk.dofs[i]] += blk.b[static_cast<Eigen::Index>(i)];
}

SparseMatrix assemble_matrix(const Discretization& d, unsigned terms, Execution exec) {
    const unsigned element_terms = terms & (kBulk | kNitsche | kFractureStiffness);
    std::vector<LocalBlock> elements, ghosts, junctions, points;
    if (element_terms) elements = compute_element_blocks(d, element_terms, false, exec);
    if (terms & kGhostPenalty) ghosts = compute_ghost_blocks(d, exec);
    if (terms & kJunction)
        for (int i = 0; i < d.graph.node_count(); ++i) junctions.push_back(junction_block(d, i));
    if (terms & kPointStabilization) points = point_stabilization_blocks(d);
    const std::vector<LocalBlock>* groups[] = {&elements, &ghosts, &junctions, &points};
    return scatter_blocks(d.space.ndof(), groups);
}

SparseMatrix assemble_bulk(const Discretization& d) { return assemble_matrix(d, kBulk); }
SparseMatrix assemble_nitsche_interface(const Discretization& d) { return assemble_matrix(d, kNitsche); }
SparseMatrix assemble_ghost_penalty(const Discretization& d) { return assemble_matrix(d, kGhostPenalty); }
SparseMatrix assemble_fracture_lb(const Discretization& d) { return assemble_matrix(d, kFractureStiffness); }
SparseMatrix assemble_bifurcation_terms(const Discretization& d) {
    return assemble_matrix(d, kJunction | kPointStabilization);
}

Eigen::VectorXd assemble_load(const Discretization& d, Execution exec) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d.space.ndof());
    scatter_load(rhs, compute_element_blocks(d, 0u, true, exec));
    return rhs;
}

LinearSystem assemble_system(const Discretization& d, Execution exec) {
    std::vector<LocalBlock> elements = compute_element_blocks(d, kBulk | kNitsche | kFractureStiffness, true, exec);
    std::vector<LocalBlock> ghosts = compute_ghost_blocks(d, exec);
    std::vector<LocalBlock> junctions;
    for (int i = 0; i < d.graph.node_count(); ++i) junctions.push_back(junction_block(d, i));
    std::vector<LocalBlock> points = point_stabilization_blocks(d);
    const std::vector<LocalBlock>* groups[] = {&elements, &ghosts, &junctions, &points};

    LinearSystem sys;
    sys.matrix = scatter_blocks(d.space.ndof(), groups);
    sys.rhs = Eigen::VectorXd::Zero(d.space.ndof());
    scatter_load(sys.rhs, elements);
    return sys;
}

LinearSystem apply_boundary_conditions(LinearSystem system, const ModelSpec& model, const Mesh& mesh,
                                       const DofSpace& space) {
    system.constrained.clear();
    system.values.clear();
    for (int dof : space.boundary_dofs()) {
        const int v = space.vertex_of(dof);
        const unsigned sides = mesh.vertex_sides[static_cast<std::size_t>(v)];
        const Point& x = mesh.vertices[static_cast<std::size_t>(v)];
        const int k = space.subdomain_of(dof);
        double sum = 0.0;
        int count = 0;
        for (Side s : kAllSides) {
            const auto& bc = model.bc[static_cast<std::size_t>(s)];
            if (!(sides & (1u << static_cast<unsigned>(s))) || bc.type != BcType::Dirichlet) continue;
            sum += bc.g ? bc.g(x, k) : 0.0;
            ++count;
        }
        if (count == 0) continue;
        system.constrained.push_back(dof);
        system.values.push_back(sum / count);
    }
    return system;
}

ReducedSystem reduce(const LinearSystem& system) {
    const int n = static_cast<int>(system.matrix.rows());
    ReducedSystem red;
    red.lifted = Eigen::VectorXd::Zero(n);
    std::vector<int> index(static_cast<std::size_t>(n), 0);
    for (std::size_t c = 0; c < system.constrained.size(); ++c) {
        index[static_cast<std::size_t>(system.constrained[c])] = -1;
        red.lifted[system.constrained[c]] = system.values[c];
    }
    for (int i = 0; i < n; ++i) {
        if (index[static_cast<std::size_t>(i)] < 0) continue;
        index[static_cast<std::size_t>(i)] = static_cast<int>(red.free_dofs.size());
        red.free_dofs.push_back(i);
    }
    const int nf = static_cast<int>(red.free_dofs.size());
    red.rhs.resize(nf);
    std::vector<Eigen::Triplet<double>> trips;
    for (int r = 0; r < nf; ++r) {
        const int gr = red.free_dofs[static_cast<std::size_t>(r)];
        double b = system.rhs[gr];
        for (SparseMatrix::InnerIterator it(system.matrix, gr); it; ++it) {
            const int gc = static_cast<int>(it.col());
            const int c = index[static_cast<std::size_t>(gc)];
            if (c >= 0)
                trips.emplace_back(r, c, it.value());
            else
                b -= it.value() * red.lifted[gc];
        }
        red.rhs[r] = b;
    }
    red.matrix.resize(nf, nf);
    red.matrix.setFromTriplets(trips.begin(), trips.end());
    red.matrix.makeCompressed();
    return red;
}

Eigen::VectorXd ReducedSystem::expand(const Eigen::VectorXd& reduced) const {
    Eigen::VectorXd full = lifted;
    for (std::size_t i = 0; i < free_dofs.size(); ++i) full[free_dofs[i]] = reduced[static_cast<Eigen::Index>(i)];
    return full;
}

} // namespace cutfrac
