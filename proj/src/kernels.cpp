#include "cutfrac/kernels.hpp"

#include <algorithm>
#include <exception>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cutfrac/error.hpp"

namespace cutfrac {

namespace {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

int copy_index(const std::vector<ElementCopy>& copies, int k) {
    for (std::size_t c = 0; c < copies.size(); ++c)
        if (copies[c].subdomain == k) return static_cast<int>(c);
    throw Error(ErrorKind::OutsideCoverage, "element has no copy for subdomain " + std::to_string(k));
}

Vec3 hat_values(const Triangle& tri, const Point& x) {
    const auto l = tri.barycentric(x);
    return {l[0], l[1], l[2]};
}

void add_block(Eigen::MatrixXd& K, const std::array<int, 6>& idx, const Eigen::Matrix<double, 6, 6>& M) {
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) K(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]) += M(r, c);
}

// Two-copy vector [w1 * u; w2 * u] laid out over the copies of sides s1, s2.
Vec6 pair_vector(double w1, double w2, const Vec3& u) {
    Vec6 v;
    v << w1 * u, w2 * u;
    return v;
}

// Runs fn(0..n-1); in parallel mode the first exception thrown by any task is rethrown.
template <class Fn>
void for_each_index(int n, Execution exec, Fn&& fn) {
    if (exec == Execution::Serial) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
    for (int i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
#pragma omp critical(cutfrac_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace

LocalBlock element_block(const Discretization& d, int e, unsigned terms, bool with_load) {
    const auto& copies = d.space.copies(e);
    const int m = static_cast<int>(copies.size());
    LocalBlock blk;
    blk.K = Eigen::MatrixXd::Zero(3 * m, 3 * m);
    blk.b = Eigen::VectorXd::Zero(3 * m);
    for (const auto& c : copies) blk.dofs.insert(blk.dofs.end(), c.dofs.begin(), c.dofs.end());

    const Triangle tri = d.mesh.triangle(e);
    const Eigen::Matrix<double, 3, 2> G = basis_gradients(tri);

    for (int c = 0; c < m; ++c) {
        const int k = copies[static_cast<std::size_t>(c)].subdomain;
        if (terms & kBulk) {
            const double area = d.topo.side_area(d.mesh, e, k);
            blk.K.block(3 * c, 3 * c, 3, 3) += d.model.a[static_cast<std::size_t>(k)] * area * (G * G.transpose());
        }
        if (with_load && d.model.f) {
            const auto rule = d.topo.side_rule(d.mesh, e, k);
            for (std::size_t q = 0; q < rule.points.size(); ++q)
                blk.b.segment(3 * c, 3) += rule.weights[q] * d.model.f(rule.points[q], k) * hat_values(tri, rule.points[q]);
        }
    }

    const double beta_h = d.params.beta / d.params.h;
    for (int pi : d.topo.element_pieces(e)) {
        const InterfacePiece& piece = d.topo.pieces()[static_cast<std::size_t>(pi)];
        const int s1 = piece.sides[0], s2 = piece.sides[1];
        const int c1 = copy_index(copies, s1), c2 = copy_index(copies, s2);
        const std::array<int, 6> idx{3 * c1, 3 * c1 + 1, 3 * c1 + 2, 3 * c2, 3 * c2 + 1, 3 * c2 + 2};
        const auto kap = interface_weights(d.model, s1, s2);
        const double a1 = d.model.a[static_cast<std::size_t>(s1)], a2 = d.model.a[static_cast<std::size_t>(s2)];
        const Vec3 Gn = G * piece.normal;
        const Vec3 Gt = G * piece.tangent;
        const double length = piece.rule.total_weight();

        if ((terms & kNitsche) && piece.separates()) {
            Vec6 flux;
            flux << kap[0] * a1 * Gn, kap[1] * a2 * Gn;
            for (std::size_t q = 0; q < piece.rule.points.size(); ++q) {
                const Vec3 phi = hat_values(tri, piece.rule.points[q]);
                Vec6 jump;
                jump << phi, -phi;
                const double w = piece.rule.weights[q];
                const Eigen::Matrix<double, 6, 6> M =
                    w * (-(flux * jump.transpose()) - jump * flux.transpose() + beta_h * jump * jump.transpose());
                add_block(blk.K, idx, M);
            }
        }
        const double a_gamma = d.graph.edge(piece.edge).a_gamma;
        if ((terms & kFractureStiffness) && a_gamma > 0.0) {
            const Vec6 tg = pair_vector(kap[1], kap[0], Gt);
            add_block(blk.K, idx, length * a_gamma * tg * tg.transpose());
        }
        if (with_load && d.model.f_gamma) {
            for (std::size_t q = 0; q < piece.rule.points.size(); ++q) {
                const Vec3 phi = hat_values(tri, piece.rule.points[q]);
                const Vec6 avg = pair_vector(kap[1], kap[0], phi);
                const double fw = piece.rule.weights[q] * d.model.f_gamma(piece.rule.points[q], piece.edge);
                for (int r = 0; r < 6; ++r) blk.b(idx[static_cast<std::size_t>(r)]) += fw * avg(r);
            }
        }
    }
    return blk;
}

LocalBlock ghost_face_block(const Discretization& d, int k, int f) {
    const Face& face = d.mesh.faces.at(static_cast<std::size_t>(f));
    const int e0 = face.elements[0], e1 = face.elements[1];
    const Point n = d.mesh.face_normal(f);
    const Vec3 g0 = basis_gradients(d.mesh.triangle(e0)) * n;
    const Vec3 g1 = basis_gradients(d.mesh.triangle(e1)) * n;
    const double a = d.model.a.at(static_cast<std::size_t>(k));
    Vec6 jump;
    jump << a * g0, -a * g1;
    LocalBlock blk;
    const auto& d0 = d.space.copy(e0, k).dofs;
    const auto& d1 = d.space.copy(e1, k).dofs;
    blk.dofs = {d0[0], d0[1], d0[2], d1[0], d1[1], d1[2]};
    blk.K = d.params.gamma * d.params.h * d.mesh.face_length(f) * jump * jump.transpose();
    blk.b = Eigen::VectorXd::Zero(6);
    return blk;
}

namespace {

const EdgeVisit& end_visit(const Discretization& d, int edge, int end) {
    const auto& path = d.topo.edge_path(edge);
    if (path.empty())
        throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(edge) + " does not cross the mesh");
    return end == 0 ? path.front() : path.back();
}

} // namespace

LocalBlock junction_block(const Discretization& d, int node) {
    const auto& incs = d.graph.incidences(node);
    LocalBlock blk;
    const int m = static_cast<int>(incs.size());
    if (m == 0) {
        blk.K.resize(0, 0);
        blk.b.resize(0);
        return blk;
    }
    const Point& x = d.graph.nodes()[static_cast<std::size_t>(node)];
    if (m >= 2 && d.mesh.vertex_at(x) < 0)
        throw Error(ErrorKind::NodeNotVertex,
                    "fracture junction " + std::to_string(node) + " does not coincide with a mesh vertex");

    // Per incidence: trace of <v>_* at x (c) and exterior tangential flux a_gamma t.grad <v>_* (g).
    const int n = 6 * m;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, m);
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, m);
    for (int l = 0; l < m; ++l) {
        const auto [edge, end] = incs[static_cast<std::size_t>(l)];
        const EdgeVisit& visit = end_visit(d, edge, end);
        const auto lr = d.subdomains.edge_sides(edge);
        const int s1 = std::min(lr[0], lr[1]), s2 = std::max(lr[0], lr[1]);
        const auto kap = interface_weights(d.model, s1, s2);
        const Triangle tri = d.mesh.triangle(visit.element);
        const Vec3 phi = hat_values(tri, x);
        const Vec3 Gt = basis_gradients(tri) * edge_tangent_at_end(d.graph.edge(edge), end);
        const auto& d1 = d.space.copy(visit.element, s1).dofs;
        const auto& d2 = d.space.copy(visit.element, s2).dofs;
        blk.dofs.insert(blk.dofs.end(), d1.begin(), d1.end());
        blk.dofs.insert(blk.dofs.end(), d2.begin(), d2.end());
        C.block(6 * l, l, 6, 1) = pair_vector(kap[1], kap[0], phi);
        F.block(6 * l, l, 6, 1) = d.graph.edge(edge).a_gamma * pair_vector(kap[1], kap[0], Gt);
    }
    const double kappa_node = 1.0 / m;
    Eigen::VectorXd avg = Eigen::VectorXd::Zero(n);
    for (int l = 0; l < m; ++l) avg += kappa_node * C.col(l);

    const double pen = d.params.beta_gamma / d.params.h;
    blk.K = Eigen::MatrixXd::Zero(n, n);
    for (int l = 0; l < m; ++l) {
        const Eigen::VectorXd dev = C.col(l) - avg;
        const Eigen::VectorXd g = F.col(l);
        blk.K += -(g * dev.transpose()) - dev * g.transpose() + pen * dev * dev.transpose();
    }
    blk.b = Eigen::VectorXd::Zero(n);
    return blk;
}

std::vector<LocalBlock> point_stabilization_blocks(const Discretization& d) {
    std::vector<LocalBlock> out;
    if (d.params.gamma_point == 0.0) return out;
    // (edge, index of the visit after the crossing point), collected over all junctions
    std::set<std::pair<int, int>> crossings;
    for (int i = 0; i < d.graph.node_count(); ++i) {
        if (d.graph.incidences(i).size() < 2) continue;
        const int v = d.mesh.vertex_at(d.graph.nodes()[static_cast<std::size_t>(i)]);
        if (v < 0) continue;
        std::set<int> patch;
        for (int e : d.mesh.vertex_star(v))
            for (int w : d.mesh.triangles[static_cast<std::size_t>(e)])
                for (int e2 : d.mesh.vertex_star(w)) patch.insert(e2);
        for (int j : d.graph.incident_edges(i)) {
            const auto& path = d.topo.edge_path(j);
            for (std::size_t p = 1; p < path.size(); ++p) {
                if (path[p - 1].element == path[p].element) continue;
                if (patch.count(path[p - 1].element) && patch.count(path[p].element))
                    crossings.emplace(j, static_cast<int>(p));
            }
        }
    }
    for (const auto& [j, p] : crossings) {
        const auto& path = d.topo.edge_path(j);
        const EdgeVisit& before = path[static_cast<std::size_t>(p) - 1];
        const EdgeVisit& after = path[static_cast<std::size_t>(p)];
        const Point ta = d.topo.pieces()[static_cast<std::size_t>(before.last_piece)].tangent;
        const Point tb = d.topo.pieces()[static_cast<std::size_t>(after.first_piece)].tangent;
        const Point t = (ta + tb).normalized();
        const auto lr = d.subdomains.edge_sides(j);
        const int s1 = std::min(lr[0], lr[1]), s2 = std::max(lr[0], lr[1]);
        const auto kap = interface_weights(d.model, s1, s2);
        LocalBlock blk;
        Eigen::VectorXd jump(12);
        int row = 0;
        for (const EdgeVisit* visit : {&before, &after}) {
            const double sign = visit == &before ? 1.0 : -1.0;
            const Vec3 Gt = basis_gradients(d.mesh.triangle(visit->element)) * t;
            const auto& d1 = d.space.copy(visit->element, s1).dofs;
            const auto& d2 = d.space.copy(visit->element, s2).dofs;
            blk.dofs.insert(blk.dofs.end(), d1.begin(), d1.end());
            blk.dofs.insert(blk.dofs.end(), d2.begin(), d2.end());
            jump.segment(row, 6) = sign * pair_vector(kap[1], kap[0], Gt);
            row += 6;
        }
        blk.K = d.params.gamma_point * jump * jump.transpose();
        blk.b = Eigen::VectorXd::Zero(12);
        out.push_back(std::move(blk));
    }
    return out;
}

std::vector<LocalBlock> compute_element_blocks(const Discretization& d, unsigned terms, bool with_load, Execution exec) {
    const int ne = d.mesh.element_count();
    std::vector<LocalBlock> blocks(static_cast<std::size_t>(ne));
    for_each_index(ne, exec, [&](int e) { blocks[static_cast<std::size_t>(e)] = element_block(d, e, terms, with_load); });
    return blocks;
}

std::vector<LocalBlock> compute_ghost_blocks(const Discretization& d, Execution exec) {
    std::vector<std::pair<int, int>> work;
    if (d.params.gamma > 0.0)
        for (int k = 0; k < d.topo.subdomain_count(); ++k)
            for (int f : d.topo.cut_faces(k)) work.emplace_back(k, f);
    const int nw = static_cast<int>(work.size());
    std::vector<LocalBlock> blocks(work.size());
    for_each_index(nw, exec, [&](int i) {
        const auto [k, f] = work[static_cast<std::size_t>(i)];
        blocks[static_cast<std::size_t>(i)] = ghost_face_block(d, k, f);
    });
    return blocks;
}

void spmv(const SparseMatrix& A, const Eigen::VectorXd& x, Eigen::VectorXd& y, Execution exec) {
    const int n = static_cast<int>(A.rows());
    y.resize(n);
    const int* outer = A.outerIndexPtr();
    const int* inner = A.innerIndexPtr();
    const double* val = A.valuePtr();
    auto row = [&](int r) {
        double s = 0.0;
        for (int p = outer[r]; p < outer[r + 1]; ++p) s += val[p] * x[inner[p]];
        y[r] = s;
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (int r = 0; r < n; ++r) row(r);
    } else {
        for (int r = 0; r < n; ++r) row(r);
    }
}

double dot(const Eigen::VectorXd& x, const Eigen::VectorXd& y, Execution exec) {
    constexpr int kBlock = 1024;
    const int n = static_cast<int>(x.size());
    const int nb = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(static_cast<std::size_t>(nb), 0.0);
    auto block = [&](int b) {
        double s = 0.0;
        const int end = std::min(n, (b + 1) * kBlock);
        for (int i = b * kBlock; i < end; ++i) s += x[i] * y[i];
        partial[static_cast<std::size_t>(b)] = s;
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (int b = 0; b < nb; ++b) block(b);
    } else {
        for (int b = 0; b < nb; ++b) block(b);
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

int kernel_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace cutfrac
