#include "cutfrac/solver.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>

#include "cutfrac/error.hpp"

namespace cutfrac {

namespace {

double relative_residual(const SparseMatrix& A, const Eigen::VectorXd& x, const Eigen::VectorXd& b, Execution exec) {
    Eigen::VectorXd Ax;
    spmv(A, x, Ax, exec);
    const Eigen::VectorXd r = b - Ax;
    const double bn = std::sqrt(dot(b, b, exec));
    const double rn = std::sqrt(dot(r, r, exec));
    return bn > 0.0 ? rn / bn : rn;
}

using Factorization = Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>;

void factorize(Factorization& ldlt, const SparseMatrix& A, bool require_spd = true) {
    const Eigen::SparseMatrix<double> Ac = A;
    ldlt.compute(Ac);
    if (ldlt.info() != Eigen::Success)
        throw Error(ErrorKind::IndefiniteDetected, "LDL^T factorization failed (singular matrix)");
    if (!require_spd) return;
    const auto D = ldlt.vectorD();
    for (Eigen::Index i = 0; i < D.size(); ++i)
        if (!(D[i] > 0.0))
            throw Error(ErrorKind::IndefiniteDetected, "non-positive pivot in LDL^T factorization; matrix is not SPD");
}

} // namespace

SolveReport solve_direct(const SparseMatrix& A, const Eigen::VectorXd& b) {
    SolveReport rep;
    rep.direct = true;
    if (A.rows() == 0) {
        rep.coefficients = Eigen::VectorXd(0);
        return rep;
    }
    Factorization ldlt;
    factorize(ldlt, A);
    rep.coefficients = ldlt.solve(b);
    rep.iterations = 1;
    rep.residual_norm = relative_residual(A, rep.coefficients, b, Execution::Serial);
    return rep;
}

SolveReport solve_cg(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& opts) {
    const Eigen::Index n = A.rows();
    SolveReport rep;
    rep.coefficients = Eigen::VectorXd::Zero(n);
    const double bn = std::sqrt(dot(b, b, opts.exec));
    if (bn == 0.0) return rep;

    Eigen::VectorXd inv_diag(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double dii = A.coeff(i, i);
        if (!(dii > 0.0))
            throw Error(ErrorKind::IndefiniteDetected, "non-positive diagonal entry; matrix is not SPD");
        inv_diag[i] = 1.0 / dii;
    }
    Eigen::VectorXd& x = rep.coefficients;
    Eigen::VectorXd r = b;
    Eigen::VectorXd z = inv_diag.cwiseProduct(r);
    Eigen::VectorXd p = z;
    Eigen::VectorXd Ap(n);
    double rz = dot(r, z, opts.exec);
    double rel = 1.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        spmv(A, p, Ap, opts.exec);
        const double pAp = dot(p, Ap, opts.exec);
        if (!(pAp > 0.0)) {
            std::ostringstream os;
            os << "conjugate gradients broke down at iteration " << it << " (p.Ap = " << pAp
               << "); matrix is not positive definite";
            throw Error(ErrorKind::IndefiniteDetected, os.str());
        }
        const double alpha = rz / pAp;
        x += alpha * p;
        r -= alpha * Ap;
        if (opts.record_history) rep.energy_decrements.push_back(alpha * rz);
        rel = std::sqrt(dot(r, r, opts.exec)) / bn;
        rep.iterations = it;
        if (rel <= opts.tol) break;
        z = inv_diag.cwiseProduct(r);
        const double rz_new = dot(r, z, opts.exec);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    // recompute the true residual; the recurrence drifts slightly
    rep.residual_norm = relative_residual(A, x, b, opts.exec);
    if (rep.residual_norm > opts.tol && rel > opts.tol) {
        std::ostringstream os;
        os << "conjugate gradients did not converge: relative residual " << rep.residual_norm << " after "
           << rep.iterations << " iterations";
        throw Error(ErrorKind::NotConverged, os.str());
    }
    return rep;
}

SolveReport solve(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& opts) {
    if (A.rows() != A.cols() || A.rows() != b.size())
        throw Error(ErrorKind::InvalidInput, "matrix and right-hand side sizes do not match");
    if (A.rows() < opts.direct_threshold) return solve_direct(A, b);
    return solve_cg(A, b, opts);
}

double estimate_condition(const SparseMatrix& A, const ConditionOptions& opts) {
    const Eigen::Index n = A.rows();
    if (n == 0) throw Error(ErrorKind::InvalidInput, "empty matrix");
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dist(0.5, 1.5);
    Eigen::VectorXd start(n);
    for (Eigen::Index i = 0; i < n; ++i) start[i] = dist(rng);

    auto iterate = [&](auto&& apply, const char* what) {
        Eigen::VectorXd v = start / std::sqrt(dot(start, start, opts.exec));
        Eigen::VectorXd w(n);
        double prev = 0.0;
        for (int it = 0; it < opts.max_iter; ++it) {
            apply(v, w);
            const double rq = dot(v, w, opts.exec);
            const double wn = std::sqrt(dot(w, w, opts.exec));
            if (!(wn > 0.0)) throw Error(ErrorKind::IndefiniteDetected, "matrix is singular");
            v = w / wn;
            if (it > 0 && std::abs(rq - prev) <= opts.rel_tol * std::abs(rq)) return rq;
            prev = rq;
        }
        throw Error(ErrorKind::NotConverged, std::string(what) + " iteration did not converge");
    };

    const double lmax = iterate([&](const Eigen::VectorXd& v, Eigen::VectorXd& w) { spmv(A, v, w, opts.exec); }, "power");
    Factorization ldlt;
    factorize(ldlt, A, opts.require_spd);
    const double inv_lmin = iterate([&](const Eigen::VectorXd& v, Eigen::VectorXd& w) { w = ldlt.solve(v); }, "inverse");
    if (!opts.require_spd) return std::abs(lmax * inv_lmin);
    if (!(inv_lmin > 0.0) || !(lmax > 0.0))
        throw Error(ErrorKind::IndefiniteDetected, "matrix is not positive definite");
    return lmax * inv_lmin;
}

} // namespace cutfrac
