#pragma once

#include <vector>

#include <Eigen/Core>

#include "cutfrac/kernels.hpp"

namespace cutfrac {

struct SolverOptions {
    double tol = 1e-10;           ///< relative residual
    int max_iter = 20000;
    int direct_threshold = 2000;  ///< direct LDL^T below this many unknowns
    Execution exec = Execution::Parallel;
    bool record_history = false;
};

struct SolveReport {
    Eigen::VectorXd coefficients;
    int iterations = 0;
    double residual_norm = 0.0;  ///< ||b - Ax|| / ||b||
    double cond_estimate = 0.0;  ///< 0 when not computed
    bool direct = false;
    /// Decrease of the energy functional per CG step (alpha_k r_k.z_k); all >= 0 for SPD input.
    std::vector<double> energy_decrements;
};

/// Throws IndefiniteDetected, NotConverged (the error message carries the diagnostics).
SolveReport solve(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& opts = {});

/// Jacobi-preconditioned conjugate gradients.
SolveReport solve_cg(const SparseMatrix& A, const Eigen::VectorXd& b, const SolverOptions& opts);
SolveReport solve_direct(const SparseMatrix& A, const Eigen::VectorXd& b);

struct ConditionOptions {
    double rel_tol = 1e-4;  ///< stop when successive Rayleigh quotients agree to this
    int max_iter = 20000;
    unsigned seed = 12345;
    Execution exec = Execution::Parallel;
    /// When false, indefinite matrices are accepted and |lambda|max / |lambda|min is returned.
    bool require_spd = true;
};

/// lambda_max / lambda_min of an SPD matrix: power iteration for the largest eigenvalue,
/// inverse iteration with an LDL^T factorization for the smallest.
/// Throws IndefiniteDetected, NotConverged.
double estimate_condition(const SparseMatrix& A, const ConditionOptions& opts = {});

} // namespace cutfrac
