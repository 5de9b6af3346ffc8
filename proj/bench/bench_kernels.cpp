// Serial reference kernels against their OpenMP versions: wall time and the largest
// difference in the results.
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "cutfrac/pipeline.hpp"

using namespace cutfrac;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, double diff) {
    std::cout << std::left << std::setw(22) << name << std::right << std::setw(12) << serial * 1e3 << std::setw(12)
              << parallel * 1e3 << std::setw(10) << serial / parallel << std::setw(14) << diff << '\n';
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 128;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
    const ManufacturedCase c = case_example1();
    RunOptions opts;
    opts.n = n;
    const auto d = discretize(c, opts);
    const Discretization view = d->view(c);

    std::cout << "example1, n = " << n << ", ndof = " << d->space.ndof() << ", threads = " << kernel_threads() << '\n'
              << std::left << std::setw(22) << "kernel" << std::right << std::setw(12) << "serial ms" << std::setw(12)
              << "parallel ms" << std::setw(10) << "speedup" << std::setw(14) << "max diff" << '\n';

    SparseMatrix As, Ap;
    const double ts = best_of(reps, [&] { As = assemble_matrix(view, kAllTerms, Execution::Serial); });
    const double tp = best_of(reps, [&] { Ap = assemble_matrix(view, kAllTerms, Execution::Parallel); });
    const SparseMatrix diff = As - Ap;
    row("assembly", ts, tp, diff.nonZeros() ? diff.coeffs().cwiseAbs().maxCoeff() : 0.0);

    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(As.rows(), -1.0, 1.0);
    Eigen::VectorXd ys, yp;
    const double ms = best_of(reps * 20, [&] { spmv(As, x, ys, Execution::Serial); });
    const double mp = best_of(reps * 20, [&] { spmv(As, x, yp, Execution::Parallel); });
    row("matvec", ms, mp, (ys - yp).cwiseAbs().maxCoeff());

    double ds = 0.0, dp = 0.0;
    const double os = best_of(reps * 20, [&] { ds = dot(x, ys, Execution::Serial); });
    const double op = best_of(reps * 20, [&] { dp = dot(x, yp, Execution::Parallel); });
    row("dot", os, op, std::abs(ds - dp));
    return 0;
}
