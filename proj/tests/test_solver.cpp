#include <cmath>

#include "support.hpp"

using namespace cutfrac;
using namespace cutfrac::test;

namespace {

SparseMatrix dense_to_sparse(const Eigen::MatrixXd& M) { return M.sparseView(); }

ReducedSystem example1_system(int n) {
    const auto c = case_example1();
    const auto d = make(c, n);
    return build_reduced_system(c, *d, Execution::Parallel);
}

}  // namespace

TEST_CASE("small systems") {
    SparseMatrix I(5, 5);
    I.setIdentity();
    const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(5, 1, 5);
    CHECK((solve(I, b).coefficients - b).norm() <= 1e-15);

    const SparseMatrix A = dense_to_sparse(Eigen::Matrix2d{{2, -1}, {-1, 2}});
    const Eigen::Vector2d rhs(1, 0);
    for (int threshold : {2000, 0}) {
        SolverOptions o;
        o.direct_threshold = threshold;
        const auto r = solve(A, rhs, o);
        CHECK(r.direct == (threshold > 0));
        CHECK(std::abs(r.coefficients[0] - 2.0 / 3.0) <= 1e-12);
        CHECK(std::abs(r.coefficients[1] - 1.0 / 3.0) <= 1e-12);
    }
}

TEST_CASE("direct and iterative solutions agree on a cut system") {
    const ReducedSystem r = example1_system(32);
    const auto direct = solve_direct(r.matrix, r.rhs);
    CHECK(direct.residual_norm <= 1e-10);
    SolverOptions o;
    o.direct_threshold = 0;
    o.record_history = true;
    const auto cg = solve(r.matrix, r.rhs, o);
    CHECK_FALSE(cg.direct);
    CHECK(cg.residual_norm <= 1e-10);
    CHECK(cg.iterations > 0);
    CHECK((cg.coefficients - direct.coefficients).norm() <= 1e-6 * direct.coefficients.norm());
    REQUIRE(!cg.energy_decrements.empty());
    for (double e : cg.energy_decrements) CHECK(e >= 0.0);
}

TEST_CASE("iterative solves are deterministic across execution modes") {
    const ReducedSystem r = example1_system(32);
    SolverOptions o;
    o.direct_threshold = 0;
    o.exec = Execution::Serial;
    const auto a = solve_cg(r.matrix, r.rhs, o);
    const auto b = solve_cg(r.matrix, r.rhs, o);
    o.exec = Execution::Parallel;
    const auto c = solve_cg(r.matrix, r.rhs, o);
    CHECK(a.coefficients == b.coefficients);
    CHECK(a.coefficients == c.coefficients);
    CHECK(a.iterations == c.iterations);
}

TEST_CASE("solver failures") {
    const ReducedSystem r = example1_system(16);
    SolverOptions o;
    o.direct_threshold = 0;
    o.max_iter = 3;
    CHECK_THROWS_KIND(solve(r.matrix, r.rhs, o), ErrorKind::NotConverged);

    const SparseMatrix A = dense_to_sparse(Eigen::Matrix2d{{1, 2}, {2, 1}});
    CHECK_THROWS_KIND(solve_direct(A, Eigen::Vector2d(1, 0)), ErrorKind::IndefiniteDetected);
    CHECK_THROWS_KIND(estimate_condition(A), ErrorKind::IndefiniteDetected);
    ConditionOptions co;
    co.require_spd = false;
    CHECK(estimate_condition(A, co) == doctest::Approx(3.0).epsilon(1e-3));
}

TEST_CASE("condition estimates") {
    SparseMatrix I(10, 10);
    I.setIdentity();
    CHECK(estimate_condition(I) == doctest::Approx(1.0).epsilon(1e-6));
    Eigen::VectorXd diag = Eigen::VectorXd::LinSpaced(10, 1, 10);
    const SparseMatrix D = dense_to_sparse(Eigen::MatrixXd(diag.asDiagonal()));
    CHECK(estimate_condition(D) == doctest::Approx(10.0).epsilon(1e-2));

    const ReducedSystem r = example1_system(16);
    ConditionOptions serial;
    serial.exec = Execution::Serial;
    CHECK(estimate_condition(r.matrix, serial) == estimate_condition(r.matrix));
}
