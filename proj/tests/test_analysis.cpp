#include <cmath>
#include <sstream>

#include "cutfrac/analysis.hpp"
#include "support.hpp"

using namespace cutfrac;
using namespace cutfrac::test;

TEST_CASE("rate fit recovers a power law") {
    const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> err;
    for (double x : h) err.push_back(3.0 * x * x);
    const RateFit f = fit_rate(h, err);
    CHECK(std::abs(f.slope - 2.0) <= 1e-12);
    CHECK(std::abs(f.intercept - std::log(3.0)) <= 1e-12);
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> bad{1.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_KIND(fit_rate(h, bad), ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(fit_rate(std::span(h).first(1), std::span(err).first(1)), ErrorKind::InvalidInput);
}

TEST_CASE("error norms of interpolants") {
    const auto c = case_patch_test();
    const auto d = make(c, 8);
    const auto exact = interpolate(d->space, d->mesh, [](const Point& p) { return 0.3 + 1.7 * p.x() - 0.9 * p.y(); });
    const SolutionField f{&d->mesh, &d->topo, &d->space, &c.subdomains, exact};
    const ErrorNorms e = compute_errors(f, c, d->model, d->params);
    CHECK(e.l2_bulk <= 1e-13);
    CHECK(e.l2_gamma <= 1e-13);
    CHECK(e.energy <= 1e-12);

    // constant 1 against u: L2 error is the norm of u - 1, gradient error |grad u|
    const SolutionField one{&d->mesh, &d->topo, &d->space, &c.subdomains, Eigen::VectorXd::Ones(d->space.ndof())};
    const ErrorNorms e1 = compute_errors(one, c, d->model, d->params);
    // integral of (1.7x - 0.9y - 0.7)^2 over the unit square
    const double l2sq = 1.7 * 1.7 / 3 + 0.9 * 0.9 / 3 + 0.49 - 2 * 1.7 * 0.9 / 4 - 2 * 0.7 * 1.7 / 2 + 2 * 0.7 * 0.9 / 2;
    CHECK(e1.l2_bulk == doctest::Approx(std::sqrt(l2sq)).epsilon(1e-10));
    CHECK(e1.energy == doctest::Approx(std::hypot(1.7, 0.9)).epsilon(1e-10));

    CHECK_THROWS_KIND(compute_errors(one, case_example3({0, 0, 0, 0, 0}), d->model, d->params), ErrorKind::MissingExact);
}

TEST_CASE("convergence study input checks") {
    CHECK_THROWS_KIND(run_convergence(case_example1(), 2, 8, {}), ErrorKind::InvalidInput);
    CHECK_THROWS_KIND(run_convergence(case_example3({0, 0, 0, 0, 0}), 3, 8, {}), ErrorKind::MissingExact);
}

TEST_CASE("errors decrease under refinement on the circle case") {
    const auto c = case_example1();
    const ConvergenceReport r = run_convergence(c, 3, 16, {});
    REQUIRE(r.levels.size() == 3);
    for (std::size_t i = 1; i < r.levels.size(); ++i) {
        CHECK(r.levels[i].h < r.levels[i - 1].h);
        CHECK(r.levels[i].errors.l2_bulk < r.levels[i - 1].errors.l2_bulk);
        CHECK(r.levels[i].errors.energy < r.levels[i - 1].errors.energy);
    }
    const auto& a = r.levels[0].errors;
    const auto& b = r.levels[1].errors;
    CHECK(a.l2_bulk / b.l2_bulk > 3.0);
    CHECK(a.energy / b.energy > 1.6);
    for (const auto& l : r.levels) CHECK(l.errors.energy > l.errors.l2_bulk);
    CHECK(r.l2_bulk.r2 >= 0.98);
    CHECK(r.energy.r2 >= 0.98);

    std::ostringstream csv;
    write_convergence_csv(csv, r);
    std::string header;
    std::istringstream in(csv.str());
    std::getline(in, header);
    CHECK(header == "h,ndof,err_L2_bulk,err_L2_gamma,err_energy,cond_estimate,n,rate_L2_bulk,rate_L2_gamma,rate_energy");
    int rows = 0;
    for (std::string line; std::getline(in, line);) rows += !line.empty();
    CHECK(rows == 3);

    const auto j = to_json(r);
    CHECK(j.contains("rates"));
    CHECK(j["levels"].size() == 3);

    std::ostringstream gp;
    write_gnuplot(gp, r, "convergence.csv");
    CHECK(gp.str().find("convergence.csv") != std::string::npos);
    CHECK(gp.str().find("logscale") != std::string::npos);
}

TEST_CASE("cut robustness sweep") {
    const auto offsets = default_sweep_offsets();
    CHECK(offsets.size() == 9);
    CHECK(offsets.front() == 0.5);
    CHECK(offsets.back() == 1e-8);
    CHECK_THROWS_KIND(cut_robustness_sweep(std::vector<double>{}, 8), ErrorKind::InvalidInput);

    const std::vector<double> small{0.5, 1e-6};
    const auto rows = cut_robustness_sweep(small, 8);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].cond_stabilized < 10.0 * rows[0].cond_stabilized);
    CHECK(rows[1].cond_unstabilized > 100.0 * rows[1].cond_stabilized);

    std::ostringstream os;
    write_sweep_csv(os, rows);
    CHECK(os.str().rfind("offset,", 0) == 0);
}

TEST_CASE("numbers are written in shortest round-trip form") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-8) == "1e-08");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}
