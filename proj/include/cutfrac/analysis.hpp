#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "cutfrac/pipeline.hpp"

namespace cutfrac {

struct ErrorNorms {
    double l2_bulk = 0.0;
    double l2_gamma = 0.0;  ///< exact trace against <u_h>_*
    double energy = 0.0;    ///< bulk gradient + jump penalty + fracture tangential terms
};

/// Throws MissingExact.
ErrorNorms compute_errors(const SolutionField& field, const ManufacturedCase& c, const ModelSpec& model,
                          const ResolvedParameters& params);

/// Least-squares fit of log(err) = slope * log(h) + intercept.
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
/// Needs at least two points; non-positive errors are rejected with InvalidInput.
RateFit fit_rate(std::span<const double> h, std::span<const double> err);

struct LevelResult {
    int n = 0;
    double h = 0.0;
    int ndof = 0;
    ErrorNorms errors;
    double cond_estimate = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

struct ConvergenceReport {
    std::string case_name;
    std::vector<LevelResult> levels;  ///< decreasing h
    RateFit l2_bulk, l2_gamma, energy;
    /// Fits restricted to the final four levels (all levels when fewer).
    RateFit l2_bulk_tail, l2_gamma_tail, energy_tail;
};

/// Solves on n0, 2 n0, ..., n0 2^(levels-1). Needs levels >= 3 and an exact solution.
ConvergenceReport run_convergence(const ManufacturedCase& c, int levels, int n0, const RunOptions& base);

void write_convergence_csv(std::ostream& os, const ConvergenceReport& report);
nlohmann::json to_json(const ConvergenceReport& report);
/// Log-log plot of convergence.csv with 1:1 and 2:1 reference slopes.
void write_gnuplot(std::ostream& os, const ConvergenceReport& report, const std::string& csv_name);

struct SweepRow {
    double offset = 0.0;
    double cond_stabilized = 0.0;
    double cond_unstabilized = 0.0;
};

/// 0.5, 1e-1, 1e-2, ..., 1e-8.
std::vector<double> default_sweep_offsets();
/// Horizontal fracture at y = 0.5 + offset / n on an n x n mesh of the unit square.
/// Condition estimates with ghost penalty `gamma` and without (gamma = 0).
std::vector<SweepRow> cut_robustness_sweep(std::span<const double> offsets, int n = 32, double gamma = 0.1,
                                           const RunOptions& base = {});
void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows);

/// Writes a number in shortest round-trip form.
std::string format_number(double v);

} // namespace cutfrac
