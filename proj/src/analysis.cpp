#include "cutfrac/analysis.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "cutfrac/error.hpp"

namespace cutfrac {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

ErrorNorms compute_errors(const SolutionField& field, const ManufacturedCase& c, const ModelSpec& model,
                          const ResolvedParameters& params) {
    if (!c.exact) throw Error(ErrorKind::MissingExact, "case '" + c.name + "' has no exact solution");
    const auto& ex = *c.exact;
    const Mesh& mesh = *field.mesh;
    const CutTopology& topo = *field.topo;
    double l2 = 0.0, grad = 0.0, l2g = 0.0, jump = 0.0, tang = 0.0;

    for (int e = 0; e < mesh.element_count(); ++e) {
        for (int k : topo.subdomains_of(e)) {
            const double a = model.a[static_cast<std::size_t>(k)];
            const Point gh = field.gradient_in(e, k);
            const auto rule = topo.side_rule(mesh, e, k);
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                const Point& x = rule.points[q];
                const double du = ex.value(x, k) - field.value_in(e, k, x);
                l2 += rule.weights[q] * du * du;
                grad += rule.weights[q] * a * (ex.gradient(x, k) - gh).squaredNorm();
            }
        }
    }
    for (const auto& piece : topo.pieces()) {
        const int e = piece.element, s1 = piece.sides[0], s2 = piece.sides[1];
        const auto kap = interface_weights(model, s1, s2);
        const double a_gamma = c.graph.edge(piece.edge).a_gamma;
        const double th = piece.tangent.dot(kap[1] * field.gradient_in(e, s1) + kap[0] * field.gradient_in(e, s2));
        for (std::size_t q = 0; q < piece.rule.points.size(); ++q) {
            const Point& x = piece.rule.points[q];
            const double w = piece.rule.weights[q];
            const double u1 = field.value_in(e, s1, x), u2 = field.value_in(e, s2, x);
            const double avg = kap[1] * u1 + kap[0] * u2;
            const double du = ex.value(x, s1) - avg;
            l2g += w * du * du;
            jump += w * (u1 - u2) * (u1 - u2);
            if (a_gamma > 0.0) {
                const double dt = piece.tangent.dot(ex.gradient(x, s1)) - th;
                tang += w * a_gamma * dt * dt;
            }
        }
    }
    return {std::sqrt(l2), std::sqrt(l2g), std::sqrt(grad + params.beta / params.h * jump + tang)};
}

RateFit fit_rate(std::span<const double> h, std::span<const double> err) {
    if (h.size() != err.size() || h.size() < 2) throw Error(ErrorKind::InvalidInput, "rate fit needs at least two levels");
    const double n = static_cast<double>(h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0) || !(err[i] > 0.0)) throw Error(ErrorKind::InvalidInput, "rate fit needs positive values");
        const double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    RateFit fit;
    const double den = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double y = std::log(err[i]);
        const double pred = fit.intercept + fit.slope * std::log(h[i]);
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - mean) * (y - mean);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

namespace {

RateFit fit_column(const std::vector<LevelResult>& levels, std::size_t first, double ErrorNorms::*member) {
    std::vector<double> h, e;
    for (std::size_t i = first; i < levels.size(); ++i) {
        h.push_back(levels[i].h);
        e.push_back(levels[i].errors.*member);
    }
    // a norm that is identically zero (no fracture term) has no meaningful rate
    for (double v : e)
        if (!(v > 0.0)) return {};
    return fit_rate(h, e);
}

} // namespace

ConvergenceReport run_convergence(const ManufacturedCase& c, int levels, int n0, const RunOptions& base) {
    if (levels < 3) throw Error(ErrorKind::InvalidInput, "a convergence study needs at least 3 levels");
    if (n0 < 2) throw Error(ErrorKind::InvalidInput, "n0 must be at least 2");
    if (!c.exact) throw Error(ErrorKind::MissingExact, "case '" + c.name + "' has no exact solution");
    ConvergenceReport rep;
    rep.case_name = c.name;
    for (int l = 0; l < levels; ++l) {
        RunOptions opts = base;
        opts.n = n0 << l;
        const Solution sol = solve_case(c, opts);
        LevelResult lr;
        lr.n = opts.n;
        lr.h = sol.disc->mesh.h;
        lr.ndof = sol.disc->space.ndof();
        lr.errors = compute_errors(sol.field(c), c, sol.disc->model, sol.disc->params);
        lr.cond_estimate = sol.report.cond_estimate;
        lr.iterations = sol.report.iterations;
        lr.residual = sol.report.residual_norm;
        rep.levels.push_back(lr);
    }
    const std::size_t tail = rep.levels.size() > 4 ? rep.levels.size() - 4 : 0;
    rep.l2_bulk = fit_column(rep.levels, 0, &ErrorNorms::l2_bulk);
    rep.l2_gamma = fit_column(rep.levels, 0, &ErrorNorms::l2_gamma);
    rep.energy = fit_column(rep.levels, 0, &ErrorNorms::energy);
    rep.l2_bulk_tail = fit_column(rep.levels, tail, &ErrorNorms::l2_bulk);
    rep.l2_gamma_tail = fit_column(rep.levels, tail, &ErrorNorms::l2_gamma);
    rep.energy_tail = fit_column(rep.levels, tail, &ErrorNorms::energy);
    return rep;
}

void write_convergence_csv(std::ostream& os, const ConvergenceReport& report) {
    os << "h,ndof,err_L2_bulk,err_L2_gamma,err_energy,cond_estimate,n,rate_L2_bulk,rate_L2_gamma,rate_energy\n";
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
        const auto& l = report.levels[i];
        os << format_number(l.h) << ',' << l.ndof << ',' << format_number(l.errors.l2_bulk) << ','
           << format_number(l.errors.l2_gamma) << ',' << format_number(l.errors.energy) << ','
           << format_number(l.cond_estimate) << ',' << l.n;
        if (i == 0) {
            os << ",,,\n";
            continue;
        }
        const auto& p = report.levels[i - 1];
        auto rate = [&](double ErrorNorms::*m) {
            const double a = p.errors.*m, b = l.errors.*m;
            if (!(a > 0.0) || !(b > 0.0)) return std::string();
            return format_number(std::log(a / b) / std::log(p.h / l.h));
        };
        os << ',' << rate(&ErrorNorms::l2_bulk) << ',' << rate(&ErrorNorms::l2_gamma) << ','
           << rate(&ErrorNorms::energy) << '\n';
    }
}

nlohmann::json to_json(const ConvergenceReport& report) {
    using nlohmann::json;
    auto fit = [](const RateFit& f) { return json{{"rate", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}}; };
    json levels = json::array();
    for (const auto& l : report.levels) {
        levels.push_back({{"n", l.n},
                          {"h", l.h},
                          {"ndof", l.ndof},
                          {"err_L2_bulk", l.errors.l2_bulk},
                          {"err_L2_gamma", l.errors.l2_gamma},
                          {"err_energy", l.errors.energy},
                          {"cond_estimate", l.cond_estimate},
                          {"iterations", l.iterations},
                          {"residual", l.residual}});
    }
    return json{{"case", report.case_name},
                {"levels", levels},
                {"rates",
                 {{"L2_bulk", fit(report.l2_bulk)},
                  {"L2_gamma", fit(report.l2_gamma)},
                  {"energy", fit(report.energy)}}},
                {"rates_last4",
                 {{"L2_bulk", fit(report.l2_bulk_tail)},
                  {"L2_gamma", fit(report.l2_gamma_tail)},
                  {"energy", fit(report.energy_tail)}}}};
}

void write_gnuplot(std::ostream& os, const ConvergenceReport& report, const std::string& csv_name) {
    const auto& first = report.levels.front();
    os << "set datafile separator ','\n"
       << "set logscale xy\n"
       << "set key left top\n"
       << "set xlabel 'h'\n"
       << "set ylabel 'error'\n"
       << "set title '" << report.case_name << "'\n"
       << "h0 = " << format_number(first.h) << "\n"
       << "e1 = " << format_number(first.errors.energy) << "\n"
       << "e2 = " << format_number(first.errors.l2_bulk) << "\n"
       << "plot '" << csv_name << "' skip 1 using 1:3 with linespoints title 'L2 bulk', \\\n"
       << "     '" << csv_name << "' skip 1 using 1:4 with linespoints title 'L2 fracture', \\\n"
       << "     '" << csv_name << "' skip 1 using 1:5 with linespoints title 'energy', \\\n"
       << "     e1 * (x / h0) with lines dashtype 2 title 'slope 1', \\\n"
       << "     e2 * (x / h0)**2 with lines dashtype 3 title 'slope 2'\n";
}

std::vector<double> default_sweep_offsets() {
    std::vector<double> out{0.5};
    for (int p = 1; p <= 8; ++p) out.push_back(std::pow(10.0, -p));
    return out;
}

std::vector<SweepRow> cut_robustness_sweep(std::span<const double> offsets, int n, double gamma, const RunOptions& base) {
    if (offsets.empty()) throw Error(ErrorKind::InvalidInput, "the offset list is empty");
    std::vector<SweepRow> rows;
    for (double delta : offsets) {
        const ManufacturedCase c = case_straight_fracture(delta / n);
        SweepRow row;
        row.offset = delta;
        for (int variant = 0; variant < 2; ++variant) {
            RunOptions opts = base;
            opts.n = n;
            opts.gamma = variant == 0 ? gamma : 0.0;
            const auto d = discretize(c, opts);
            const ReducedSystem sys = build_reduced_system(c, *d, opts.exec);
            ConditionOptions co;
            co.exec = opts.exec;
            co.require_spd = false;
            (variant == 0 ? row.cond_stabilized : row.cond_unstabilized) = estimate_condition(sys.matrix, co);
        }
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << "offset,cond_stabilized,cond_unstabilized\n";
    for (const auto& r : rows)
        os << format_number(r.offset) << ',' << format_number(r.cond_stabilized) << ','
           << format_number(r.cond_unstabilized) << '\n';
}

} // namespace cutfrac
