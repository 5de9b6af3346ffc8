#include "cutfrac/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cutfrac/analysis.hpp"
#include "cutfrac/problem_file.hpp"

namespace cutfrac {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
    std::string command;
    std::string example;
    std::string problem_path;
    std::optional<int> n, n0, levels;
    std::optional<double> beta, gamma, beta_gamma;
    std::string a_gamma;
    std::optional<std::string> offsets;
    std::string out = "results";
    bool deterministic = false;
    bool mesh_dump = false;
    bool cond = false;
    int samples = 101;
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw Error(ErrorKind::InvalidInput, what + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    return out;
}

// A case plus the parameters that apply to it, CLI flags taking precedence over the file.
struct Setup {
    ManufacturedCase c;
    ProblemParameters file;
};

Setup load_setup(const Options& o) {
    if (!o.example.empty() && !o.problem_path.empty())
        throw Error(ErrorKind::InvalidInput, "--example and --problem are mutually exclusive");
    std::optional<std::vector<double>> ag;
    if (!o.a_gamma.empty()) ag = parse_list(o.a_gamma, "--a-gamma");
    if (!o.problem_path.empty()) {
        Problem p = load_problem(o.problem_path);
        if (ag) {
            if (p.problem.name == "example3") {
                p.problem = named_case("example3", ag);
            } else {
                p.problem.graph = p.problem.graph.with_permeabilities(*ag);
            }
        }
        return {std::move(p.problem), p.parameters};
    }
    if (o.example.empty()) throw Error(ErrorKind::InvalidInput, "one of --example or --problem is required");
    return {named_case("example" + o.example, ag), {}};
}

RunOptions run_options(const Options& o, const ProblemParameters& file) {
    RunOptions r;
    r.n = o.n.value_or(file.n.value_or(32));
    r.beta = o.beta ? o.beta : file.beta;
    r.gamma = o.gamma ? o.gamma : file.gamma;
    r.beta_gamma = o.beta_gamma ? o.beta_gamma : file.beta_gamma;
    r.exec = o.deterministic ? Execution::Serial : Execution::Parallel;
    r.solver.exec = r.exec;
    r.estimate_condition = o.cond;
    return r;
}

std::string timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
    return buf;
}

fs::path output_dir(const Options& o, const std::string& case_name) {
    fs::path dir = fs::path(o.out) / case_name / (o.deterministic ? "fixed" : timestamp());
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error(ErrorKind::InvalidInput, "cannot write '" + p.string() + "'");
    return os;
}

void write_solution_csv(std::ostream& os, const ManufacturedCase& c, const SolutionField& field, int samples) {
    os << "x,y,side,u\n";
    const Rectangle& d = c.domain;
    const double tol = c.subdomains.interface_tolerance();
    for (int j = 0; j < samples; ++j) {
        for (int i = 0; i < samples; ++i) {
            const Point p(d.x0 + d.width() * i / (samples - 1), d.y0 + d.height() * j / (samples - 1));
            if (c.graph.edge_count() > 0 && c.subdomains.distance_to_fractures(p) <= tol) continue;
            const int k = c.subdomains.locate(p);
            if (k < 0) continue;
            os << format_number(p.x()) << ',' << format_number(p.y()) << ',' << k << ','
               << format_number(field.value(p, k)) << '\n';
        }
    }
}

json parameters_json(const ResolvedParameters& p) {
    return {{"h", p.h}, {"beta", p.beta}, {"gamma", p.gamma}, {"beta_gamma", p.beta_gamma}, {"gamma_point", p.gamma_point}};
}

// One solve into `dir`; returns the summary.
json solve_into(const Options& o, const ManufacturedCase& c, const RunOptions& ro, const fs::path& dir,
                Eigen::VectorXd* coefficients = nullptr) {
    const Solution sol = solve_case(c, ro);
    const SolutionField field = sol.field(c);
    json s{{"case", c.name},
           {"n", ro.n},
           {"ndof", sol.disc->space.ndof()},
           {"free_dofs", sol.system.free_dofs.size()},
           {"subdomains", c.subdomains.count()},
           {"parameters", parameters_json(sol.disc->params)},
           {"solver",
            {{"direct", sol.report.direct},
             {"iterations", sol.report.iterations},
             {"residual", sol.report.residual_norm}}}};
    if (o.cond) s["cond_estimate"] = sol.report.cond_estimate;
    if (c.exact) {
        const ErrorNorms e = compute_errors(field, c, sol.disc->model, sol.disc->params);
        s["errors"] = {{"err_L2_bulk", e.l2_bulk}, {"err_L2_gamma", e.l2_gamma}, {"err_energy", e.energy}};
    }
    {
        auto os = open_out(dir / "solution.csv");
        write_solution_csv(os, c, field, o.samples);
    }
    if (o.mesh_dump) {
        auto os = open_out(dir / "mesh.txt");
        write_mesh(os, sol.disc->mesh);
    }
    {
        auto os = open_out(dir / "summary.json");
        os << s.dump(2) << '\n';
    }
    if (coefficients) *coefficients = sol.coefficients;
    return s;
}

int cmd_run(const Options& o, std::ostream& out) {
    const Setup s = load_setup(o);
    const RunOptions ro = run_options(o, s.file);
    const fs::path dir = output_dir(o, s.c.name);
    const json summary = solve_into(o, s.c, ro, dir);
    out << summary.dump() << '\n' << "wrote " << dir.string() << '\n';
    return 0;
}

void print_rates(std::ostream& out, const ConvergenceReport& r) {
    out << "rates (least squares over " << r.levels.size() << " levels): L2 bulk " << format_number(r.l2_bulk.slope)
        << ", L2 fracture " << format_number(r.l2_gamma.slope) << ", energy " << format_number(r.energy.slope) << '\n';
}

int converge(const Options& o, const ManufacturedCase& c, const ProblemParameters& file, std::ostream& out) {
    if (!c.exact) throw Error(ErrorKind::MissingExact, "case '" + c.name + "' has no exact solution");
    const RunOptions ro = run_options(o, file);
    const int levels = o.levels.value_or(file.levels.value_or(5));
    const int n0 = o.n0.value_or(file.n0.value_or(8));
    const ConvergenceReport r = run_convergence(c, levels, n0, ro);
    const fs::path dir = output_dir(o, c.name);
    {
        auto os = open_out(dir / "convergence.csv");
        write_convergence_csv(os, r);
    }
    {
        auto os = open_out(dir / "summary.json");
        os << to_json(r).dump(2) << '\n';
    }
    {
        auto os = open_out(dir / "plot.gp");
        write_gnuplot(os, r, "convergence.csv");
    }
    write_convergence_csv(out, r);
    print_rates(out, r);
    out << "wrote " << dir.string() << '\n';
    return 0;
}

int cmd_converge(const Options& o, std::ostream& out) {
    const Setup s = load_setup(o);
    return converge(o, s.c, s.file, out);
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const std::vector<double> offsets = o.offsets ? parse_list(*o.offsets, "--offsets") : default_sweep_offsets();
    if (offsets.empty()) throw Error(ErrorKind::InvalidInput, "--offsets: the offset list is empty");
    RunOptions base;
    base.exec = o.deterministic ? Execution::Serial : Execution::Parallel;
    base.beta = o.beta;
    const auto rows = cut_robustness_sweep(offsets, o.n.value_or(32), o.gamma.value_or(0.1), base);
    const fs::path dir = output_dir(o, "sweep");
    {
        auto os = open_out(dir / "sweep.csv");
        write_sweep_csv(os, rows);
    }
    write_sweep_csv(out, rows);
    out << "wrote " << dir.string() << '\n';
    return 0;
}

int cmd_example(const Options& o, std::ostream& out) {
    if (o.example == "1" || o.example == "2") return converge(o, named_case("example" + o.example), {}, out);
    if (o.example != "3") throw Error(ErrorKind::InvalidInput, "example must be 1, 2 or 3");
    const auto configs = example3_configurations();
    const fs::path root = output_dir(o, "example3");
    std::vector<Eigen::VectorXd> sols;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const ManufacturedCase c = case_example3(configs[i]);
        RunOptions ro = run_options(o, {});
        const fs::path dir = root / ("config" + std::to_string(i));
        fs::create_directories(dir);
        Eigen::VectorXd u;
        const json s = solve_into(o, c, ro, dir, &u);
        sols.push_back(u);
        out << "a_gamma = [" << configs[i][0];
        for (std::size_t j = 1; j < 5; ++j) out << ", " << configs[i][j];
        out << "]: ndof " << s["ndof"].get<int>() << ", residual " << s["solver"]["residual"].get<double>() << '\n';
    }
    out << "max |u(all 0) - u(all 100)| = " << format_number((sols.front() - sols.back()).lpNorm<Eigen::Infinity>())
        << '\n'
        << "wrote " << root.string() << '\n';
    return 0;
}

void report(std::ostream& err, const json& j) { err << j.dump() << std::endl; }

void add_case_flags(CLI::App* app, Options& o, bool with_example = true) {
    if (with_example) app->add_option("--example", o.example, "Named case: 1, 2 or 3")->check(CLI::IsMember({"1", "2", "3"}));
    app->add_option("--problem", o.problem_path, "Problem file (JSON)");
    app->add_option("--a-gamma", o.a_gamma, "Comma-separated fracture permeabilities, one per edge");
}

void add_common_flags(CLI::App* app, Options& o) {
    app->add_option("--n", o.n, "Mesh cells per side")->check(CLI::PositiveNumber);
    app->add_option("--beta", o.beta, "Nitsche penalty");
    app->add_option("--gamma", o.gamma, "Ghost penalty");
    app->add_option("--beta-gamma", o.beta_gamma, "Junction penalty");
    app->add_option("--out", o.out, "Output root directory");
    app->add_flag("--deterministic", o.deterministic, "Serial kernels and a fixed output directory name");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Cut finite element solver for flow in fractured porous media", "cutfrac"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Assemble and solve once");
    add_case_flags(run, o);
    add_common_flags(run, o);
    run->add_flag("--mesh-dump", o.mesh_dump, "Also write the mesh");
    run->add_flag("--cond", o.cond, "Estimate the condition number");
    run->add_option("--samples", o.samples, "Solution samples per axis")->check(CLI::Range(2, 10000));

    auto* conv = app.add_subcommand("converge", "Convergence study on refined meshes");
    add_case_flags(conv, o);
    add_common_flags(conv, o);
    conv->add_option("--n0", o.n0, "Coarsest mesh")->check(CLI::PositiveNumber);
    conv->add_option("--levels", o.levels, "Number of meshes")->check(CLI::PositiveNumber);
    conv->add_flag("--cond", o.cond, "Estimate condition numbers");

    auto* sweep = app.add_subcommand("sweep", "Condition numbers as a fracture approaches a mesh line");
    add_common_flags(sweep, o);
    sweep->add_option("--offsets", o.offsets, "Comma-separated offsets in mesh spacings");

    auto* example = app.add_subcommand("example", "Reproduce a named example");
    example->add_option("number", o.example, "1, 2 or 3")->required();
    add_common_flags(example, o);
    example->add_option("--n0", o.n0, "Coarsest mesh")->check(CLI::PositiveNumber);
    example->add_option("--levels", o.levels, "Number of meshes")->check(CLI::PositiveNumber);
    example->add_option("--samples", o.samples, "Solution samples per axis")->check(CLI::Range(2, 10000));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        report(err, {{"error", "UsageError"}, {"message", e.what()}});
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(o, out);
        if (conv->parsed()) return cmd_converge(o, out);
        if (sweep->parsed()) return cmd_sweep(o, out);
        return cmd_example(o, out);
    } catch (const ParseError& e) {
        report(err, {{"error", "ParseError"}, {"message", e.what()}, {"byte", e.byte()}});
        return 2;
    } catch (const Error& e) {
        report(err, {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}});
        return exit_code_for(e.kind());
    } catch (const fs::filesystem_error& e) {
        report(err, {{"error", "IOError"}, {"message", e.what()}});
        return 1;
    } catch (const std::exception& e) {
        report(err, {{"error", "InternalError"}, {"message", e.what()}});
        return 1;
    }
}

} // namespace cutfrac
