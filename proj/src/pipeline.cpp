#include "cutfrac/pipeline.hpp"

namespace cutfrac {

std::unique_ptr<Discretized> discretize(const ManufacturedCase& c, const RunOptions& opts) {
    auto d = std::make_unique<Discretized>();
    const auto snaps = c.junctions();
    d->mesh = build_structured_mesh(c.domain, opts.n, snaps);
    d->topo = compute_cut_topology(d->mesh, c.graph, c.subdomains);
    d->space = build_dof_space(d->mesh, d->topo);
    d->model = c.model;
    if (opts.beta) d->model.beta = opts.beta;
    if (opts.gamma) d->model.gamma = opts.gamma;
    if (opts.beta_gamma) d->model.beta_gamma = opts.beta_gamma;
    if (opts.gamma_point) d->model.gamma_point = opts.gamma_point;
    d->params = resolve(d->model, c.graph, c.subdomains.count(), d->mesh.h);
    return d;
}

ReducedSystem build_reduced_system(const ManufacturedCase& c, const Discretized& d, Execution exec) {
    LinearSystem sys = assemble_system(d.view(c), exec);
    sys = apply_boundary_conditions(std::move(sys), d.model, d.mesh, d.space);
    return reduce(sys);
}

Solution solve_case(const ManufacturedCase& c, const RunOptions& opts) {
    Solution s;
    s.disc = discretize(c, opts);
    s.system = build_reduced_system(c, *s.disc, opts.exec);
    SolverOptions so = opts.solver;
    so.exec = opts.exec;
    s.report = solve(s.system.matrix, s.system.rhs, so);
    s.coefficients = s.system.expand(s.report.coefficients);
    if (opts.estimate_condition) {
        ConditionOptions co;
        co.exec = opts.exec;
        s.report.cond_estimate = estimate_condition(s.system.matrix, co);
    }
    return s;
}

} // namespace cutfrac
