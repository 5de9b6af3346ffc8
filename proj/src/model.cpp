#include "cutfrac/model.hpp"

#include <algorithm>
#include <cmath>

#include "cutfrac/error.hpp"

namespace cutfrac {

ResolvedParameters resolve(const ModelSpec& model, const FractureGraph& graph, int subdomain_count, double h) {
    if (static_cast<int>(model.a.size()) != subdomain_count)
        throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(subdomain_count) +
                                                 " subdomain permeabilities, got " + std::to_string(model.a.size()));
    for (double a : model.a)
        if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorKind::InvalidInput, "permeabilities must be positive");
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidInput, "mesh size must be positive");

    const double a_min = *std::min_element(model.a.begin(), model.a.end());
    double ag_max = 0.0;
    for (const auto& e : graph.edges()) ag_max = std::max(ag_max, e.a_gamma);

    ResolvedParameters p;
    p.h = h;
    p.beta = model.beta.value_or(10.0 * a_min);
    p.gamma = model.gamma.value_or(0.1);
    p.beta_gamma = model.beta_gamma.value_or(ag_max > 0.0 ? 10.0 * ag_max : 10.0 * a_min);
    p.gamma_point = model.gamma_point.value_or(p.gamma * h);
    if (!(p.beta > 0.0)) throw Error(ErrorKind::InvalidInput, "beta must be positive");
    if (!(p.gamma >= 0.0)) throw Error(ErrorKind::InvalidInput, "gamma must be non-negative");
    if (!(p.beta_gamma > 0.0)) throw Error(ErrorKind::InvalidInput, "beta_gamma must be positive");
    if (!(p.gamma_point >= 0.0)) throw Error(ErrorKind::InvalidInput, "gamma_point must be non-negative");
    return p;
}

std::array<double, 2> interface_weights(const ModelSpec& model, int s1, int s2) {
    if (s1 == s2) return {0.5, 0.5};
    const double a1 = model.a.at(static_cast<std::size_t>(s1));
    const double a2 = model.a.at(static_cast<std::size_t>(s2));
    return {a2 / (a1 + a2), a1 / (a1 + a2)};
}

} // namespace cutfrac
