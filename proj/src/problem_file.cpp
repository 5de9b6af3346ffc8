#include "cutfrac/problem_file.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace cutfrac {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::InvalidInput, where + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) schema_error(where, "unknown key '" + key + "'");
    }
}

const json& require_object(const json& j, const std::string& where) {
    if (!j.is_object()) schema_error(where, "expected an object");
    return j;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) schema_error(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) schema_error(where, "expected a finite number");
    return v;
}

int integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) schema_error(where, "expected an integer");
    return j.get<int>();
}

Point point(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) schema_error(where, "expected [x, y]");
    return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array()) schema_error(where, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

ProblemParameters parse_parameters(const json& j) {
    require_object(j, "parameters");
    reject_unknown(j, "parameters", {"beta", "gamma", "beta_gamma", "n", "levels", "n0", "seed"});
    ProblemParameters p;
    if (j.contains("beta")) p.beta = number(j["beta"], "parameters.beta");
    if (j.contains("gamma")) p.gamma = number(j["gamma"], "parameters.gamma");
    if (j.contains("beta_gamma")) p.beta_gamma = number(j["beta_gamma"], "parameters.beta_gamma");
    if (j.contains("n")) p.n = integer(j["n"], "parameters.n");
    if (j.contains("levels")) p.levels = integer(j["levels"], "parameters.levels");
    if (j.contains("n0")) p.n0 = integer(j["n0"], "parameters.n0");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) schema_error("parameters.seed", "expected a non-negative integer");
        p.seed = j["seed"].get<std::uint64_t>();
    }
    return p;
}

std::optional<Side> side_from_name(const std::string& s) {
    if (s == "left") return Side::Left;
    if (s == "right") return Side::Right;
    if (s == "bottom") return Side::Bottom;
    if (s == "top") return Side::Top;
    return std::nullopt;
}

ManufacturedCase parse_explicit(const json& root) {
    for (const char* key : {"domain", "nodes", "edges", "rhs"})
        if (!root.contains(key)) schema_error("problem", std::string("missing key '") + key + "'");

    ManufacturedCase c;
    c.name = "problem";
    const auto dom = number_list(root["domain"], "domain");
    if (dom.size() != 4) schema_error("domain", "expected [x0, y0, x1, y1]");
    if (!(dom[2] > dom[0]) || !(dom[3] > dom[1])) schema_error("domain", "expected x1 > x0 and y1 > y0");
    c.domain = {dom[0], dom[1], dom[2], dom[3]};

    const json& jn = root["nodes"];
    if (!jn.is_array()) schema_error("nodes", "expected an array of points");
    std::vector<Point> nodes;
    for (std::size_t i = 0; i < jn.size(); ++i) nodes.push_back(point(jn[i], "nodes[" + std::to_string(i) + "]"));

    const json& je = root["edges"];
    if (!je.is_array() || je.empty()) schema_error("edges", "expected a non-empty array");
    std::vector<RawEdge> edges;
    for (std::size_t i = 0; i < je.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        require_object(je[i], where);
        reject_unknown(je[i], where, {"points", "a_gamma", "endpoints"});
        if (!je[i].contains("points")) schema_error(where, "missing key 'points'");
        RawEdge e;
        const json& pts = je[i]["points"];
        if (!pts.is_array()) schema_error(where + ".points", "expected an array of points");
        for (std::size_t q = 0; q < pts.size(); ++q)
            e.points.push_back(point(pts[q], where + ".points[" + std::to_string(q) + "]"));
        if (je[i].contains("a_gamma")) e.a_gamma = number(je[i]["a_gamma"], where + ".a_gamma");
        if (je[i].contains("endpoints")) {
            const json& ep = je[i]["endpoints"];
            if (!ep.is_array() || ep.size() != 2) schema_error(where + ".endpoints", "expected [i, j]");
            e.endpoints = std::array<int, 2>{integer(ep[0], where + ".endpoints[0]"),
                                             integer(ep[1], where + ".endpoints[1]")};
        }
        edges.push_back(std::move(e));
    }
    c.graph = build_fracture_graph(std::move(nodes), std::move(edges), c.domain.diameter());
    c.subdomains = build_subdomain_map(c.domain, c.graph);

    const int nsub = c.subdomains.count();
    if (root.contains("permeability")) {
        const json& jp = root["permeability"];
        if (jp.is_number()) {
            c.model.a.assign(static_cast<std::size_t>(nsub), number(jp, "permeability"));
        } else {
            c.model.a = number_list(jp, "permeability");
            if (static_cast<int>(c.model.a.size()) != nsub)
                schema_error("permeability", "expected " + std::to_string(nsub) + " values, one per subdomain");
        }
    } else {
        c.model.a.assign(static_cast<std::size_t>(nsub), 1.0);
    }

    const json& jr = root["rhs"];
    if (!jr.is_object()) schema_error("rhs", "expected {\"f\": .., \"f_gamma\": ..} or a case name");
    reject_unknown(jr, "rhs", {"f", "f_gamma"});
    const double f = jr.contains("f") ? number(jr["f"], "rhs.f") : 0.0;
    const double fg = jr.contains("f_gamma") ? number(jr["f_gamma"], "rhs.f_gamma") : 0.0;
    c.model.f = [f](const Point&, int) { return f; };
    c.model.f_gamma = [fg](const Point&, int) { return fg; };

    for (auto& bc : c.model.bc) bc = {BcType::Dirichlet, [](const Point&, int) { return 0.0; }};
    if (root.contains("bc")) {
        const json& jb = require_object(root["bc"], "bc");
        for (const auto& [name, spec] : jb.items()) {
            const auto side = side_from_name(name);
            const std::string where = "bc." + name;
            if (!side) schema_error("bc", "unknown side '" + name + "'");
            require_object(spec, where);
            reject_unknown(spec, where, {"type", "value"});
            if (!spec.contains("type") || !spec["type"].is_string()) schema_error(where, "missing 'type'");
            const std::string type = spec["type"].get<std::string>();
            auto& bc = c.model.bc[static_cast<std::size_t>(*side)];
            if (type == "neumann") {
                if (spec.contains("value")) schema_error(where, "a neumann side takes no value");
                bc = {BcType::Neumann, {}};
            } else if (type == "dirichlet") {
                double g = 0.0;
                if (spec.contains("value")) {
                    if (spec["value"].is_string() && spec["value"].get<std::string>() == "exact")
                        throw Error(ErrorKind::MissingExact, where + ": explicit problems have no exact solution");
                    g = number(spec["value"], where + ".value");
                }
                bc = {BcType::Dirichlet, [g](const Point&, int) { return g; }};
            } else {
                schema_error(where, "type must be 'dirichlet' or 'neumann'");
            }
        }
    }
    return c;
}

} // namespace

ManufacturedCase named_case(const std::string& name, const std::optional<std::vector<double>>& a_gamma) {
    if (a_gamma && name != "example3")
        throw Error(ErrorKind::InvalidInput, "fracture permeabilities can only be set for example3");
    if (name == "example1") return case_example1();
    if (name == "example2") return case_example2();
    if (name == "example3") {
        std::array<double, 5> ag{0, 0, 0, 0, 0};
        if (a_gamma) {
            if (a_gamma->size() != ag.size())
                throw Error(ErrorKind::InvalidInput, "example3 takes 5 fracture permeabilities");
            std::copy(a_gamma->begin(), a_gamma->end(), ag.begin());
        }
        return case_example3(ag);
    }
    throw Error(ErrorKind::InvalidInput, "unknown case '" + name + "'");
}

Problem parse_problem(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    require_object(root, "problem");
    Problem p;
    if (root.contains("rhs") && root["rhs"].is_string()) {
        reject_unknown(root, "problem", {"rhs", "a_gamma", "parameters"});
        std::optional<std::vector<double>> ag;
        if (root.contains("a_gamma")) ag = number_list(root["a_gamma"], "a_gamma");
        p.problem = named_case(root["rhs"].get<std::string>(), ag);
    } else {
        reject_unknown(root, "problem", {"domain", "nodes", "edges", "permeability", "rhs", "bc", "parameters"});
        p.problem = parse_explicit(root);
    }
    if (root.contains("parameters")) p.parameters = parse_parameters(root["parameters"]);
    return p;
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open problem file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

} // namespace cutfrac
