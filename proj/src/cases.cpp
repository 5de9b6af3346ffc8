#include "cutfrac/cases.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cutfrac/error.hpp"

namespace cutfrac {

namespace {

constexpr int kArcSegments = 4096;
constexpr int kBezierSegments = 512;

std::vector<Point> with_ends(std::vector<Point> pts, const Point& a, const Point& b) {
    pts.front() = a;
    pts.back() = b;
    return pts;
}

// Subdomain -> branch index via a point inside each subdomain.
std::vector<int> branches(const SubdomainMap& map, const std::function<int(const Point&)>& region) {
    std::vector<int> out;
    for (int k = 0; k < map.count(); ++k) out.push_back(region(map.interior_point(k)));
    return out;
}

BoundaryCondition dirichlet(std::function<double(const Point&, int)> g) { return {BcType::Dirichlet, std::move(g)}; }
BoundaryCondition dirichlet(std::function<double(const Point&)> g) {
    return {BcType::Dirichlet, [g = std::move(g)](const Point& p, int) { return g(p); }};
}
BoundaryCondition neumann() { return {BcType::Neumann, {}}; }

std::string point_str(const Point& p) {
    std::ostringstream os;
    os.precision(10);
    os << '(' << p.x() << ", " << p.y() << ')';
    return os.str();
}

} // namespace

std::vector<Point> ManufacturedCase::junctions() const {
    std::vector<Point> out;
    for (int i = 0; i < graph.node_count(); ++i)
        if (graph.incidences(i).size() >= 2) out.push_back(graph.nodes()[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<Point> arc_points(const Point& center, double radius, double theta0, double theta1, int segments) {
    std::vector<Point> pts;
    for (int i = 0; i <= segments; ++i) {
        const double t = theta0 + (theta1 - theta0) * i / segments;
        pts.emplace_back(center.x() + radius * std::cos(t), center.y() + radius * std::sin(t));
    }
    return pts;
}

std::vector<Point> bezier_points(std::span<const Point> control, int segments) {
    std::vector<Point> pts;
    std::vector<Point> work(control.size());
    for (int i = 0; i <= segments; ++i) {
        const double t = static_cast<double>(i) / segments;
        std::copy(control.begin(), control.end(), work.begin());
        for (std::size_t level = control.size() - 1; level > 0; --level)
            for (std::size_t k = 0; k < level; ++k) work[k] = (1.0 - t) * work[k] + t * work[k + 1];
        pts.push_back(work[0]);
    }
    pts.front() = control.front();
    pts.back() = control.back();
    return pts;
}

ManufacturedCase case_example1(bool extra_fracture) {
    constexpr double r0 = 0.75, a1 = 1.0, a2 = 1000.0;
    ManufacturedCase c;
    c.name = extra_fracture ? "example1-junction" : "example1";
    c.domain = {0.0, 0.0, 1.0, 1.0};
    const Point p0(r0, 0.0), p1(0.0, r0);
    std::vector<Point> nodes{p0, p1};
    std::vector<RawEdge> edges;
    if (!extra_fracture) {
        edges.push_back({with_ends(arc_points({0, 0}, r0, 0.0, std::numbers::pi / 2, kArcSegments), p0, p1), 0.0, {{0, 1}}});
    } else {
        const Point j(r0 / std::numbers::sqrt2, r0 / std::numbers::sqrt2);
        const Point end(1.0, 0.83);
        nodes.push_back(j);
        nodes.push_back(end);
        edges.push_back({with_ends(arc_points({0, 0}, r0, 0.0, std::numbers::pi / 4, kArcSegments / 2), p0, j), 0.0, {{0, 2}}});
        edges.push_back({with_ends(arc_points({0, 0}, r0, std::numbers::pi / 4, std::numbers::pi / 2, kArcSegments / 2), j, p1),
                         0.0, {{2, 1}}});
        const std::array<Point, 3> ctrl{j, Point(0.8, 0.62), end};
        edges.push_back({bezier_points(ctrl, kBezierSegments), 0.0, {{2, 3}}});
    }
    c.graph = build_fracture_graph(nodes, edges, c.domain.diameter());
    c.subdomains = build_subdomain_map(c.domain, c.graph);

    auto region = [](const Point& p) { return p.norm() < r0 ? 0 : 1; };
    auto u_region = [](const Point& p, int b) {
        const double r2 = p.squaredNorm();
        return b == 0 ? r2 / a1 : r2 / a2 - r0 * r0 / a2 + r0 * r0 / a1;
    };
    const auto br = branches(c.subdomains, region);
    for (int b : br) c.model.a.push_back(b == 0 ? a1 : a2);
    c.model.f = [](const Point&, int) { return -4.0; };
    c.model.f_gamma = [](const Point&, int) { return 0.0; };
    const auto g = [=](const Point& p, int k) { return u_region(p, br[static_cast<std::size_t>(k)]); };
    c.model.bc[static_cast<std::size_t>(Side::Left)] = neumann();
    c.model.bc[static_cast<std::size_t>(Side::Bottom)] = neumann();
    c.model.bc[static_cast<std::size_t>(Side::Right)] = dirichlet(g);
    c.model.bc[static_cast<std::size_t>(Side::Top)] = dirichlet(g);
    c.exact = ExactSolution{
        [=](const Point& p, int k) { return u_region(p, br[static_cast<std::size_t>(k)]); },
        [=](const Point& p, int k) -> Point { return 2.0 * p / (br[static_cast<std::size_t>(k)] == 0 ? a1 : a2); }};
    return c;
}

ManufacturedCase case_example2(double f_gamma, bool extra_fracture) {
    const double e = std::numbers::e;
    const double top = std::exp(1.25);
    ManufacturedCase c;
    c.name = extra_fracture ? "example2-junction" : "example2";
    c.domain = {1.0, 1.0, top, top};
    const double s = std::sqrt(e * e - 1.0);
    const Point p0(s, 1.0), p1(1.0, s);
    const double th0 = std::atan2(1.0, s), th1 = std::atan2(s, 1.0);
    std::vector<Point> nodes{p0, p1};
    std::vector<RawEdge> edges;
    if (!extra_fracture) {
        edges.push_back({with_ends(arc_points({0, 0}, e, th0, th1, kArcSegments), p0, p1), 1.0, {{0, 1}}});
    } else {
        const Point j(e / std::numbers::sqrt2, e / std::numbers::sqrt2);
        const Point end(top, 2.7);
        nodes.push_back(j);
        nodes.push_back(end);
        const double thj = std::numbers::pi / 4;
        edges.push_back({with_ends(arc_points({0, 0}, e, th0, thj, kArcSegments / 2), p0, j), 1.0, {{0, 2}}});
        edges.push_back({with_ends(arc_points({0, 0}, e, thj, th1, kArcSegments / 2), j, p1), 1.0, {{2, 1}}});
        const std::array<Point, 3> ctrl{j, Point(2.7, 2.3), end};
        edges.push_back({bezier_points(ctrl, kBezierSegments), 0.0, {{2, 3}}});
    }
    c.graph = build_fracture_graph(nodes, edges, c.domain.diameter());
    c.subdomains = build_subdomain_map(c.domain, c.graph);

    auto region = [e](const Point& p) { return p.norm() < e ? 0 : 1; };
    auto u_region = [e](const Point& p, int b) {
        const double lr = std::log(p.norm());
        return b == 0 ? lr * (4.0 + e) / 5.0 : (4.0 - 4.0 * e) / 5.0 * (lr - 1.25) + 1.0;
    };
    auto grad_region = [e](const Point& p, int b) -> Point {
        const double coef = b == 0 ? (4.0 + e) / 5.0 : (4.0 - 4.0 * e) / 5.0;
        return coef * p / p.squaredNorm();
    };
    const auto br = branches(c.subdomains, region);
    c.model.a.assign(static_cast<std::size_t>(c.subdomains.count()), 1.0);
    c.model.f = [](const Point&, int) { return 0.0; };
    c.model.f_gamma = [f_gamma, extra_fracture](const Point&, int edge) {
        return extra_fracture && edge == 2 ? 0.0 : f_gamma;
    };
    const auto g = [=](const Point& p, int k) { return u_region(p, br[static_cast<std::size_t>(k)]); };
    for (auto& bc : c.model.bc) bc = dirichlet(g);
    c.exact = ExactSolution{[=](const Point& p, int k) { return u_region(p, br[static_cast<std::size_t>(k)]); },
                            [=](const Point& p, int k) { return grad_region(p, br[static_cast<std::size_t>(k)]); }};
    return c;
}

std::vector<std::array<double, 5>> example3_configurations() {
    return {{0, 0, 0, 0, 0},         {100, 0, 0, 0, 0},       {100, 100, 0, 0, 0},
            {100, 100, 100, 0, 0},   {100, 100, 100, 100, 0}, {100, 100, 100, 100, 100}};
}

ManufacturedCase case_example3(const std::array<double, 5>& a_gamma) {
    ManufacturedCase c;
    c.name = "example3";
    c.domain = {0.0, 0.0, 1.0, 1.0};
    const Point b1(0.375, 0.5), b2(0.625, 0.5);
    const Point left(0.0, 0.6), top(0.3, 1.0), bottom(0.7, 0.0), right(1.0, 0.4);
    const std::vector<Point> nodes{b1, b2, left, top, bottom, right};
    const std::array<Point, 3> g1{left, Point(0.2, 0.62), b1};
    const std::array<Point, 4> g2{b1, Point(0.47, 0.56), Point(0.53, 0.44), b2};
    const std::array<Point, 3> g3{b1, Point(0.42, 0.8), top};
    const std::array<Point, 3> g4{b2, Point(0.55, 0.2), bottom};
    const std::array<Point, 3> g5{b2, Point(0.8, 0.52), right};
    const std::vector<RawEdge> edges{
        {bezier_points(g1, kBezierSegments), a_gamma[0], {{2, 0}}},
        {bezier_points(g2, kBezierSegments), a_gamma[1], {{0, 1}}},
        {bezier_points(g3, kBezierSegments), a_gamma[2], {{0, 3}}},
        {bezier_points(g4, kBezierSegments), a_gamma[3], {{1, 4}}},
        {bezier_points(g5, kBezierSegments), a_gamma[4], {{1, 5}}},
    };
    c.graph = build_fracture_graph(nodes, edges, c.domain.diameter());
    c.subdomains = build_subdomain_map(c.domain, c.graph);
    c.model.a.assign(static_cast<std::size_t>(c.subdomains.count()), 1.0);
    c.model.f = [](const Point&, int) { return 1.0; };
    c.model.f_gamma = [](const Point&, int) { return 0.0; };
    c.model.bc[static_cast<std::size_t>(Side::Left)] = dirichlet([](const Point&) { return 0.0; });
    c.model.bc[static_cast<std::size_t>(Side::Bottom)] = dirichlet([](const Point&) { return 0.0; });
    c.model.bc[static_cast<std::size_t>(Side::Right)] = dirichlet([](const Point&) { return 1.0; });
    c.model.bc[static_cast<std::size_t>(Side::Top)] = dirichlet([](const Point&) { return 1.0; });
    return c;
}

ManufacturedCase case_patch_test() {
    ManufacturedCase c;
    c.name = "patch";
    c.domain = {0.0, 0.0, 1.0, 1.0};
    const double y = 1.0 / std::numbers::sqrt2;
    c.graph = build_fracture_graph({{0.0, y}, {1.0, y}}, {{{{0.0, y}, {1.0, y}}, 0.0, {{0, 1}}}}, c.domain.diameter());
    c.subdomains = build_subdomain_map(c.domain, c.graph);
    auto u = [](const Point& p) { return 0.3 + 1.7 * p.x() - 0.9 * p.y(); };
    c.model.a.assign(static_cast<std::size_t>(c.subdomains.count()), 1.0);
    c.model.f = [](const Point&, int) { return 0.0; };
    c.model.f_gamma = [](const Point&, int) { return 0.0; };
    for (auto& bc : c.model.bc) bc = dirichlet(u);
    c.exact = ExactSolution{[=](const Point& p, int) { return u(p); },
                            [](const Point&, int) { return Point(1.7, -0.9); }};
    return c;
}

ManufacturedCase case_straight_fracture(double offset) {
    ManufacturedCase c;
    c.name = "sweep";
    c.domain = {0.0, 0.0, 1.0, 1.0};
    const double y = 0.5 + offset;
    c.graph = build_fracture_graph({{0.0, y}, {1.0, y}}, {{{{0.0, y}, {1.0, y}}, 0.0, {{0, 1}}}}, c.domain.diameter());
    c.subdomains = build_subdomain_map(c.domain, c.graph);
    c.model.a.assign(static_cast<std::size_t>(c.subdomains.count()), 1.0);
    c.model.f = [](const Point&, int) { return 1.0; };
    c.model.f_gamma = [](const Point&, int) { return 0.0; };
    for (auto& bc : c.model.bc) bc = dirichlet([](const Point&) { return 0.0; });
    return c;
}

OracleReport measure_residuals(const ManufacturedCase& c, int samples, std::uint64_t seed) {
    if (!c.exact) throw Error(ErrorKind::MissingExact, "case '" + c.name + "' has no exact solution");
    const auto& ex = *c.exact;
    const auto& map = c.subdomains;
    const double step = 1e-6;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(c.domain.x0, c.domain.x1), uy(c.domain.y0, c.domain.y1);
    OracleReport rep;
    double worst = -1.0;
    auto note = [&](double value, double& slot, const char* what, const Point& p) {
        slot = std::max(slot, value);
        if (value > worst) {
            worst = value;
            rep.worst = std::string(what) + " at " + point_str(p);
        }
    };
    const Point ex_(step, 0.0), ey_(0.0, step);

    for (int s = 0; s < samples; ++s) {
        Point p;
        do {
            p = Point(ux(rng), uy(rng));
        } while (map.distance_to_fractures(p) < 1e-4);
        const int k = map.locate(p);
        const Point grad = ex.gradient(p, k);
        const Point fd((ex.value(p + ex_, k) - ex.value(p - ex_, k)) / (2 * step),
                       (ex.value(p + ey_, k) - ex.value(p - ey_, k)) / (2 * step));
        note((grad - fd).norm(), rep.bulk, "gradient consistency", p);
        const double div = (ex.gradient(p + ex_, k).x() - ex.gradient(p - ex_, k).x()) / (2 * step) +
                           (ex.gradient(p + ey_, k).y() - ex.gradient(p - ey_, k).y()) / (2 * step);
        const double a = c.model.a[static_cast<std::size_t>(k)];
        note(std::abs(-a * div - c.model.f(p, k)), rep.bulk, "bulk equation", p);
    }

    std::vector<double> lengths;
    for (const auto& e : c.graph.edges()) lengths.push_back(e.length());
    if (lengths.empty()) return rep;
    std::discrete_distribution<int> pick(lengths.begin(), lengths.end());
    for (int s = 0; s < samples; ++s) {
        const int j = pick(rng);
        const Edge& edge = c.graph.edge(j);
        const auto& pl = edge.polyline;
        Point p, t, curvature = Point::Zero();
        if (pl.size() < 3) {
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            const double lam = u01(rng);
            p = (1.0 - lam) * pl.front() + lam * pl.back();
            t = (pl.back() - pl.front()).normalized();
        } else {
            std::uniform_int_distribution<std::size_t> idx(1, pl.size() - 2);
            const std::size_t i = idx(rng);
            const Point a = pl[i - 1], b = pl[i + 1];
            p = pl[i];
            t = (b - a).normalized();
            // curvature vector of the circle through three consecutive vertices
            const Point u = a - p, w = b - p;
            const double den = 2.0 * cross(u, w);
            if (std::abs(den) > 0.0) {
                const Point center = p + Point(w.y() * u.squaredNorm() - u.y() * w.squaredNorm(),
                                               u.x() * w.squaredNorm() - w.x() * u.squaredNorm()) / den;
                const Point toward = center - p;
                curvature = toward / toward.squaredNorm();
            }
        }
        const auto lr = map.edge_sides(j);
        const int s1 = std::min(lr[0], lr[1]), s2 = std::max(lr[0], lr[1]);
        const Point n = s1 == lr[0] ? right_normal(t) : left_normal(t);
        note(std::abs(ex.value(p, s1) - ex.value(p, s2)), rep.trace_jump, "trace continuity", p);
        const double a1 = c.model.a[static_cast<std::size_t>(s1)], a2 = c.model.a[static_cast<std::size_t>(s2)];
        const double flux_jump = n.dot(a1 * ex.gradient(p, s1) - a2 * ex.gradient(p, s2));
        const Point Ht = (ex.gradient(p + step * t, s1) - ex.gradient(p - step * t, s1)) / (2 * step);
        const double surface_laplacian = t.dot(Ht) + curvature.dot(ex.gradient(p, s1));
        const double fg = c.model.f_gamma ? c.model.f_gamma(p, j) : 0.0;
        note(std::abs(fg - flux_jump + edge.a_gamma * surface_laplacian), rep.interface_balance, "interface balance", p);
    }
    return rep;
}

OracleReport residual_oracle(const ManufacturedCase& c, int samples, std::uint64_t seed) {
    OracleReport rep = measure_residuals(c, samples, seed);
    if (!rep.admitted()) {
        std::ostringstream os;
        os << "case '" << c.name << "' fails the strong-form check: " << rep.worst << " (bulk " << rep.bulk
           << ", trace " << rep.trace_jump << ", interface " << rep.interface_balance << ")";
        throw Error(ErrorKind::OracleFailed, os.str());
    }
    return rep;
}

} // namespace cutfrac
