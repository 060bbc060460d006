#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "complex.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "quadrature.hpp"

namespace wirt {

struct Circle {
    Complex center{};
    double radius = 1.0;
    int orientation = +1;  // +1 counter-clockwise
};

/// Closed polygon; the edge from the last vertex back to the first is implied.
struct Polygon {
    std::vector<Complex> vertices;
};

/// One period of a closed parametrised curve sampled at equispaced parameter
/// values t_k = 2 pi k / N, each with the curve point and its derivative d(point)/dt.
struct Parametric {
    struct Node {
        Complex point;
        Complex derivative;
    };
    std::vector<Node> nodes;
};

using ContourSpec = std::variant<Circle, Polygon, Parametric>;

struct ContourNode {
    Complex point;
    Complex dz;  // quadrature weight times dz/dt
};

inline constexpr std::size_t default_circle_nodes = 256;
inline constexpr std::size_t default_edge_nodes = 32;

inline void validate(const ContourSpec& c) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Circle>) {
                if (!(s.radius > 0.0) || !std::isfinite(s.radius) || !is_finite(s.center))
                    throw InvalidSpecError("circle radius must be positive and finite");
                if (s.orientation != 1 && s.orientation != -1)
                    throw InvalidSpecError("circle orientation must be +1 or -1");
            } else if constexpr (std::is_same_v<T, Polygon>) {
                if (s.vertices.size() < 3) throw InvalidSpecError("polygon needs at least 3 vertices");
                for (std::size_t k = 0; k < s.vertices.size(); ++k) {
                    if (!is_finite(s.vertices[k])) throw InvalidSpecError("polygon vertex is not finite");
                    if (s.vertices[k] == s.vertices[(k + 1) % s.vertices.size()])
                        throw InvalidSpecError("polygon has a zero-length edge at vertex " + std::to_string(k));
                }
            } else {
                if (s.nodes.size() < 8) throw InvalidSpecError("parametric contour needs at least 8 nodes");
                for (const auto& n : s.nodes)
                    if (!is_finite(n.point) || !is_finite(n.derivative))
                        throw InvalidSpecError("parametric node is not finite");
            }
        },
        c);
}

/// Quadrature nodes whose weights sum to the closed integral of dz.
/// Circles: periodic trapezoid with n equispaced nodes starting at angle 0.
/// Polygons: n Gauss-Legendre nodes per edge. Parametric: the given nodes
/// (n is ignored). A clockwise circle reuses the counter-clockwise nodes with
/// negated weights, so reversing orientation negates every integral exactly.
inline std::vector<ContourNode> sample_contour(const ContourSpec& c, std::size_t n) {
    validate(c);
    std::vector<ContourNode> out;
    if (const auto* circle = std::get_if<Circle>(&c)) {
        if (n < 4) throw InvalidSpecError("circle needs at least 4 nodes");
        out.reserve(n);
        const double h = 2.0 * pi / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double t = h * static_cast<double>(k);
            const Complex e{std::cos(t), std::sin(t)};
            const Complex dz = I * circle->radius * e * h;
            out.push_back({circle->center + circle->radius * e, circle->orientation > 0 ? dz : -dz});
        }
    } else if (const auto* poly = std::get_if<Polygon>(&c)) {
        if (n < 1) throw InvalidSpecError("polygon needs at least 1 node per edge");
        const GaussLegendreRule rule = gauss_legendre(n);
        const std::size_t m = poly->vertices.size();
        out.reserve(n * m);
        for (std::size_t e = 0; e < m; ++e) {
            const Complex a = poly->vertices[e], b = poly->vertices[(e + 1) % m];
            const Complex mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (std::size_t k = 0; k < n; ++k) out.push_back({mid + half * rule.nodes[k], half * rule.weights[k]});
        }
    } else {
        const auto& para = std::get<Parametric>(c);
        const double h = 2.0 * pi / static_cast<double>(para.nodes.size());
        out.reserve(para.nodes.size());
        for (const auto& node : para.nodes) out.push_back({node.point, node.derivative * h});
    }
    return out;
}

inline std::size_t default_nodes(const ContourSpec& c) {
    return std::holds_alternative<Polygon>(c) ? default_edge_nodes : default_circle_nodes;
}

namespace detail {

template <class F>
Complex node_value(F&& f, Complex point) {
    Complex v;
    try {
        v = f(point);
    } catch (const DomainError& e) {
        std::ostringstream os;
        os.precision(17);
        os << "line integral node " << point << " not evaluable: " << e.what();
        if (!e.subexpression().empty()) os << " in " << e.subexpression();
        throw EvaluationError(os.str());
    }
    if (!is_finite(v)) {
        std::ostringstream os;
        os.precision(17);
        os << "non-finite integrand at line integral node " << point;
        throw EvaluationError(os.str());
    }
    return v;
}

}  // namespace detail

/// Closed line integral of a pointwise function. Nodes are never skipped: a
/// node where f throws or returns a non-finite value raises EvaluationError.
template <class F>
Complex integrate_contour(const std::vector<ContourNode>& nodes, F&& f) {
    KahanSum sum;
    for (const ContourNode& node : nodes) sum.add(detail::node_value(f, node.point) * node.dz);
    return sum.value();
}

inline Complex line_integral(const Expr& f, const ContourSpec& c, std::size_t n) {
    return integrate_contour(sample_contour(c, n), [&](Complex z) { return evaluate(f, z); });
}

inline Complex line_integral(const Expr& f, const ContourSpec& c) { return line_integral(f, c, default_nodes(c)); }

/// Distance from z to the curve (exact for circles and polygons, nearest node for parametric).
inline double distance_to_contour(const ContourSpec& c, Complex z) {
    if (const auto* circle = std::get_if<Circle>(&c)) return std::abs(std::abs(z - circle->center) - circle->radius);
    if (const auto* poly = std::get_if<Polygon>(&c)) {
        double best = INFINITY;
        const std::size_t m = poly->vertices.size();
        for (std::size_t e = 0; e < m; ++e) {
            const Complex a = poly->vertices[e], b = poly->vertices[(e + 1) % m];
            const Complex ab = b - a;
            const double t = std::clamp(((z - a) * std::conj(ab)).real() / std::norm(ab), 0.0, 1.0);
            best = std::min(best, std::abs(z - (a + t * ab)));
        }
        return best;
    }
    double best = INFINITY;
    for (const auto& node : std::get<Parametric>(c).nodes) best = std::min(best, std::abs(z - node.point));
    return best;
}

struct WindingResult {
    int winding = 0;
    double residual = 0.0;  // |computed - winding|
};

/// Winding number of c about z via (1/2 pi i) of the closed integral of
/// d(zeta)/(zeta - z). Node counts double until the estimate is within 1e-3
/// of an integer (or a node budget is reached); parametric contours use their
/// own nodes only.
inline WindingResult winding_number(const ContourSpec& c, Complex z) {
    validate(c);
    if (distance_to_contour(c, z) <= guard_radius(z)) {
        std::ostringstream os;
        os.precision(17);
        os << "point " << z << " lies on the contour";
        throw InvalidSpecError(os.str());
    }
    const bool fixed = std::holds_alternative<Parametric>(c);
    std::size_t n = default_nodes(c);
    for (;;) {
        const Complex w = integrate_contour(sample_contour(c, n), [&](Complex p) { return 1.0 / (p - z); }) /
                          (2.0 * pi * I);
        const double nearest = std::round(w.real());
        const double residual = std::abs(w - nearest);
        if (residual < 1e-3 || fixed || n >= (std::size_t{1} << 20))
            return {static_cast<int>(nearest), residual};
        n *= 2;
    }
}

// ---- "circle:cx,cy,r[,cw]" and "poly:x1,y1;x2,y2;..." ----------------------

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t p = s.find(sep, start);
        parts.emplace_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return parts;
}

inline double parse_real(std::string_view text, std::string_view context) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidSpecError("expected a number in " + std::string(context) + ", got '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        throw InvalidSpecError("expected a finite number in " + std::string(context) + ", got '" + s + "'");
    return v;
}

}  // namespace detail

inline ContourSpec parse_contour(std::string_view text) {
    const std::string ctx(text);
    if (text.starts_with("circle:")) {
        const auto f = detail::split(text.substr(7), ',');
        if (f.size() != 3 && f.size() != 4) throw InvalidSpecError("contour syntax is circle:cx,cy,r[,cw]");
        Circle c{{detail::parse_real(f[0], ctx), detail::parse_real(f[1], ctx)}, detail::parse_real(f[2], ctx), +1};
        if (f.size() == 4) {
            if (f[3] == "cw") c.orientation = -1;
            else if (f[3] != "ccw") throw InvalidSpecError("circle orientation must be 'cw' or 'ccw'");
        }
        ContourSpec spec = c;
        validate(spec);
        return spec;
    }
    if (text.starts_with("poly:")) {
        Polygon p;
        for (const auto& pair : detail::split(text.substr(5), ';')) {
            const auto xy = detail::split(pair, ',');
            if (xy.size() != 2) throw InvalidSpecError("polygon vertices are written x,y and separated by ';'");
            p.vertices.emplace_back(detail::parse_real(xy[0], ctx), detail::parse_real(xy[1], ctx));
        }
        if (p.vertices.size() > 3 && p.vertices.front() == p.vertices.back()) p.vertices.pop_back();
        ContourSpec spec = p;
        validate(spec);
        return spec;
    }
    throw InvalidSpecError("contour must be circle:cx,cy,r[,cw] or poly:x1,y1;x2,y2;...");
}

}  // namespace wirt
