#pragma once

// Area integrals over discs and rectangles, including the weakly singular
// Cauchy kernel 1/(z - zeta).

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "complex.hpp"
#include "contour.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "quadrature.hpp"

namespace wirt {

struct Disc {
    Complex center{};
    double radius = 1.0;
};

struct Rectangle {
    Complex min{};
    Complex max{};
};

inline constexpr std::size_t default_resolution = 256;

/// Region plus sampling resolution: (radial, angular) for discs, (x, y) for rectangles.
struct RegionSpec {
    std::variant<Disc, Rectangle> shape;
    std::size_t n1 = default_resolution;
    std::size_t n2 = default_resolution;
};

inline void validate(const RegionSpec& r) {
    if (r.n1 < 8 || r.n2 < 8) throw InvalidSpecError("region resolution must be at least 8 in each direction");
    if (const auto* d = std::get_if<Disc>(&r.shape)) {
        if (!(d->radius > 0.0) || !std::isfinite(d->radius) || !is_finite(d->center))
            throw InvalidSpecError("disc radius must be positive and finite");
    } else {
        const auto& rect = std::get<Rectangle>(r.shape);
        if (!is_finite(rect.min) || !is_finite(rect.max) || !(rect.min.real() < rect.max.real()) ||
            !(rect.min.imag() < rect.max.imag()))
            throw InvalidSpecError("rectangle corner-min must lie strictly below-left of corner-max");
    }
}

/// Tally of an area quadrature.
struct AreaResult {
    Complex value{};
    std::size_t n_points = 0;
    std::size_t n_skipped = 0;
};

namespace detail {

inline void check_skips(std::size_t skipped, std::size_t total) {
    if (static_cast<double>(skipped) > max_skip_fraction * static_cast<double>(total))
        throw ExcessiveSkipsError(skipped, total);
}

// Evaluates f at z; a DomainError (or non-finite value) is a skip.
template <class F>
bool try_sample(F&& f, Complex z, Complex& out) {
    try {
        out = f(z);
    } catch (const DomainError&) {
        return false;
    }
    return is_finite(out);
}

}  // namespace detail

/// Tensor-product quadrature of f over the region. Discs: Gauss-Legendre in
/// radius times periodic trapezoid in angle. Rectangles: Gauss-Legendre in
/// both directions. Non-evaluable samples contribute nothing and are counted;
/// more than 0.1% of them raises ExcessiveSkipsError.
template <class F>
AreaResult integrate_area(const RegionSpec& region, F&& f) {
    validate(region);
    AreaResult res;
    KahanSum sum;
    const GaussLegendreRule g1 = gauss_legendre(region.n1);
    if (const auto* disc = std::get_if<Disc>(&region.shape)) {
        const double R = disc->radius;
        const double h = 2.0 * pi / static_cast<double>(region.n2);
        for (std::size_t i = 0; i < region.n1; ++i) {
            const double r = 0.5 * R * (g1.nodes[i] + 1.0);
            const double wr = 0.5 * R * g1.weights[i] * r * h;
            for (std::size_t k = 0; k < region.n2; ++k) {
                const double t = h * static_cast<double>(k);
                Complex v;
                ++res.n_points;
                if (detail::try_sample(f, disc->center + r * Complex{std::cos(t), std::sin(t)}, v))
                    sum.add(v * wr);
                else
                    ++res.n_skipped;
            }
        }
    } else {
        const auto& rect = std::get<Rectangle>(region.shape);
        const GaussLegendreRule g2 = gauss_legendre(region.n2);
        const double hx = 0.5 * (rect.max.real() - rect.min.real());
        const double hy = 0.5 * (rect.max.imag() - rect.min.imag());
        const double mx = 0.5 * (rect.max.real() + rect.min.real());
        const double my = 0.5 * (rect.max.imag() + rect.min.imag());
        for (std::size_t i = 0; i < region.n1; ++i) {
            for (std::size_t j = 0; j < region.n2; ++j) {
                Complex v;
                ++res.n_points;
                if (detail::try_sample(f, {mx + hx * g1.nodes[i], my + hy * g2.nodes[j]}, v))
                    sum.add(v * (hx * hy * g1.weights[i] * g2.weights[j]));
                else
                    ++res.n_skipped;
            }
        }
    }
    detail::check_skips(res.n_skipped, res.n_points);
    res.value = sum.value();
    return res;
}

inline AreaResult area_integral(const Expr& f, const RegionSpec& region) {
    return integrate_area(region, [&](Complex z) { return evaluate(f, z); });
}

/// Distance from an interior point p along direction u (|u| = 1) to the circle
/// |z - c| = R: the positive root of |p - c + t u|^2 = R^2.
inline double ray_to_circle(Complex p, Complex u, const Disc& d) {
    const Complex q = p - d.center;
    const double b = (std::conj(u) * q).real();
    const double c = std::norm(q) - d.radius * d.radius;
    const double disc = b * b - c;
    const double root = std::sqrt(std::max(disc, 0.0));
    // -b + root, written to avoid cancellation when b > 0.
    return b > 0.0 ? -c / (b + root) : root - b;
}

/// Integral of f(z) / (z - zeta) over the disc, in polar coordinates about zeta.
/// With z = zeta + t e^{i theta} the area element t dt dtheta cancels the
/// kernel, leaving the bounded integrand f(z) e^{-i theta}. Gauss-Legendre
/// (n1 nodes) on t in [0, T(theta)], T from the law of cosines, and periodic
/// trapezoid (n2 nodes) in theta.
template <class F>
AreaResult integrate_cauchy_kernel(const Disc& disc, std::size_t n_radial, std::size_t n_angular, Complex zeta,
                                   F&& f) {
    validate(RegionSpec{disc, n_radial, n_angular});
    if (!is_finite(zeta) || std::abs(zeta - disc.center) >= disc.radius * (1.0 - 1e-6)) {
        std::ostringstream os;
        os.precision(17);
        os << "singular point " << zeta << " must lie inside the disc with margin 1e-6 * radius";
        throw InvalidSpecError(os.str());
    }
    AreaResult res;
    KahanSum sum;
    const GaussLegendreRule g = gauss_legendre(n_radial);
    const double h = 2.0 * pi / static_cast<double>(n_angular);
    for (std::size_t k = 0; k < n_angular; ++k) {
        const double theta = h * static_cast<double>(k);
        const Complex u{std::cos(theta), std::sin(theta)};
        const double T = ray_to_circle(zeta, u, disc);
        KahanSum ray;
        for (std::size_t i = 0; i < n_radial; ++i) {
            const double t = 0.5 * T * (g.nodes[i] + 1.0);
            Complex v;
            ++res.n_points;
            if (detail::try_sample(f, zeta + t * u, v))
                ray.add(v * (0.5 * T * g.weights[i]));
            else
                ++res.n_skipped;
        }
        sum.add(ray.value() * std::conj(u) * h);
    }
    detail::check_skips(res.n_skipped, res.n_points);
    res.value = sum.value();
    return res;
}

/// Integral of f(z)/(z - zeta) over a disc region at its resolution (radial, angular).
inline AreaResult singular_area_integral(const Expr& f, const RegionSpec& region, Complex zeta) {
    const auto* disc = std::get_if<Disc>(&region.shape);
    if (!disc) throw InvalidSpecError("the singular kernel integral is defined on discs only");
    return integrate_cauchy_kernel(*disc, region.n1, region.n2, zeta, [&](Complex z) { return evaluate(f, z); });
}

/// Deterministic sample lattice of a region, for pointwise checks. Rectangles:
/// n1 x n2 points including the edges. Discs: the center plus n2 points on each
/// of n1 - 1 circles of radius R j / (n1 - 1), so the boundary circle is sampled.
inline std::vector<Complex> grid_points(const RegionSpec& region) {
    validate(region);
    std::vector<Complex> pts;
    if (const auto* disc = std::get_if<Disc>(&region.shape)) {
        pts.reserve(1 + (region.n1 - 1) * region.n2);
        pts.push_back(disc->center);
        const double h = 2.0 * pi / static_cast<double>(region.n2);
        for (std::size_t j = 1; j < region.n1; ++j) {
            const double r = disc->radius * static_cast<double>(j) / static_cast<double>(region.n1 - 1);
            for (std::size_t k = 0; k < region.n2; ++k) {
                const double t = h * static_cast<double>(k);
                pts.push_back(disc->center + r * Complex{std::cos(t), std::sin(t)});
            }
        }
    } else {
        const auto& rect = std::get<Rectangle>(region.shape);
        pts.reserve(region.n1 * region.n2);
        const double dx = (rect.max.real() - rect.min.real()) / static_cast<double>(region.n1 - 1);
        const double dy = (rect.max.imag() - rect.min.imag()) / static_cast<double>(region.n2 - 1);
        for (std::size_t j = 0; j < region.n2; ++j)
            for (std::size_t i = 0; i < region.n1; ++i)
                pts.emplace_back(i + 1 == region.n1 ? rect.max.real() : rect.min.real() + dx * static_cast<double>(i),
                                 j + 1 == region.n2 ? rect.max.imag() : rect.min.imag() + dy * static_cast<double>(j));
    }
    return pts;
}

/// Parses "disc:cx,cy,r" or "rect:x0,y0,x1,y1" with the given resolution.
inline RegionSpec parse_region(std::string_view text, std::size_t n1 = default_resolution,
                               std::size_t n2 = default_resolution) {
    const std::string ctx(text);
    RegionSpec r;
    r.n1 = n1;
    r.n2 = n2;
    if (text.starts_with("disc:")) {
        const auto f = detail::split(text.substr(5), ',');
        if (f.size() != 3) throw InvalidSpecError("region syntax is disc:cx,cy,r");
        r.shape = Disc{{detail::parse_real(f[0], ctx), detail::parse_real(f[1], ctx)}, detail::parse_real(f[2], ctx)};
    } else if (text.starts_with("rect:")) {
        const auto f = detail::split(text.substr(5), ',');
        if (f.size() != 4) throw InvalidSpecError("region syntax is rect:x0,y0,x1,y1");
        r.shape = Rectangle{{detail::parse_real(f[0], ctx), detail::parse_real(f[1], ctx)},
                            {detail::parse_real(f[2], ctx), detail::parse_real(f[3], ctx)}};
    } else {
        throw InvalidSpecError("region must be disc:cx,cy,r or rect:x0,y0,x1,y1");
    }
    validate(r);
    return r;
}

}  // namespace wirt
