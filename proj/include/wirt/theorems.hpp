#pragma once

// Executable checks and constructors for the structural-holomorphy results:
// residuals of the structural and Carleman-Bers-Vekua equations, the complex
// Green identity, classical and generalized Cauchy integral theorems, the
// Cauchy-Pompeiu formula, Morera probing, and the structural Liouville and
// modulus laws.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include "area.hpp"
#include "complex.hpp"
#include "contour.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "jet.hpp"
#include "report.hpp"

namespace wirt {

/// Default tolerances, matched to the order of each computation.
namespace tolerance {
inline constexpr double jet_residual = 1e-10;
inline constexpr double contour = 1e-8;
inline constexpr double green = 1e-7;
inline constexpr double pompeiu = 1e-3;
inline constexpr double estimate_slack = 1e-9;
inline constexpr double recovery = 1e-10;
inline constexpr double modulus = 1e-10;
inline constexpr double constant_spread = 1e-10;
}  // namespace tolerance

enum class StructuralVariant {
    PaperForm,   // dw/dzbar + w dK/dzbar
    StrongForm,  // d(Kw)/dzbar = K dw/dzbar + w dK/dzbar
};

enum class TransformKind {
    None,     // w
    MulK,     // K w
    MulExpK,  // e^K w
};

inline const char* name_of(StructuralVariant v) { return v == StructuralVariant::PaperForm ? "paper" : "strong"; }

inline const char* name_of(TransformKind t) {
    switch (t) {
    case TransformKind::None: return "none";
    case TransformKind::MulK: return "K";
    case TransformKind::MulExpK: return "expK";
    }
    return "?";
}

/// Either a region lattice (see grid_points) or explicit points.
using PointSet = std::variant<RegionSpec, std::vector<Complex>>;

namespace detail {

inline std::string str(double x) { return format_real(x); }

inline std::string str(Complex z) { return format_real(z.real()) + "," + format_real(z.imag()); }

inline std::vector<Complex> points_of(const PointSet& ps) {
    if (const auto* r = std::get_if<RegionSpec>(&ps)) return grid_points(*r);
    return std::get<std::vector<Complex>>(ps);
}

// Max and mean of |g(z)| over points where g is evaluable.
template <class G>
void residual_metrics(CheckReport& rep, const std::vector<Complex>& pts, G&& g) {
    double max_abs = 0.0;
    KahanSum sum;
    std::size_t used = 0;
    for (const Complex z : pts) {
        Complex r;
        if (!try_sample(g, z, r)) {
            ++rep.n_skipped;
            continue;
        }
        const double a = std::abs(r);
        max_abs = std::max(max_abs, a);
        sum.add(a);
        ++used;
    }
    rep.n_points = pts.size();
    check_skips(rep.n_skipped, rep.n_points);
    if (used == 0) throw ExcessiveSkipsError(rep.n_skipped, rep.n_points);
    rep.set("max_abs", max_abs);
    rep.set("mean_abs", sum.value().real() / static_cast<double>(used));
}

inline Expr transform(const Expr& w, const Expr& K, TransformKind t) {
    switch (t) {
    case TransformKind::None: return w;
    case TransformKind::MulK: return K * w;
    case TransformKind::MulExpK: return exp(K) * w;
    }
    return w;
}

}  // namespace detail

// ---- structural and CBV residuals ------------------------------------------

inline Complex structural_residual_at(const Expr& w, const Expr& K, Complex z, StructuralVariant variant) {
    const WirtingerJet wj = eval_jet(w, z);
    const WirtingerJet kj = eval_jet(K, z);
    const Complex lead = variant == StructuralVariant::PaperForm ? wj.d_zbar : kj.value * wj.d_zbar;
    return lead + wj.value * kj.d_zbar;
}

/// Residual of the structural holomorphic condition over a point set.
inline CheckReport structural_residual(const Expr& w, const Expr& K, const PointSet& points,
                                       StructuralVariant variant = StructuralVariant::PaperForm,
                                       double tol = tolerance::jet_residual) {
    CheckReport rep;
    rep.check = "structural_residual";
    rep.input("w", format(w)).input("K", format(K)).input("variant", name_of(variant));
    detail::residual_metrics(rep, detail::points_of(points),
                             [&](Complex z) { return structural_residual_at(w, K, z, variant); });
    return rep.judge("max_abs", tol);
}

/// Residual of dw/dzbar + A w + B conj(w) - phi.
inline CheckReport cbv_residual(const Expr& w, const Expr& A, const Expr& B, const Expr& phi, const PointSet& points,
                                double tol = tolerance::jet_residual) {
    CheckReport rep;
    rep.check = "cbv_residual";
    rep.input("w", format(w)).input("A", format(A)).input("B", format(B)).input("phi", format(phi));
    detail::residual_metrics(rep, detail::points_of(points), [&](Complex z) {
        const WirtingerJet wj = eval_jet(w, z);
        return wj.d_zbar + evaluate(A, z) * wj.value + evaluate(B, z) * std::conj(wj.value) - evaluate(phi, z);
    });
    return rep.judge("max_abs", tol);
}

// ---- Green identity and generalized Cauchy theorem --------------------------

/// Compares the boundary integral of f dz with 2i times the area integral of
/// df/dzbar over a disc.
inline CheckReport green_identity_check(const Expr& f, const RegionSpec& region,
                                        std::size_t n_contour = default_circle_nodes,
                                        double tol = tolerance::green) {
    const auto* disc = std::get_if<Disc>(&region.shape);
    if (!disc) throw InvalidSpecError("green identity check is defined on discs");
    CheckReport rep;
    rep.check = "green_identity";
    rep.input("f", format(f)).input("region_center", detail::str(disc->center)).input("radius", detail::str(disc->radius));
    const Complex lhs = line_integral(f, Circle{disc->center, disc->radius, +1}, n_contour);
    const AreaResult area = integrate_area(region, [&](Complex z) { return eval_jet(f, z).d_zbar; });
    const Complex rhs = 2.0 * I * area.value;
    rep.n_points = area.n_points;
    rep.n_skipped = area.n_skipped;
    rep.set("lhs", lhs).set("rhs", rhs).set("abs_difference", std::abs(lhs - rhs));
    return rep.judge("abs_difference", tol);
}

/// Closed integral of the transformed function w~ under `t`. The report also
/// carries the integrals under every transform so the variants can be
/// compared side by side.
inline CheckReport generalized_cauchy_check(const Expr& w, const Expr& K, const ContourSpec& c, TransformKind t,
                                            std::size_t n, double tol = tolerance::contour) {
    CheckReport rep;
    rep.check = "generalized_cauchy";
    rep.input("w", format(w)).input("K", format(K)).input("transform", name_of(t));
    Complex chosen{};
    for (TransformKind k : {TransformKind::None, TransformKind::MulK, TransformKind::MulExpK}) {
        const Complex v = line_integral(detail::transform(w, K, k), c, n);
        rep.set(std::string("integral_") + name_of(k), v);
        if (k == t) chosen = v;
    }
    rep.set("integral_value", chosen).set("abs_integral", std::abs(chosen));
    rep.n_points = sample_contour(c, n).size();
    return rep.judge("abs_integral", tol);
}

// ---- Cauchy integral formula and consequences -------------------------------

namespace detail {

inline void check_inside(Complex center, double radius, Complex z) {
    if (!(radius > 0.0) || !(std::abs(z - center) < radius * (1.0 - 1e-6))) {
        throw InvalidSpecError("point " + str(z) + " is not inside the circle about " + str(center) +
                               " of radius " + str(radius) + " with margin 1e-6 * radius");
    }
}

inline Complex ipow(Complex base, int n) {
    Complex acc = 1.0;
    for (int j = 0; j < n; ++j) acc *= base;
    return acc;
}

inline double factorial(int k) {
    double f = 1.0;
    for (int j = 2; j <= k; ++j) f *= j;
    return f;
}

}  // namespace detail

/// k-th derivative of w at z from the Cauchy differentiation formula
/// k!/(2 pi i) times the integral of w(zeta)/(zeta - z)^{k+1} over |zeta - center| = radius.
inline Complex cauchy_eval(const Expr& w, Complex center, double radius, Complex z, int k = 0,
                           std::size_t n = default_circle_nodes) {
    if (k < 0) throw InvalidSpecError("derivative order must be non-negative");
    detail::check_inside(center, radius, z);
    const auto nodes = sample_contour(Circle{center, radius, +1}, n);
    const Complex integral = integrate_contour(nodes, [&](Complex zeta) {
        return evaluate(w, zeta) / detail::ipow(zeta - z, k + 1);
    });
    return detail::factorial(k) * integral / (2.0 * pi * I);
}

/// Taylor coefficients a_0..a_kmax about 0 from contour integrals on |zeta| = radius.
inline std::vector<Complex> taylor_coefficients(const Expr& w, double radius, int k_max,
                                                std::size_t n = default_circle_nodes) {
    if (k_max < 0) throw InvalidSpecError("k_max must be non-negative");
    const auto nodes = sample_contour(Circle{0.0, radius, +1}, n);
    std::vector<Complex> values;
    values.reserve(nodes.size());
    for (const auto& node : nodes)
        values.push_back(detail::node_value([&](Complex zeta) { return evaluate(w, zeta); }, node.point));
    std::vector<Complex> coeffs;
    for (int k = 0; k <= k_max; ++k) {
        KahanSum sum;
        for (std::size_t j = 0; j < nodes.size(); ++j)
            sum.add(values[j] / detail::ipow(nodes[j].point, k + 1) * nodes[j].dz);
        coeffs.push_back(sum.value() / (2.0 * pi * I));
    }
    return coeffs;
}

/// Checks |w^(n)(a)| <= n! M / R^n for n = 0..n_max, where M is the maximum of
/// |w| over a dense sampling of |z - a| = R and the derivatives come from
/// cauchy_eval on that same circle. Headline: the negated minimum slack.
inline CheckReport cauchy_estimate_check(const Expr& w, Complex a, double R, int n_max,
                                         std::size_t n = default_circle_nodes,
                                         double tol = tolerance::estimate_slack) {
    CheckReport rep;
    rep.check = "cauchy_estimate";
    rep.input("w", format(w)).input("a", detail::str(a)).input("R", detail::str(R)).input("n_max", std::to_string(n_max));
    constexpr std::size_t boundary_samples = 4096;
    double M = 0.0;
    for (const auto& node : sample_contour(Circle{a, R, +1}, boundary_samples)) {
        Complex v;
        if (!detail::try_sample([&](Complex z) { return evaluate(w, z); }, node.point, v))
            throw EvaluationError("w is not evaluable on the boundary circle at " + detail::str(node.point));
        M = std::max(M, std::abs(v));
    }
    rep.set("M", M);
    double min_slack = INFINITY, min_rel_slack = INFINITY;
    for (int k = 0; k <= n_max; ++k) {
        const double deriv = std::abs(cauchy_eval(w, a, R, a, k, n));
        const double bound = detail::factorial(k) * M / std::pow(R, k);
        rep.set("derivative_abs_" + std::to_string(k), deriv).set("bound_" + std::to_string(k), bound);
        min_slack = std::min(min_slack, bound - deriv);
        if (bound > 0.0) min_rel_slack = std::min(min_rel_slack, (bound - deriv) / bound);
    }
    rep.n_points = boundary_samples;
    rep.set("min_slack", min_slack).set("min_relative_slack", min_rel_slack).set("slack_deficit", -min_slack);
    return rep.judge("slack_deficit", tol);
}

struct PompeiuResult {
    Complex value{};
    Complex boundary_term{};
    Complex area_term{};
    std::size_t n_points = 0;
    std::size_t n_skipped = 0;
};

/// Reconstructs w(zeta) from boundary values plus the area integral of dw/dzbar:
/// w(zeta) = (1/2 pi i) bdry-int w/(z - zeta) dz - (1/pi) area-int (dw/dzbar)/(z - zeta).
inline PompeiuResult pompeiu_reconstruct(const Expr& w, const RegionSpec& region, Complex zeta,
                                         std::size_t n_contour = default_circle_nodes) {
    const auto* disc = std::get_if<Disc>(&region.shape);
    if (!disc) throw InvalidSpecError("Cauchy-Pompeiu reconstruction is defined on discs");
    const AreaResult area = integrate_cauchy_kernel(*disc, region.n1, region.n2, zeta,
                                                    [&](Complex z) { return eval_jet(w, z).d_zbar; });
    const auto nodes = sample_contour(Circle{disc->center, disc->radius, +1}, n_contour);
    const Complex boundary =
        integrate_contour(nodes, [&](Complex z) { return evaluate(w, z) / (z - zeta); }) / (2.0 * pi * I);
    PompeiuResult r;
    r.boundary_term = boundary;
    r.area_term = -area.value / pi;
    r.value = r.boundary_term + r.area_term;
    r.n_points = area.n_points + nodes.size();
    r.n_skipped = area.n_skipped;
    return r;
}

/// pompeiu_reconstruct compared with direct evaluation of w at zeta.
inline CheckReport pompeiu_check(const Expr& w, const RegionSpec& region, Complex zeta,
                                 std::size_t n_contour = default_circle_nodes, double tol = tolerance::pompeiu) {
    const PompeiuResult r = pompeiu_reconstruct(w, region, zeta, n_contour);
    const Complex direct = evaluate(w, zeta);
    CheckReport rep;
    rep.check = "pompeiu";
    rep.input("w", format(w)).input("zeta", detail::str(zeta));
    rep.set("reconstructed", r.value).set("boundary_term", r.boundary_term).set("area_term", r.area_term);
    rep.set("direct", direct).set("abs_error", std::abs(r.value - direct));
    rep.n_points = r.n_points;
    rep.n_skipped = r.n_skipped;
    return rep.judge("abs_error", tol);
}

// ---- Morera probing ---------------------------------------------------------

/// Probe circle centers tiling the region, each circle contained in it.
inline std::vector<Complex> morera_probe_centers(const RegionSpec& region, std::size_t count, double probe_radius) {
    validate(region);
    if (count == 0 || !(probe_radius > 0.0)) throw InvalidSpecError("Morera probing needs probes of positive radius");
    std::vector<Complex> centers;
    centers.reserve(count);
    if (const auto* disc = std::get_if<Disc>(&region.shape)) {
        const double reach = disc->radius - probe_radius;
        if (!(reach > 0.0)) throw InvalidSpecError("probe radius does not fit inside the disc");
        // Sunflower lattice: even area coverage for any count.
        const double golden = pi * (3.0 - std::sqrt(5.0));
        for (std::size_t i = 0; i < count; ++i) {
            const double r = reach * std::sqrt((static_cast<double>(i) + 0.5) / static_cast<double>(count));
            const double t = golden * static_cast<double>(i);
            centers.push_back(disc->center + r * Complex{std::cos(t), std::sin(t)});
        }
    } else {
        const auto& rect = std::get<Rectangle>(region.shape);
        const double x0 = rect.min.real() + probe_radius, x1 = rect.max.real() - probe_radius;
        const double y0 = rect.min.imag() + probe_radius, y1 = rect.max.imag() - probe_radius;
        if (!(x0 <= x1) || !(y0 <= y1)) throw InvalidSpecError("probe radius does not fit inside the rectangle");
        const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
        const std::size_t rows = (count + cols - 1) / cols;
        for (std::size_t j = 0; j < rows && centers.size() < count; ++j)
            for (std::size_t i = 0; i < cols && centers.size() < count; ++i)
                centers.emplace_back(x0 + (x1 - x0) * (static_cast<double>(i) + 0.5) / static_cast<double>(cols),
                                     y0 + (y1 - y0) * (static_cast<double>(j) + 0.5) / static_cast<double>(rows));
    }
    return centers;
}

/// Classifies w as numerically holomorphic when every probe integral is at most
/// tol times the probe circumference. Probes that hit a non-evaluable point are
/// counted in n_skipped and force a non-holomorphic verdict.
inline CheckReport morera_classify(const Expr& w, const RegionSpec& region, std::size_t probe_count,
                                   double probe_radius, std::size_t nodes_per_probe = 64,
                                   double tol = tolerance::contour) {
    CheckReport rep;
    rep.check = "morera";
    rep.input("w", format(w)).input("probe_count", std::to_string(probe_count)).input("probe_radius", detail::str(probe_radius));
    const auto centers = morera_probe_centers(region, probe_count, probe_radius);
    double max_abs = 0.0;
    Complex worst_center = centers.front();
    std::size_t failed = 0;
    for (const Complex c : centers) {
        try {
            const double a = std::abs(line_integral(w, Circle{c, probe_radius, +1}, nodes_per_probe));
            if (a > max_abs) {
                max_abs = a;
                worst_center = c;
            }
        } catch (const EvaluationError&) {
            if (failed == 0) rep.set("first_failed_probe", c);
            ++failed;
        }
    }
    const double circumference = 2.0 * pi * probe_radius;
    rep.n_points = centers.size();
    rep.n_skipped = failed;
    rep.set("max_abs_integral", max_abs).set("worst_probe", worst_center);
    rep.set("scaled_max", max_abs / circumference).set("failed_probes", static_cast<double>(failed));
    rep.judge("scaled_max", tol);
    rep.tolerance = tol * circumference;
    rep.headline = "max_abs_integral";
    if (failed > 0) rep.pass = false;
    return rep;
}

// ---- structural solutions, Liouville and modulus law --------------------------

/// w = phi * exp(-K); structurally holomorphic for K whenever phi is conj-free.
inline Expr build_structural_solution(const Expr& phi, const Expr& K) { return phi * exp(-K); }

struct PhiRecovery {
    Complex phi_hat{};
    double deviation = 0.0;
    CheckReport report;
};

/// Mean of e^K w over the grid and its maximum deviation from that mean; the
/// product is constant exactly when w = Phi e^{-K} with constant Phi.
inline PhiRecovery recover_phi(const Expr& w, const Expr& K, const PointSet& grid, double tol = tolerance::recovery) {
    CheckReport rep;
    rep.check = "recover_phi";
    rep.input("w", format(w)).input("K", format(K));
    const auto pts = detail::points_of(grid);
    std::vector<Complex> products;
    products.reserve(pts.size());
    const auto product = [&](Complex z) { return std::exp(evaluate(K, z)) * evaluate(w, z); };
    for (const Complex z : pts) {
        Complex v;
        if (detail::try_sample(product, z, v))
            products.push_back(v);
        else
            ++rep.n_skipped;
    }
    rep.n_points = pts.size();
    detail::check_skips(rep.n_skipped, rep.n_points);
    if (products.empty()) throw ExcessiveSkipsError(rep.n_skipped, rep.n_points);
    KahanSum sum;
    for (const Complex v : products) sum.add(v);
    const Complex phi_hat = sum.value() / static_cast<double>(products.size());
    double deviation = 0.0;
    for (const Complex v : products) deviation = std::max(deviation, std::abs(v - phi_hat));
    rep.set("phi_hat", phi_hat).set("deviation", deviation);
    rep.judge("deviation", tol);
    return {phi_hat, deviation, std::move(rep)};
}

/// Checks |w| = |phi_hat| e^{-Re K} pointwise and reports the sign census of
/// Re K together with where |w| <= |phi_hat| holds.
inline CheckReport modulus_law_check(const Expr& w, const Expr& K, const PointSet& grid,
                                     double tol = tolerance::modulus) {
    const PhiRecovery rec = recover_phi(w, K, grid);
    const double phi_abs = std::abs(rec.phi_hat);
    CheckReport rep;
    rep.check = "modulus_law";
    rep.input("w", format(w)).input("K", format(K));
    double max_dev = 0.0;
    std::size_t k1_nonneg = 0, k1_neg = 0, bound_holds_nonneg = 0, bound_violated_neg = 0;
    const auto pts = detail::points_of(grid);
    for (const Complex z : pts) {
        Complex kv, wv;
        if (!detail::try_sample([&](Complex p) { return evaluate(K, p); }, z, kv) ||
            !detail::try_sample([&](Complex p) { return evaluate(w, p); }, z, wv)) {
            ++rep.n_skipped;
            continue;
        }
        const double k1 = kv.real();
        const double law = phi_abs * std::exp(-k1);
        max_dev = std::max(max_dev, std::abs(std::abs(wv) - law));
        const bool within = std::abs(wv) <= phi_abs * (1.0 + 1e-12);
        if (k1 >= 0.0) {
            ++k1_nonneg;
            if (within) ++bound_holds_nonneg;
        } else {
            ++k1_neg;
            if (!within) ++bound_violated_neg;
        }
    }
    rep.n_points = pts.size();
    detail::check_skips(rep.n_skipped, rep.n_points);
    rep.set("phi_hat", rec.phi_hat).set("phi_deviation", rec.deviation).set("max_deviation", max_dev);
    rep.set("k1_nonnegative_points", static_cast<double>(k1_nonneg));
    rep.set("k1_negative_points", static_cast<double>(k1_neg));
    rep.set("bound_holds_where_k1_nonnegative", static_cast<double>(bound_holds_nonneg));
    rep.set("bound_violated_where_k1_negative", static_cast<double>(bound_violated_neg));
    return rep.judge("max_deviation", tol);
}

struct MaxModulusResult {
    Complex argmax{};
    double max_value = 0.0;
    double min_value = 0.0;
    bool on_boundary = false;
    bool constant = false;  // spread max - min within tolerance; on_boundary is then a tie
    std::size_t n_points = 0;
    std::size_t n_skipped = 0;
};

/// Scans |w| over the disc lattice of grid_points and locates its maximum.
/// Ties go to the first point in scan order; "on the boundary" means within
/// one radial grid cell of the circle.
inline MaxModulusResult max_modulus_scan(const Expr& w, const RegionSpec& region,
                                         double spread_tol = tolerance::constant_spread) {
    const auto* disc = std::get_if<Disc>(&region.shape);
    if (!disc) throw InvalidSpecError("maximum modulus scan is defined on discs");
    const auto pts = grid_points(region);
    MaxModulusResult r;
    r.n_points = pts.size();
    r.max_value = -1.0;
    r.min_value = INFINITY;
    for (const Complex z : pts) {
        Complex v;
        if (!detail::try_sample([&](Complex p) { return evaluate(w, p); }, z, v)) {
            ++r.n_skipped;
            continue;
        }
        const double a = std::abs(v);
        if (a > r.max_value) {
            r.max_value = a;
            r.argmax = z;
        }
        r.min_value = std::min(r.min_value, a);
    }
    detail::check_skips(r.n_skipped, r.n_points);
    if (r.n_skipped == r.n_points) throw ExcessiveSkipsError(r.n_skipped, r.n_points);
    const double cell = disc->radius / static_cast<double>(region.n1 - 1);
    r.on_boundary = disc->radius - std::abs(r.argmax - disc->center) <= cell * (1.0 + 1e-9);
    r.constant = r.max_value - r.min_value <= spread_tol * std::max(1.0, r.max_value);
    return r;
}

}  // namespace wirt
