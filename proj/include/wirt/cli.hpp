#pragma once

// Command-line front end. Every subcommand prints exactly one JSON report on
// the output stream; diagnostics go to the error stream. Exit status: 0 when
// the report passes (pure computations always pass), 1 when a check fails or
// a numerical evaluation fails, 2 on usage, syntax or specification errors.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "area.hpp"
#include "contour.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "render.hpp"
#include "report.hpp"
#include "report_json.hpp"
#include "theorems.hpp"

namespace wirt::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;

inline constexpr const char* grammar_excerpt =
    "expression grammar:\n"
    "  expr   := term (('+'|'-') term)*\n"
    "  term   := factor (('*'|'/') factor)*\n"
    "  factor := '-' factor | atom ('^' factor)?\n"
    "  atom   := NUMBER | i | pi | e | z | zbar | IDENT '(' expr ')' | '(' expr ')'\n"
    "  IDENT  := exp | ln | sin | cos | sqrt | conj\n"
    "contours: circle:cx,cy,r[,cw] | poly:x1,y1;x2,y2;...\n"
    "regions:  disc:cx,cy,r | rect:x0,y0,x1,y1   (--res N[,M])\n"
    "complex numbers: re[,im]\n";

/// A usage problem detected after flag parsing (bad value for a known flag).
class UsageError : public Error {
public:
    using Error::Error;
};

namespace detail {

struct ParsedExpr {
    std::string flag;
    std::string text;
};

inline Expr expr_flag(const std::string& flag, const std::string& text) {
    try {
        return parse(text);
    } catch (const SyntaxError& e) {
        throw UsageError(flag + ": " + e.what());
    } catch (const UnknownIdentifierError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

inline Complex complex_flag(const std::string& flag, const std::string& text) {
    const auto parts = wirt::detail::split(text, ',');
    try {
        if (parts.size() == 1) return wirt::detail::parse_real(parts[0], flag);
        if (parts.size() == 2)
            return {wirt::detail::parse_real(parts[0], flag), wirt::detail::parse_real(parts[1], flag)};
    } catch (const InvalidSpecError& e) {
        throw UsageError(flag + ": " + e.what());
    }
    throw UsageError(flag + ": expected re[,im], got '" + text + "'");
}

inline std::pair<std::size_t, std::size_t> res_flag(const std::string& text) {
    const auto parts = wirt::detail::split(text, ',');
    auto one = [&](const std::string& s) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || v < 8) throw UsageError("--res: expected N[,M] with N, M >= 8, got '" + text + "'");
        return static_cast<std::size_t>(v);
    };
    if (parts.size() == 1) {
        const std::size_t n = one(parts[0]);
        return {n, n};
    }
    if (parts.size() == 2) return {one(parts[0]), one(parts[1])};
    throw UsageError("--res: expected N[,M], got '" + text + "'");
}

inline std::string str(double x) { return wirt::detail::format_real(x); }
inline std::string str(Complex z) { return wirt::detail::str(z); }

// Holomorphy precondition for Cauchy-formula commands: Morera probes over the disc.
inline void annotate_holomorphy(CheckReport& rep, const Expr& w, Complex center, double radius) {
    RegionSpec disc{Disc{center, radius}, 8, 8};
    const double probe = 0.1 * radius;
    const CheckReport m = morera_classify(w, disc, 32, probe);
    rep.set("morera_max_abs_integral", m.number("max_abs_integral"));
    rep.set("holomorphic_precondition", m.pass ? 1.0 : 0.0);
}

}  // namespace detail

/// Runs one CLI invocation; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wirtinger-calculus workbench: structural holomorphy checks and Cauchy-type integral theorems"};
    app.require_subcommand(1, 1);
    app.footer(grammar_excerpt);

    // Flag storage shared by all subcommands.
    std::string w_text, k_text = "1", a_text = "0", b_text = "0", phi_text = "0", f_text;
    std::string grid_text = "rect:-1,-1,1,1", region_text = "disc:0,0,1", contour_text = "circle:0,0,1";
    std::string res_text, variant_text = "paper", transform_text = "K";
    std::string z_text = "0", center_text = "0", a_point_text = "0", zeta_text = "0";
    std::string window_text = "-2,-2,2,2", pixels_text = "256,256", out_path = "domain.ppm";
    double radius = 1.0, big_r = 1.0, probe_radius = 0.05;
    double tol = -1.0;
    int k = 0, k_max = 8, n_max = 5;
    std::size_t n = 0, probes = 64;

    auto add_tol = [&](CLI::App* s) { s->add_option("--tol", tol, "override the check tolerance"); };
    auto add_n = [&](CLI::App* s, const char* what) { s->add_option("--n", n, what); };
    auto add_res = [&](CLI::App* s, const char* def) {
        s->add_option("--res", res_text, std::string("sampling resolution N[,M] (default ") + def + ")");
    };

    auto* residual = app.add_subcommand("residual", "structural holomorphic residual dw/dzbar + w dK/dzbar");
    residual->add_option("--w", w_text, "w(z)")->required();
    residual->add_option("--K", k_text, "structural function K(z) (default 1)");
    residual->add_option("--grid", grid_text, "sample region (default rect:-1,-1,1,1)");
    add_res(residual, "32");
    residual->add_option("--variant", variant_text, "paper | strong (default paper)");
    add_tol(residual);

    auto* cbv = app.add_subcommand("cbv", "Carleman-Bers-Vekua residual dw/dzbar + A w + B conj(w) - phi");
    cbv->add_option("--w", w_text, "w(z)")->required();
    cbv->add_option("--A", a_text, "A(z) (default 0)");
    cbv->add_option("--B", b_text, "B(z) (default 0)");
    cbv->add_option("--phi", phi_text, "right-hand side phi(z) (default 0)");
    cbv->add_option("--grid", grid_text, "sample region (default rect:-1,-1,1,1)");
    add_res(cbv, "32");
    add_tol(cbv);

    auto* green = app.add_subcommand("green", "complex Green identity on a disc");
    green->add_option("--f", f_text, "f(z)")->required();
    green->add_option("--region", region_text, "disc (default disc:0,0,1)");
    add_res(green, "256");
    add_n(green, "boundary nodes (default 256)");
    add_tol(green);

    auto* ctheorem = app.add_subcommand("cauchy-theorem", "closed integral of w, K w or e^K w");
    ctheorem->add_option("--w", w_text, "w(z)")->required();
    ctheorem->add_option("--K", k_text, "structural function K(z) (default 1)");
    ctheorem->add_option("--contour", contour_text, "closed contour (default circle:0,0,1)");
    ctheorem->add_option("--transform", transform_text, "none | K | expK (default K)");
    add_n(ctheorem, "nodes: circle total or polygon per edge (default 256 / 32)");
    add_tol(ctheorem);

    auto* ceval = app.add_subcommand("cauchy-eval", "k-th derivative from the Cauchy differentiation formula");
    ceval->add_option("--w", w_text, "w(z)")->required();
    ceval->add_option("--center", center_text, "circle center re[,im] (default 0)");
    ceval->add_option("--radius", radius, "circle radius (default 1)");
    ceval->add_option("--z", z_text, "evaluation point re[,im] (default 0)");
    ceval->add_option("--k", k, "derivative order (default 0)");
    add_n(ceval, "circle nodes (default 256)");

    auto* taylor = app.add_subcommand("taylor", "Taylor coefficients about 0 by contour integrals");
    taylor->add_option("--w", w_text, "w(z)")->required();
    taylor->add_option("--radius", radius, "circle radius (default 1)");
    taylor->add_option("--kmax", k_max, "highest coefficient (default 8)");
    add_n(taylor, "circle nodes (default 256)");

    auto* estimate = app.add_subcommand("estimate", "Cauchy estimate |w^(n)(a)| <= n! M / R^n");
    estimate->add_option("--w", w_text, "w(z)")->required();
    estimate->add_option("--a", a_point_text, "center re[,im] (default 0)");
    estimate->add_option("--R", big_r, "radius (default 1)");
    estimate->add_option("--nmax", n_max, "highest derivative order (default 5)");
    add_n(estimate, "circle nodes (default 256)");
    add_tol(estimate);

    auto* pompeiu = app.add_subcommand("pompeiu", "Cauchy-Pompeiu reconstruction of w(zeta)");
    pompeiu->add_option("--w", w_text, "w(z)")->required();
    pompeiu->add_option("--region", region_text, "disc (default disc:0,0,1)");
    pompeiu->add_option("--zeta", zeta_text, "interior point re[,im] (default 0)");
    add_res(pompeiu, "256");
    add_n(pompeiu, "boundary nodes (default 256)");
    add_tol(pompeiu);

    auto* morera = app.add_subcommand("morera", "numerical holomorphy by small closed integrals");
    morera->add_option("--w", w_text, "w(z)")->required();
    morera->add_option("--region", region_text, "region to tile (default disc:0,0,1)");
    morera->add_option("--probes", probes, "probe count (default 64)");
    morera->add_option("--probe-radius", probe_radius, "probe radius (default 0.05)");
    add_n(morera, "nodes per probe (default 64)");
    add_tol(morera);

    auto* solve = app.add_subcommand("solve", "structural solution w = phi exp(-K)");
    solve->add_option("--phi", phi_text, "entire phi(z) (default 0)");
    solve->add_option("--K", k_text, "structural function K(z) (default 1)");
    solve->add_option("--grid", grid_text, "verification region (default rect:-1,-1,1,1)");
    add_res(solve, "32");
    add_tol(solve);

    auto* liouville = app.add_subcommand("liouville", "structural Liouville: recover Phi = e^K w and the modulus law");
    liouville->add_option("--w", w_text, "w(z)")->required();
    liouville->add_option("--K", k_text, "structural function K(z) (default 1)");
    liouville->add_option("--grid", grid_text, "sample region (default rect:-1,-1,1,1)");
    add_res(liouville, "32");
    add_tol(liouville);

    auto* maxmod = app.add_subcommand("maxmod", "location of max |w| over a disc");
    maxmod->add_option("--w", w_text, "w(z)")->required();
    maxmod->add_option("--region", region_text, "disc (default disc:0,0,1)");
    add_res(maxmod, "256");

    auto* render = app.add_subcommand("render", "domain-coloring image (binary PPM)");
    render->add_option("--f", f_text, "f(z)")->required();
    render->add_option("--window", window_text, "x0,y0,x1,y1 (default -2,-2,2,2)");
    render->add_option("--pixels", pixels_text, "W,H (default 256,256)");
    render->add_option("--out", out_path, "output path (default domain.ppm)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return exit_pass;
    } catch (const CLI::CallForAllHelp&) {
        err << app.help("", CLI::AppFormatMode::All);
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << grammar_excerpt;
        return exit_usage;
    }

    auto resolution = [&](std::size_t def) -> std::pair<std::size_t, std::size_t> {
        if (res_text.empty()) return {def, def};
        return detail::res_flag(res_text);
    };
    auto tol_or = [&](double def) { return tol >= 0.0 ? tol : def; };

    try {
        CheckReport rep;
        if (residual->parsed()) {
            const Expr w = detail::expr_flag("--w", w_text), K = detail::expr_flag("--K", k_text);
            const auto [r1, r2] = resolution(32);
            StructuralVariant v;
            if (variant_text == "paper") v = StructuralVariant::PaperForm;
            else if (variant_text == "strong") v = StructuralVariant::StrongForm;
            else throw UsageError("--variant must be 'paper' or 'strong'");
            rep = structural_residual(w, K, parse_region(grid_text, r1, r2), v, tol_or(tolerance::jet_residual));
            rep.input("grid", grid_text);
        } else if (cbv->parsed()) {
            const auto [r1, r2] = resolution(32);
            rep = cbv_residual(detail::expr_flag("--w", w_text), detail::expr_flag("--A", a_text),
                               detail::expr_flag("--B", b_text), detail::expr_flag("--phi", phi_text),
                               parse_region(grid_text, r1, r2), tol_or(tolerance::jet_residual));
            rep.input("grid", grid_text);
        } else if (green->parsed()) {
            const auto [r1, r2] = resolution(default_resolution);
            rep = green_identity_check(detail::expr_flag("--f", f_text), parse_region(region_text, r1, r2),
                                       n ? n : default_circle_nodes, tol_or(tolerance::green));
        } else if (ctheorem->parsed()) {
            const Expr w = detail::expr_flag("--w", w_text), K = detail::expr_flag("--K", k_text);
            TransformKind t;
            if (transform_text == "none") t = TransformKind::None;
            else if (transform_text == "K") t = TransformKind::MulK;
            else if (transform_text == "expK") t = TransformKind::MulExpK;
            else throw UsageError("--transform must be 'none', 'K' or 'expK'");
            const ContourSpec c = parse_contour(contour_text);
            rep = generalized_cauchy_check(w, K, c, t, n ? n : default_nodes(c), tol_or(tolerance::contour));
            rep.input("contour", contour_text);
        } else if (ceval->parsed()) {
            const Expr w = detail::expr_flag("--w", w_text);
            const Complex center = detail::complex_flag("--center", center_text);
            const Complex z = detail::complex_flag("--z", z_text);
            const Complex value = cauchy_eval(w, center, radius, z, k, n ? n : default_circle_nodes);
            rep.check = "cauchy_eval";
            rep.input("w", format(w)).input("center", detail::str(center)).input("radius", detail::str(radius));
            rep.input("z", detail::str(z)).input("k", std::to_string(k));
            rep.set("value", value);
            rep.n_points = n ? n : default_circle_nodes;
            detail::annotate_holomorphy(rep, w, center, radius);
        } else if (taylor->parsed()) {
            const Expr w = detail::expr_flag("--w", w_text);
            const auto coeffs = taylor_coefficients(w, radius, k_max, n ? n : default_circle_nodes);
            rep.check = "taylor";
            rep.input("w", format(w)).input("radius", detail::str(radius)).input("kmax", std::to_string(k_max));
            for (std::size_t j = 0; j < coeffs.size(); ++j) rep.set("a_" + std::to_string(j), coeffs[j]);
            rep.n_points = n ? n : default_circle_nodes;
            detail::annotate_holomorphy(rep, w, 0.0, radius);
        } else if (estimate->parsed()) {
            const Expr w = detail::expr_flag("--w", w_text);
            const Complex a = detail::complex_flag("--a", a_point_text);
            rep = cauchy_estimate_check(w, a, big_r, n_max, n ? n : default_circle_nodes,
                                        tol_or(tolerance::estimate_slack));
            const bool pass = rep.pass;
            detail::annotate_holomorphy(rep, w, a, big_r);
            rep.pass = pass;
        } else if (pompeiu->parsed()) {
            const auto [r1, r2] = resolution(default_resolution);
            rep = pompeiu_check(detail::expr_flag("--w", w_text), parse_region(region_text, r1, r2),
                                detail::complex_flag("--zeta", zeta_text), n ? n : default_circle_nodes,
                                tol_or(tolerance::pompeiu));
        } else if (morera->parsed()) {
            rep = morera_classify(detail::expr_flag("--w", w_text), parse_region(region_text, 8, 8), probes,
                                  probe_radius, n ? n : 64, tol_or(tolerance::contour));
            rep.input("region", region_text);
        } else if (solve->parsed()) {
            const Expr phi = detail::expr_flag("--phi", phi_text), K = detail::expr_flag("--K", k_text);
            const Expr w = build_structural_solution(phi, K);
            const auto [r1, r2] = resolution(32);
            rep = structural_residual(w, K, parse_region(grid_text, r1, r2), StructuralVariant::PaperForm,
                                      tol_or(tolerance::jet_residual));
            rep.check = "solve";
            rep.inputs.clear();
            rep.input("phi", format(phi)).input("K", format(K)).input("grid", grid_text);
            rep.input("solution", format(w));
            rep.set("phi_conj_free", is_conj_free(phi) ? 1.0 : 0.0);
        } else if (liouville->parsed()) {
            const Expr w = detail::expr_flag("--w", w_text), K = detail::expr_flag("--K", k_text);
            const auto [r1, r2] = resolution(32);
            const RegionSpec grid = parse_region(grid_text, r1, r2);
            const double t = tol_or(tolerance::recovery);
            // Is e^K w numerically entire? Jet residual on the grid, then Morera probes.
            const Expr product = exp(K) * w;
            const CheckReport entire = structural_residual(product, Expr::constant(1.0), grid,
                                                           StructuralVariant::PaperForm, tolerance::jet_residual);
            RegionSpec probe_region = grid;
            probe_region.n1 = probe_region.n2 = 8;
            double span = 0.0;
            if (const auto* d = std::get_if<Disc>(&grid.shape)) span = d->radius;
            else {
                const auto& rc = std::get<Rectangle>(grid.shape);
                span = std::min(rc.max.real() - rc.min.real(), rc.max.imag() - rc.min.imag()) / 2.0;
            }
            const CheckReport morera_rep = morera_classify(product, probe_region, 16, 0.1 * span);
            const PhiRecovery rec = recover_phi(w, K, grid, t);
            const CheckReport law = modulus_law_check(w, K, grid, tol_or(tolerance::modulus));
            rep.check = "liouville";
            rep.input("w", format(w)).input("K", format(K)).input("grid", grid_text);
            rep.set("product_dzbar_max_abs", entire.number("max_abs"));
            rep.set("product_morera_max_abs_integral", morera_rep.number("max_abs_integral"));
            rep.set("product_numerically_entire", entire.pass && morera_rep.pass ? 1.0 : 0.0);
            rep.set("phi_hat", rec.phi_hat).set("deviation", rec.deviation);
            for (const auto& m : law.metrics)
                if (m.name != "phi_hat" && m.name != "phi_deviation") rep.set("modulus_" + m.name, m.value);
            rep.set("liouville_deviation", std::max(rec.deviation, law.number("max_deviation")));
            rep.n_points = rec.report.n_points;
            rep.n_skipped = rec.report.n_skipped;
            rep.judge("liouville_deviation", t);
        } else if (maxmod->parsed()) {
            const Expr w = detail::expr_flag("--w", w_text);
            const auto [r1, r2] = resolution(default_resolution);
            const RegionSpec region = parse_region(region_text, r1, r2);
            const auto* disc = std::get_if<Disc>(&region.shape);
            if (!disc) throw UsageError("--region must be a disc for maxmod");
            const MaxModulusResult r = max_modulus_scan(w, region);
            rep.check = "max_modulus";
            rep.input("w", format(w)).input("region", region_text);
            rep.set("argmax", r.argmax).set("max_value", r.max_value).set("min_value", r.min_value);
            rep.set("on_boundary", r.on_boundary ? 1.0 : 0.0).set("constant", r.constant ? 1.0 : 0.0);
            // Distance of the maximizer from the boundary beyond one grid cell; zero when on the boundary or constant.
            const double cell = disc->radius / static_cast<double>(region.n1 - 1);
            const double gap = (r.on_boundary || r.constant)
                                   ? 0.0
                                   : disc->radius - std::abs(r.argmax - disc->center) - cell;
            rep.set("interior_gap", gap);
            rep.n_points = r.n_points;
            rep.n_skipped = r.n_skipped;
            rep.judge("interior_gap", 0.0);
        } else if (render->parsed()) {
            const Expr f = detail::expr_flag("--f", f_text);
            const auto win = wirt::detail::split(window_text, ',');
            if (win.size() != 4) throw UsageError("--window: expected x0,y0,x1,y1");
            Window w;
            try {
                w = {wirt::detail::parse_real(win[0], "--window"), wirt::detail::parse_real(win[1], "--window"),
                     wirt::detail::parse_real(win[2], "--window"), wirt::detail::parse_real(win[3], "--window")};
            } catch (const InvalidSpecError& e) {
                throw UsageError(e.what());
            }
            const auto [pw, ph] = [&] {
                const auto p = wirt::detail::split(pixels_text, ',');
                if (p.size() != 2) throw UsageError("--pixels: expected W,H");
                auto dim = [&](const std::string& s) {
                    std::size_t used = 0;
                    long long v = 0;
                    try {
                        v = std::stoll(s, &used);
                    } catch (const std::exception&) {
                        used = 0;
                    }
                    if (used != s.size() || v < 16 || v > 16384)
                        throw UsageError("--pixels: dimensions must be integers in [16, 16384]");
                    return static_cast<std::size_t>(v);
                };
                return std::pair{dim(p[0]), dim(p[1])};
            }();
            const Image img = render_domain_coloring(f, w, pw, ph);
            write_ppm(img, out_path);
            rep.check = "render";
            rep.input("f", format(f)).input("window", window_text).input("pixels", pixels_text).input("out", out_path);
            rep.set("width", static_cast<double>(img.width)).set("height", static_cast<double>(img.height));
            rep.n_points = img.width * img.height;
            rep.n_skipped = img.black_pixels;
        }
        out << to_json(rep) << "\n";
        return rep.pass ? exit_pass : exit_fail;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << grammar_excerpt;
        return exit_usage;
    } catch (const InvalidSpecError& e) {
        err << "usage error: " << e.what() << "\n" << grammar_excerpt;
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_fail;
    }
}

}  // namespace wirt::cli
