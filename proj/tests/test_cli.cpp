#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "wirt/cli.hpp"
#include "wirt/report_json.hpp"

using namespace wirt;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

CheckReport report_of(const Outcome& o) { return report_from_json(o.out); }

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("wirt_test_" + name)).string();
}

}  // namespace

TEST(Cli, ResidualPasses) {
    const Outcome o = run({"residual", "--w", "exp(-conj(z))", "--K", "conj(z)", "--grid", "rect:-1,-1,1,1", "--res", "32"});
    EXPECT_EQ(o.code, 0);
    const CheckReport r = report_of(o);
    EXPECT_EQ(r.check, "structural_residual");
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.n_points, 1024u);
}

TEST(Cli, GeneralizedCauchyWithKFails) {
    const Outcome o = run({"cauchy-theorem", "--w", "exp(-conj(z))", "--K", "conj(z)", "--contour", "circle:0,0,1",
                           "--transform", "K"});
    EXPECT_EQ(o.code, 1);
    const CheckReport r = report_of(o);
    EXPECT_FALSE(r.pass);
    EXPECT_LT(std::abs(r.complex("integral_K") - 2.0 * pi * I), 1e-10);
    EXPECT_LT(std::abs(r.complex("integral_expK")), 1e-10);
}

TEST(Cli, GeneralizedCauchyWithExpKPasses) {
    EXPECT_EQ(run({"cauchy-theorem", "--w", "exp(-conj(z))", "--K", "conj(z)", "--transform", "expK"}).code, 0);
}

TEST(Cli, SyntaxErrorIsUsage) {
    const Outcome o = run({"residual", "--w", "z +* 2"});
    EXPECT_EQ(o.code, 2);
    EXPECT_TRUE(o.out.empty());
    EXPECT_NE(o.err.find("offset 3"), std::string::npos);
    EXPECT_NE(o.err.find("grammar"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"residual"}).code, 2);
    EXPECT_EQ(run({"residual", "--w", "z", "--bogus", "1"}).code, 2);
    EXPECT_EQ(run({"residual", "--w", "z", "--variant", "weak"}).code, 2);
    EXPECT_EQ(run({"residual", "--w", "z", "--res", "4"}).code, 2);
    EXPECT_EQ(run({"residual", "--w", "foo(z)"}).code, 2);
    EXPECT_EQ(run({"cauchy-theorem", "--w", "z", "--transform", "sq"}).code, 2);
    EXPECT_EQ(run({"green", "--f", "z", "--region", "disc:0,0,-1"}).code, 2);
    EXPECT_EQ(run({"maxmod", "--w", "z", "--region", "rect:0,0,1,1"}).code, 2);
    EXPECT_EQ(run({"render", "--f", "z", "--pixels", "8,8"}).code, 2);
}

TEST(Cli, NumericalFailureExitsOne) {
    // Pole on the integration contour.
    const Outcome o = run({"cauchy-theorem", "--w", "1/(z - 1)", "--contour", "circle:0,0,1", "--n", "4"});
    EXPECT_EQ(o.code, 1);
    EXPECT_TRUE(o.out.empty());
    EXPECT_NE(o.err.find("error"), std::string::npos);
}

TEST(Cli, CbvAndGreenAndPompeiu) {
    EXPECT_EQ(run({"cbv", "--w", "exp(-conj(z))", "--A", "1"}).code, 0);
    EXPECT_EQ(run({"cbv", "--w", "conj(z)"}).code, 1);
    EXPECT_EQ(run({"green", "--f", "conj(z)"}).code, 0);
    const Outcome p = run({"pompeiu", "--w", "conj(z)", "--zeta", "0.5"});
    EXPECT_EQ(p.code, 0);
    EXPECT_LT(std::abs(report_of(p).complex("reconstructed") - 0.5), 1e-3);
}

TEST(Cli, PureComputationsCarryHolomorphyAnnotation) {
    const CheckReport e = report_of(run({"cauchy-eval", "--w", "exp(z)", "--z", "0.3", "--k", "0"}));
    EXPECT_LT(std::abs(e.complex("value") - std::exp(0.3)), 1e-10);
    EXPECT_EQ(e.number("holomorphic_precondition"), 1.0);
    EXPECT_TRUE(e.pass);

    const Outcome t = run({"taylor", "--w", "conj(z)", "--radius", "1", "--kmax", "3"});
    EXPECT_EQ(t.code, 0);
    EXPECT_EQ(report_of(t).number("holomorphic_precondition"), 0.0);

    const CheckReport s = report_of(run({"taylor", "--w", "3*z", "--radius", "2"}));
    EXPECT_LT(std::abs(s.complex("a_1") - 3.0), 1e-10);
}

TEST(Cli, Estimate) {
    const Outcome o = run({"estimate", "--w", "1/(1 - z)", "--R", "0.5", "--nmax", "5"});
    EXPECT_EQ(o.code, 0);
    EXPECT_GE(report_of(o).number("min_slack"), -1e-9);
}

TEST(Cli, Morera) {
    EXPECT_EQ(run({"morera", "--w", "z^2", "--region", "disc:0,0,0.5"}).code, 0);
    EXPECT_EQ(run({"morera", "--w", "z*conj(z)", "--region", "disc:0,0,0.5"}).code, 1);
}

TEST(Cli, SolveEmitsSolution) {
    const Outcome o = run({"solve", "--phi", "z", "--K", "conj(z)"});
    EXPECT_EQ(o.code, 0);
    const CheckReport r = report_of(o);
    const auto it = std::find_if(r.inputs.begin(), r.inputs.end(), [](const auto& kv) { return kv.first == "solution"; });
    ASSERT_NE(it, r.inputs.end());
    // The emitted expression is itself a valid input that passes the residual check.
    EXPECT_EQ(run({"residual", "--w", it->second, "--K", "conj(z)"}).code, 0);
}

TEST(Cli, Liouville) {
    const Outcome good = run({"liouville", "--w", "exp(-conj(z))", "--K", "conj(z)"});
    EXPECT_EQ(good.code, 0);
    const CheckReport g = report_of(good);
    EXPECT_EQ(g.number("product_numerically_entire"), 1.0);
    EXPECT_LT(std::abs(g.complex("phi_hat") - 1.0), 1e-12);

    const Outcome bad = run({"liouville", "--w", "exp(-conj(z)) + 0.001*conj(z)", "--K", "conj(z)"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_GT(report_of(bad).number("deviation"), 5e-4);
}

TEST(Cli, MaxModulus) {
    const CheckReport r = report_of(run({"maxmod", "--w", "exp(z)"}));
    EXPECT_LT(std::abs(r.complex("argmax") - 1.0), 1e-12);
    EXPECT_EQ(r.number("on_boundary"), 1.0);
    EXPECT_EQ(run({"maxmod", "--w", "exp(-z*conj(z))"}).code, 1);
    EXPECT_EQ(run({"maxmod", "--w", "4"}).code, 0);
}

TEST(Cli, JsonRoundTripIsByteIdentical) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"residual", "--w", "z*exp(-conj(z))", "--K", "conj(z)"},
          std::vector<std::string>{"cauchy-theorem", "--w", "exp(-conj(z))", "--K", "conj(z)"},
          std::vector<std::string>{"taylor", "--w", "sin(z)", "--kmax", "6"},
          std::vector<std::string>{"liouville", "--w", "exp(-z)", "--K", "z"}}) {
        const Outcome o = run(args);
        ASSERT_FALSE(o.out.empty());
        EXPECT_EQ(to_json(report_from_json(o.out)) + "\n", o.out);
    }
}

TEST(Cli, DeterministicAcrossRuns) {
    const std::vector<std::string> args = {"pompeiu", "--w", "exp(conj(z))*z", "--zeta", "0.2,0.1", "--res", "64"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(ReportJson, SchemaViolationsAreRejected) {
    EXPECT_THROW(report_from_json("[]"), Error);
    EXPECT_THROW(report_from_json("{\"check\":\"x\"}"), Error);
    EXPECT_THROW(report_from_json("not json"), Error);
    CheckReport r;
    r.check = "x";
    r.set("m", 1.0);
    r.n_points = 1;
    const std::string good = to_json(r);
    EXPECT_NO_THROW(report_from_json(good));
    std::string bad = good;
    bad.replace(bad.find("\"n_points\":1"), 12, "\"n_points\":-1");
    EXPECT_THROW(report_from_json(bad), Error);
}

TEST(ReportJson, NonFiniteMetricsCannotBeSerialized) {
    CheckReport r;
    r.set("m", std::nan(""));
    EXPECT_THROW(to_json(r), Error);
}

// ---- render ---------------------------------------------------------------------

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double lightness_of(const Image& img, std::size_t col, std::size_t row) {
    const std::uint8_t* p = &img.rgb[(row * img.width + col) * 3];
    const auto [lo, hi] = std::minmax({p[0], p[1], p[2]});
    return (static_cast<double>(lo) + static_cast<double>(hi)) / 2.0 / 255.0;
}

}  // namespace

TEST(Render, PpmHeaderAndSize) {
    const std::string path = temp_path("header.ppm");
    const Outcome o = run({"render", "--f", "z", "--pixels", "32,20", "--out", path});
    EXPECT_EQ(o.code, 0);
    const std::string bytes = slurp(path);
    const std::string header = "P6\n32 20\n255\n";
    ASSERT_GE(bytes.size(), header.size());
    EXPECT_EQ(bytes.substr(0, header.size()), header);
    EXPECT_EQ(bytes.size(), header.size() + 32 * 20 * 3);
    std::remove(path.c_str());
}

TEST(Render, StructuralSolutionHasColumnConstantLightness) {
    // |e^{-conj z}| = e^{-x}, so lightness depends on the column only.
    const Image img = render_domain_coloring(parse("exp(-conj(z))"), Window{}, 64, 48);
    for (std::size_t col = 0; col < img.width; ++col) {
        const double expected = domain_lightness(std::exp(-pixel_center(Window{}, 64, 48, col, 0).real()));
        for (std::size_t row = 0; row < img.height; ++row)
            EXPECT_NEAR(lightness_of(img, col, row), expected, 1.0 / 255.0 + 1e-12);
    }
}

TEST(Render, IdentityShowsTheHueWheel) {
    const Window w{};
    EXPECT_NEAR(domain_hue(pixel_center(w, 64, 64, 63, 31)), 0.0, 0.02);  // near the positive real axis
    for (std::size_t col = 0; col < 64; ++col)
        for (std::size_t row = 0; row < 64; ++row) {
            const Complex c = pixel_center(w, 64, 64, col, row);
            double expected = std::atan2(c.imag(), c.real()) / (2.0 * pi);
            if (expected < 0.0) expected += 1.0;
            EXPECT_DOUBLE_EQ(domain_hue(c), expected);
        }
    // Pure red on the positive real axis at |f| = 1.
    std::uint8_t rgb[3];
    detail::hsl_to_rgb(domain_hue(1.0), domain_lightness(1.0), rgb);
    EXPECT_EQ(rgb[0], 255);
    EXPECT_EQ(rgb[1], 0);
    EXPECT_EQ(rgb[2], 0);
}

TEST(Render, PoleAtCenterPixelIsBlack) {
    const Image img = render_domain_coloring(parse("1/sin(z)"), Window{-1, -1, 1, 1}, 17, 17);
    EXPECT_EQ(img.black_pixels, 1u);
    const std::uint8_t* p = &img.rgb[(8 * 17 + 8) * 3];
    EXPECT_EQ(p[0] + p[1] + p[2], 0);
}

TEST(Render, InvalidWindow) {
    EXPECT_THROW(render_domain_coloring(parse("z"), Window{1, -1, -1, 1}, 16, 16), InvalidSpecError);
    EXPECT_THROW(render_domain_coloring(parse("z"), Window{}, 15, 16), InvalidSpecError);
}
