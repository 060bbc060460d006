#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "wirt/area.hpp"
#include "wirt/quadrature.hpp"

using namespace wirt;

namespace {

const RegionSpec unit_disc{Disc{0.0, 1.0}};

// Residue-calculus oracle for the area integral of 1/(z - zeta) over the unit
// disc. On the circle |z| = r, dtheta = dz/(iz), so the angular integral is
// (2 pi) times the sum of residues of 1/(z (z - zeta)) inside |z| = r:
// -1/zeta from z = 0 and +1/zeta from z = zeta (only when r > |zeta|).
// The radial integral of r times that piecewise constant is done exactly.
Complex cauchy_kernel_area_oracle(Complex zeta) {
    const double a = std::abs(zeta);
    const Complex inner_small = 2.0 * pi * (-1.0 / zeta);     // r < |zeta|
    const Complex inner_large = 2.0 * pi * (-1.0 / zeta + 1.0 / zeta);  // r > |zeta|
    return inner_small * (a * a / 2.0) + inner_large * ((1.0 - a * a) / 2.0);
}

}  // namespace

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    for (std::size_t n : {1u, 2u, 5u, 16u, 64u, 257u}) {
        const auto rule = gauss_legendre(n);
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        EXPECT_NEAR(wsum, 2.0, 1e-13) << n;
        // x^(2n-2) integrates to 2/(2n-1).
        const int deg = static_cast<int>(2 * n - 2);
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += rule.weights[k] * std::pow(rule.nodes[k], deg);
        EXPECT_NEAR(s, 2.0 / (deg + 1), 1e-13) << n;
        for (std::size_t k = 1; k < n; ++k) EXPECT_LT(rule.nodes[k - 1], rule.nodes[k]);
    }
}

TEST(AreaIntegral, UnitDiscArea) {
    EXPECT_NEAR(std::abs(area_integral(parse("1"), unit_disc).value - pi), 0.0, 1e-10);
}

TEST(AreaIntegral, OddIntegrandVanishes) {
    EXPECT_LT(std::abs(area_integral(parse("z"), unit_disc).value), 1e-10);
}

TEST(AreaIntegral, RectangleMoments) {
    const RegionSpec rect{Rectangle{{0.0, 0.0}, {2.0, 1.0}}, 16, 16};
    // x^2 + i y over [0,2]x[0,1]: 8/3 + i.
    const AreaResult r = area_integral(parse("((z + conj(z))/2)^2 + (z - conj(z))/2"), rect);
    EXPECT_LT(std::abs(r.value - Complex(8.0 / 3.0, 1.0)), 1e-13);
    EXPECT_EQ(r.n_points, 256u);
}

TEST(AreaIntegral, GreenIdentityAgainstLineIntegral) {
    const Complex area_side = 2.0 * I * integrate_area(unit_disc, [](Complex z) {
                                  return eval_jet(parse("conj(z)"), z).d_zbar;
                              }).value;
    const Complex line_side = line_integral(parse("conj(z)"), Circle{0.0, 1.0, +1});
    EXPECT_LT(std::abs(area_side - 2.0 * pi * I), 1e-8);
    EXPECT_LT(std::abs(line_side - 2.0 * pi * I), 1e-8);
    EXPECT_LT(std::abs(area_side - line_side), 1e-8);
}

TEST(AreaIntegral, SkipsAreCountedAndBounded) {
    // One lattice node is exactly at the pole: at most 0.1% skipped, so fine.
    const RegionSpec rect{Rectangle{{-1.0, -1.0}, {1.0, 1.0}}, 33, 33};
    const Expr f = parse("1/(z - " + wirt::detail::format_real(gauss_legendre(33).nodes[20]) + ")");
    // 33x33 = 1089 points, one skip is under 0.1%.
    const AreaResult r = area_integral(f, rect);
    EXPECT_EQ(r.n_skipped, 1u);
    // A line of poles is too many.
    const Expr g = parse("1/(z - conj(z))");
    try {
        area_integral(g, RegionSpec{Rectangle{{-1.0, -1.0}, {1.0, 1.0}}, 8, 9});
        FAIL();
    } catch (const ExcessiveSkipsError& e) {
        EXPECT_GT(e.skipped(), 0u);
    }
}

TEST(AreaIntegral, InvalidRegions) {
    EXPECT_THROW(area_integral(parse("1"), RegionSpec{Disc{0.0, 0.0}}), InvalidSpecError);
    EXPECT_THROW(area_integral(parse("1"), RegionSpec{Rectangle{{1.0, 0.0}, {0.0, 1.0}}}), InvalidSpecError);
    EXPECT_THROW(area_integral(parse("1"), RegionSpec{Disc{0.0, 1.0}, 4, 16}), InvalidSpecError);
}

TEST(SingularAreaIntegral, CenteredConstantVanishes) {
    EXPECT_LT(std::abs(singular_area_integral(parse("1"), unit_disc, 0.0).value), 1e-8);
}

TEST(SingularAreaIntegral, OffCenterConstantMatchesResidueOracle) {
    const Complex oracle = cauchy_kernel_area_oracle(0.5);
    EXPECT_LT(std::abs(oracle - Complex(-pi * 0.5)), 1e-15);
    EXPECT_LT(std::abs(singular_area_integral(parse("1"), unit_disc, 0.5).value - oracle), 1e-6);
}

TEST(SingularAreaIntegral, KernelCancelsForIdentity) {
    EXPECT_LT(std::abs(singular_area_integral(parse("z"), unit_disc, 0.0).value - pi), 1e-8);
}

TEST(SingularAreaIntegral, RandomInteriorPointsMatchOracle) {
    for (Complex zeta : test::random_points(20, 77, 0.95)) {
        const Complex got = singular_area_integral(parse("1"), unit_disc, zeta).value;
        EXPECT_LT(std::abs(got - cauchy_kernel_area_oracle(zeta)), 1e-5) << zeta;
    }
}

TEST(SingularAreaIntegral, LinearInIntegrand) {
    const Expr f = parse("exp(conj(z))"), g = parse("z*conj(z)^2");
    const Complex a{2.0, -1.0}, b{0.5, 0.5}, zeta{0.2, -0.4};
    const RegionSpec d{Disc{{0.1, 0.0}, 0.9}, 64, 64};
    const Complex lhs = singular_area_integral(Expr::constant(a) * f + Expr::constant(b) * g, d, zeta).value;
    const Complex rhs = a * singular_area_integral(f, d, zeta).value + b * singular_area_integral(g, d, zeta).value;
    EXPECT_LT(test::rel_err(lhs, rhs), 1e-12);
}

TEST(SingularAreaIntegral, ConvergesUnderRefinement) {
    // Smooth non-polynomial density on an off-center disc; reference at 512.
    const Expr f = parse("exp(z*conj(z)) * cos(conj(z))");
    const Disc disc{{0.2, 0.1}, 1.3};
    const Complex zeta{0.4, -0.3};
    const Complex ref = integrate_cauchy_kernel(disc, 512, 512, zeta, [&](Complex z) { return evaluate(f, z); }).value;
    double prev = INFINITY;
    for (std::size_t n : {8u, 16u, 32u}) {
        const Complex v =
            integrate_cauchy_kernel(disc, n, n, zeta, [&](Complex z) { return evaluate(f, z); }).value;
        const double err = std::abs(v - ref);
        if (prev > 1e-13) {
            EXPECT_LT(err, prev / 4.0) << n;  // at least second order until round-off
        }
        prev = err;
    }
    EXPECT_LT(prev, 1e-10);
}

TEST(SingularAreaIntegral, PointMustBeInterior) {
    EXPECT_THROW(singular_area_integral(parse("1"), unit_disc, 1.0), InvalidSpecError);
    EXPECT_THROW(singular_area_integral(parse("1"), unit_disc, Complex(1.0 - 1e-8, 0.0)), InvalidSpecError);
    EXPECT_THROW(singular_area_integral(parse("1"), RegionSpec{Rectangle{{0.0, 0.0}, {1.0, 1.0}}}, 0.5),
                 InvalidSpecError);
}

TEST(GridPoints, Layouts) {
    const auto rect = grid_points(RegionSpec{Rectangle{{-1.0, -1.0}, {1.0, 1.0}}, 32, 32});
    ASSERT_EQ(rect.size(), 1024u);
    EXPECT_EQ(rect.front(), Complex(-1.0, -1.0));
    EXPECT_EQ(rect.back(), Complex(1.0, 1.0));
    const auto disc = grid_points(RegionSpec{Disc{0.0, 2.0}, 9, 16});
    ASSERT_EQ(disc.size(), 1u + 8u * 16u);
    EXPECT_EQ(disc.front(), Complex(0.0));
    EXPECT_NEAR(std::abs(disc.back()), 2.0, 1e-15);
}

TEST(ParseRegion, Syntax) {
    const RegionSpec d = parse_region("disc:1,2,3", 64, 32);
    EXPECT_EQ(std::get<Disc>(d.shape).radius, 3.0);
    EXPECT_EQ(d.n1, 64u);
    EXPECT_EQ(d.n2, 32u);
    EXPECT_EQ(std::get<Rectangle>(parse_region("rect:-1,-2,3,4").shape).max, Complex(3.0, 4.0));
    for (const char* bad : {"disc:0,0", "disc:0,0,0", "rect:0,0,0,1", "rect:1,1,0,0", "ring:1"})
        EXPECT_THROW(parse_region(bad), InvalidSpecError) << bad;
}
