#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "wirt/contour.hpp"

using namespace wirt;

namespace {
const ContourSpec unit_circle = Circle{0.0, 1.0, +1};
const ContourSpec unit_square = Polygon{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
}  // namespace

TEST(SampleContour, CircleNodesAreEquispaced) {
    const auto nodes = sample_contour(unit_circle, 4);
    ASSERT_EQ(nodes.size(), 4u);
    const Complex expected[] = {1.0, I, -1.0, -I};
    for (int k = 0; k < 4; ++k) EXPECT_LT(std::abs(nodes[k].point - expected[k]), 1e-15);
}

TEST(SampleContour, MeasureSumsToZeroOnClosedCurves) {
    Parametric ellipse;
    for (int k = 0; k < 64; ++k) {
        const double t = 2.0 * pi * k / 64.0;
        ellipse.nodes.push_back({{2.0 * std::cos(t), std::sin(t)}, {-2.0 * std::sin(t), std::cos(t)}});
    }
    for (const ContourSpec& c : {unit_circle, unit_square, ContourSpec{Circle{{1.0, -2.0}, 3.0, -1}},
                                 ContourSpec{ellipse}}) {
        KahanSum s;
        for (const auto& node : sample_contour(c, 64)) s.add(node.dz);
        EXPECT_LT(std::abs(s.value()), 1e-14);
    }
}

TEST(SampleContour, PolygonUsesGaussNodesPerEdge) {
    const auto nodes = sample_contour(unit_square, 8);
    EXPECT_EQ(nodes.size(), 32u);
    // Perimeter: sum of |dz| over nodes.
    double perimeter = 0.0;
    for (const auto& n : nodes) perimeter += std::abs(n.dz);
    EXPECT_NEAR(perimeter, 4.0, 1e-14);
}

TEST(SampleContour, InvalidSpecs) {
    EXPECT_THROW(sample_contour(Circle{0.0, 0.0, +1}, 16), InvalidSpecError);
    EXPECT_THROW(sample_contour(Circle{0.0, -1.0, +1}, 16), InvalidSpecError);
    EXPECT_THROW(sample_contour(Polygon{{0.0, 1.0}}, 16), InvalidSpecError);
    EXPECT_THROW(sample_contour(Polygon{{0.0, 1.0, 1.0, I}}, 16), InvalidSpecError);
    EXPECT_THROW(sample_contour(Parametric{{{1.0, I}}}, 16), InvalidSpecError);
}

TEST(LineIntegral, ResidueAtOrigin) {
    EXPECT_LT(std::abs(line_integral(parse("1/z"), unit_circle, 64) - 2.0 * pi * I), 1e-12);
}

TEST(LineIntegral, PolynomialVanishes) {
    EXPECT_LT(std::abs(line_integral(parse("z^2"), unit_circle)), 1e-12);
    EXPECT_LT(std::abs(line_integral(parse("z^2"), unit_square)), 1e-12);
}

TEST(LineIntegral, ConjugateGivesTwiceAreaTimesI) {
    // Green oracle: closed integral of conj(z) dz = 2i * area.
    EXPECT_LT(std::abs(line_integral(parse("conj(z)"), unit_circle) - 2.0 * I * pi), 1e-12);
    EXPECT_LT(std::abs(line_integral(parse("conj(z)"), unit_square) - 2.0 * I * 1.0), 1e-12);
}

TEST(LineIntegral, PoleOnContourIsAnError) {
    EXPECT_THROW(line_integral(parse("1/(z-1)"), unit_circle, 64), EvaluationError);
}

TEST(LineIntegral, SpectralConvergenceOnCircle) {
    const Expr f = parse("exp(z)/z");
    double prev = std::abs(line_integral(f, unit_circle, 4) - 2.0 * pi * I);
    for (std::size_t n = 8; n <= 64; n *= 2) {
        const double err = std::abs(line_integral(f, unit_circle, n) - 2.0 * pi * I);
        if (prev > 1e-13) EXPECT_LE(err, prev / 10.0) << "n=" << n;
        else EXPECT_LE(err, 1e-13) << "n=" << n;
        prev = err;
    }
}

TEST(LineIntegral, LinearInTheIntegrand) {
    const Expr f = parse("exp(-conj(z)) * z"), g = parse("sin(z) + conj(z)^2");
    const Complex a{0.5, 2.0}, b{-1.25, 0.75};
    const Expr combo = Expr::constant(a) * f + Expr::constant(b) * g;
    for (const ContourSpec& c : {unit_circle, unit_square}) {
        const Complex lhs = line_integral(combo, c);
        const Complex rhs = a * line_integral(f, c) + b * line_integral(g, c);
        EXPECT_LT(test::rel_err(lhs, rhs), 1e-12);
    }
}

TEST(LineIntegral, ReversingOrientationNegatesExactly) {
    const Expr f = parse("exp(-conj(z)) + 1/(z - 0.2)");
    const Complex ccw = line_integral(f, Circle{{0.1, 0.1}, 0.8, +1});
    const Complex cw = line_integral(f, Circle{{0.1, 0.1}, 0.8, -1});
    EXPECT_EQ(cw, -ccw);
}

TEST(WindingNumber, Examples) {
    EXPECT_EQ(winding_number(unit_circle, 0.0).winding, 1);
    EXPECT_EQ(winding_number(unit_circle, 3.0).winding, 0);
    EXPECT_EQ(winding_number(Circle{0.0, 1.0, -1}, 0.0).winding, -1);
    EXPECT_LT(winding_number(unit_circle, 0.0).residual, 1e-12);
}

TEST(WindingNumber, NearTheCurveAndOnPolygons) {
    EXPECT_EQ(winding_number(unit_circle, 0.999).winding, 1);
    EXPECT_EQ(winding_number(unit_circle, 1.001).winding, 0);
    EXPECT_EQ(winding_number(unit_square, Complex(0.5, 0.5)).winding, 1);
    EXPECT_EQ(winding_number(unit_square, Complex(0.5, 0.999)).winding, 1);
    EXPECT_EQ(winding_number(unit_square, Complex(1.5, 0.5)).winding, 0);
}

TEST(WindingNumber, PointOnContourIsRejected) {
    EXPECT_THROW(winding_number(unit_circle, 1.0), InvalidSpecError);
    EXPECT_THROW(winding_number(unit_square, Complex(0.5, 0.0)), InvalidSpecError);
}

TEST(ParseContour, Syntax) {
    const ContourSpec c = parse_contour("circle:1,-2,0.5,cw");
    const auto& circle = std::get<Circle>(c);
    EXPECT_EQ(circle.center, Complex(1.0, -2.0));
    EXPECT_EQ(circle.radius, 0.5);
    EXPECT_EQ(circle.orientation, -1);
    EXPECT_EQ(std::get<Circle>(parse_contour("circle:0,0,1")).orientation, +1);
    const ContourSpec p = parse_contour("poly:0,0;1,0;1,1;0,1");
    EXPECT_EQ(std::get<Polygon>(p).vertices.size(), 4u);
    EXPECT_EQ(std::get<Polygon>(parse_contour("poly:0,0;1,0;1,1;0,1;0,0")).vertices.size(), 4u);
    for (const char* bad : {"circle:0,0", "circle:0,0,-1", "circle:0,0,1,up", "poly:0,0;1,1", "poly:0,0;1;2,2",
                            "square:1", "circle:a,0,1"})
        EXPECT_THROW(parse_contour(bad), InvalidSpecError) << bad;
}
