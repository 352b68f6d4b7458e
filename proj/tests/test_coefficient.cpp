#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "puccilab/coefficient.hpp"

using namespace puccilab;

namespace {

RadialPiecewise constant_then(const TermSum& piece, int dim, double r1, double r2) {
    RadialPiecewise f;
    f.dim = dim;
    f.breakpoints = {0.0, r1, r2};
    f.pieces = {{BasisTerm::constant(sum_value(piece, r1))}, piece};
    f.validate();
    return f;
}

}  // namespace

TEST_CASE("sign analysis: explicit root formulas") {
    // c r^{-d} - d r^{-c}: increasing and concave on (eps, 1)
    const TermSum annulus = {BasisTerm::power(2.0, -1.0), BasisTerm::power(-1.0, -2.0)};
    const SignInfo d1 = derivative_sign_on(annulus, 0.25, 1.0);
    CHECK(d1.stable);
    CHECK(d1.sign == 1);
    const SignInfo d2 = second_derivative_sign_on(annulus, 0.25, 1.0);
    CHECK(d2.stable);
    CHECK(d2.sign == -1);

    // widen the interval past the curvature root ((c+1)/(d+1))^{1/(c-d)} = 1.5
    const SignInfo d2_wide = second_derivative_sign_on(annulus, 0.25, 2.0);
    CHECK_FALSE(d2_wide.stable);

    // shifted square: derivative flips at the center
    const TermSum bridge = {BasisTerm::shifted_square(-2.0, 1.0), BasisTerm::constant(3.0)};
    const SignInfo b1 = derivative_sign_on(bridge, 0.5, 0.9);
    CHECK(b1.stable);
    CHECK(b1.sign == 1);
    CHECK_FALSE(derivative_sign_on(bridge, 0.5, 1.5).stable);
    const SignInfo b2 = second_derivative_sign_on(bridge, 0.5, 1.5);
    CHECK(b2.stable);
    CHECK(b2.sign == -1);
}

TEST_CASE("zero_crossing finds the sign change") {
    const TermSum terms = {BasisTerm::power(1.0, 2.0), BasisTerm::constant(-0.25)};
    const auto crossing = zero_crossing(terms, 0.0, 1.0);
    REQUIRE(crossing.has_value());
    CHECK(*crossing == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_FALSE(zero_crossing(terms, 0.6, 1.0).has_value());
}

TEST_CASE("induced coefficient: exponential annulus sheds its denominator") {
    const EllipticityPair e = EllipticityPair::strict(1.0, 2.0);
    const int dim = 3;
    const double k = 10.0;
    RadialPiecewise u = constant_then({BasisTerm::exp_term(1.0, -1.0 / k)}, dim, 0.2, 3.0);

    const CoefficientField a = induced_coefficient(u, e, OpSign::Plus);
    REQUIRE(a.piece_count() == 2);
    CHECK(a.pieces[0].mode == CoefPiece::Mode::Zero);  // constant core
    REQUIRE(a.pieces[1].mode == CoefPiece::Mode::Closed);
    CHECK(a.pieces[1].den.empty());
    REQUIRE(a.pieces[1].num.size() == 2);

    const double rbar = e.lambda * (dim - 1);
    for (double r : {0.5, 1.0, 2.5}) {
        CHECK(a.eval(r) == doctest::Approx(rbar / (k * r) - e.Lambda / (k * k)).epsilon(1e-13));
    }
}

TEST_CASE("induced coefficient: proportional two-power annulus") {
    // c + d = (Lambda/lambda)(N-1) - 1 = 3 for N=3, lambda=1, Lambda=2
    const EllipticityPair e = EllipticityPair::strict(1.0, 2.0);
    const double c = 2.0, d = 1.0;
    RadialPiecewise u =
        constant_then({BasisTerm::power(c, -d), BasisTerm::power(-d, -c)}, 3, 0.25, 1.0);

    const CoefficientField a = induced_coefficient(u, e, OpSign::Plus);
    REQUIRE(a.pieces[1].mode == CoefPiece::Mode::Closed);
    CHECK(a.pieces[1].den.empty());
    REQUIRE(a.pieces[1].num.size() == 1);
    CHECK(a.pieces[1].num[0].kind == CoefTermKind::Power);
    CHECK(a.pieces[1].num[0].param == -2.0);
    CHECK(a.pieces[1].num[0].coef == doctest::Approx(e.lambda * c * d).epsilon(1e-13));
}

TEST_CASE("induced coefficient: quadratic core keeps the profile denominator") {
    const EllipticityPair e = EllipticityPair::strict(1.0, 2.0);
    const double k1 = 0.5, k2 = 0.25;
    RadialPiecewise u;
    u.dim = 3;
    u.breakpoints = {0.0, 1.0};
    u.pieces = {{BasisTerm::power(k1, 2.0), BasisTerm::constant(k2)}};
    u.validate();

    const CoefficientField a = induced_coefficient(u, e, OpSign::Plus);
    REQUIRE(a.pieces[0].mode == CoefPiece::Mode::Closed);
    CHECK_FALSE(a.pieces[0].den.empty());
    for (double r : {0.1, 0.5, 0.9}) {
        const double expected = -2.0 * k1 * 3 * e.Lambda / (k1 * r * r + k2);
        CHECK(a.eval(r) == doctest::Approx(expected).epsilon(1e-13));
    }
}

TEST_CASE("induced coefficient: harmonic tails vanish identically") {
    const EllipticityPair e = EllipticityPair::strict(1.0, 3.0);
    const int dim = 4;
    const double alpha = e.alpha(dim);  // (1/3)*3 + 1 = 2: log branch
    REQUIRE(alpha == doctest::Approx(2.0));
    RadialPiecewise u = constant_then(
        {BasisTerm::constant(std::log(2.0)), BasisTerm::log_term(-1.0)}, dim, 0.5, 2.0);
    const CoefficientField a = induced_coefficient(u, e, OpSign::Plus);
    CHECK(a.pieces[1].mode == CoefPiece::Mode::Zero);

    // power branch: r^{2-alpha} - R^{2-alpha} is decreasing-convex
    const EllipticityPair e2 = EllipticityPair::strict(1.0, 2.0);
    const double alpha2 = e2.alpha(4);  // 2.5
    const double p = 2.0 - alpha2;
    RadialPiecewise v = constant_then(
        {BasisTerm::power(1.0, p), BasisTerm::constant(-std::pow(2.0, p))}, 4, 0.5, 2.0);
    const CoefficientField b = induced_coefficient(v, e2, OpSign::Plus);
    CHECK(b.pieces[1].mode == CoefPiece::Mode::Zero);
}

TEST_CASE("induced coefficient: vanishing profile with nonzero numerator is an error") {
    const EllipticityPair e = EllipticityPair::strict(1.0, 2.0);
    RadialPiecewise u;
    u.dim = 3;
    u.breakpoints = {0.0, 1.0};
    u.pieces = {{BasisTerm::power(1.0, 2.0), BasisTerm::constant(-0.25)}};
    u.validate();

    const InducedResult checked = induced_coefficient_checked(u, e, OpSign::Plus);
    REQUIRE(checked.errors.size() == 1);
    CHECK(checked.errors[0].piece == 0);
    CHECK(checked.errors[0].crossing_radius == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_THROWS_AS(induced_coefficient(u, e, OpSign::Plus), std::domain_error);
}

TEST_CASE("positive_part: constants and mixed-sign pieces") {
    const CoefficientField neg = CoefficientField::constant(2, 1.0, -5.0);
    const CoefficientField neg_plus = positive_part(neg);
    CHECK(neg_plus.pieces[0].mode == CoefPiece::Mode::Zero);
    CHECK(neg_plus.eval(0.5) == 0.0);

    // a(r) = r - 1 on (0, 2)
    CoefficientField mixed = CoefficientField::closed(
        2, {0.0, 2.0}, {{CoefTerm{CoefTermKind::Power, 1.0, 1.0}, CoefTerm{CoefTermKind::Constant, -1.0, 0.0}}});
    const CoefficientField mixed_plus = positive_part(mixed);
    CHECK(mixed_plus.eval(0.5) == 0.0);
    CHECK(mixed_plus.eval(1.5) == doctest::Approx(0.5));

    // idempotence, pointwise
    const CoefficientField twice = positive_part(mixed_plus);
    for (int s = 0; s < 200; ++s) {
        const double r = 2.0 * (s + 0.5) / 200.0;
        CHECK(twice.eval(r) == mixed_plus.eval(r));
    }
}

TEST_CASE("positive_part keeps nonnegative closed forms unchanged") {
    CoefficientField f = CoefficientField::closed(
        3, {0.0, 1.0}, {{CoefTerm{CoefTermKind::Power, 2.0, -2.0}}});
    const CoefficientField fp = positive_part(f);
    CHECK(fp.pieces[0].mode == CoefPiece::Mode::Closed);
    CHECK_FALSE(fp.pieces[0].clip_negative);
    CHECK(fp.eval(0.5) == f.eval(0.5));
}
