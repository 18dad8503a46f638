#include "doctest.h"

#include <cmath>

#include "civita/delta.hpp"
#include "civita/integrate.hpp"
#include "helpers.hpp"

using namespace civita;
using testgen::exact_cfg;

namespace {

const Config X = exact_cfg();

LCNumber rc(std::int64_t n, std::int64_t d = 1) {
    return LCNumber::real(Coeff(Rational(n, d)), X);
}
LCNumber rd(double v) { return LCNumber::real(Coeff(v), X); }
LCNumber dd() { return LCNumber::d(X); }

LCNumber unit_integral(const DeltaSpec& spec, const Piecewise& bump) {
    Interval supp(spec.center - spec.half_width, spec.center + spec.half_width);
    return integral_simple(bump, MeasurableSet({supp}));
}

} // namespace

TEST_CASE("bump normalizer follows the even-power recurrence") {
    CHECK(bump_normalizer(0) == Rational(4, 3));
    CHECK(bump_normalizer(1) == Rational(16, 15));
    CHECK(bump_normalizer(2) == Rational(32, 35));
    CHECK(bump_normalizer(3) == Rational(256, 315));

    // cross-check against real quadrature of (1-x^2)^{k+1} over [-1, 1]
    for (int k = 0; k <= 8; ++k) {
        RealExpr e = expr_pow_int(
            expr_sub(expr_const(Coeff(Rational(1))), expr_pow_int(expr_var(), 2)), k + 1);
        double by_quad = quad(e, -1.0, 1.0, 1e-12);
        CHECK(std::fabs(by_quad - bump_normalizer(k).to_double()) <= 1e-11);
    }
}

TEST_CASE("bump construction and exact unit mass") {
    auto [spec, bump] = make_delta(rc(0), dd(), 0);
    // c (1 - u^2) with c = 3/(4h): coefficient of (x-r)^0 is (3/4) d^{-1}
    const auto& coeffs = bump.pieces().front().coeffs();
    REQUIRE(coeffs.size() == 3);
    CHECK(coeffs[0].coefficient(Rational(-1)).rat() == Rational(3, 4));
    CHECK(coeffs[1].is_zero());
    CHECK(coeffs[2].coefficient(Rational(-3)).rat() == Rational(-3, 4));

    CHECK(unit_integral(spec, bump) == rc(1));

    // vanishing at the support boundary, non-negative inside
    CHECK(bump(rc(0) + dd()).is_zero());
    CHECK(bump(rc(0) - dd()).is_zero());
    for (auto& x : {rc(0), rc(0) + dd() * rc(1, 2), rc(0) - dd() * rc(3, 4)})
        CHECK(compare(bump(x), rc(0)) != Cmp::LT);

    // exact unit mass across smoothness orders and widths
    for (int k = 0; k <= 8; ++k) {
        auto [s1, b1] = make_delta(rc(0), dd(), k);
        CHECK(unit_integral(s1, b1) == rc(1));
        auto [s2, b2] = make_delta(rc(1, 2), dd() * dd(), k);
        CHECK(unit_integral(s2, b2) == rc(1));
        auto [s3, b3] = make_delta(rc(0) - rc(2), dd() * rc(1, 2), k);
        CHECK(unit_integral(s3, b3) == rc(1));
    }
    // series-valued width
    for (int k = 0; k <= 3; ++k) {
        auto [s4, b4] = make_delta(rc(0), dd() + dd() * dd(), k);
        CHECK(unit_integral(s4, b4) == rc(1));
    }
}

TEST_CASE("bump preconditions") {
    CHECK_THROWS_AS(make_delta(rc(0), rc(1), 0), std::domain_error);        // h appreciable
    CHECK_THROWS_AS(make_delta(rc(0), rc(0) - dd(), 0), std::domain_error); // h negative
    CHECK_THROWS_AS(make_delta(inv(dd()), dd(), 0), std::domain_error);     // r infinite
    CHECK_THROWS_AS(make_delta(rc(0), dd(), -1), std::invalid_argument);
}

TEST_CASE("sifting against continuous functions") {
    auto [spec, bump] = make_delta(rd(0.3), dd(), 1);

    ExtensionFn sine(parse_expr("sin(x)"), 3, -2.0, 2.0);
    PairingReport rep = pair_delta_report(spec, sine);
    CHECK(rep.within_tol);
    CHECK(std::fabs(rep.computed - std::sin(0.3)) <= 1e-9);

    auto [s0, b0] = make_delta(rc(0), dd(), 0);
    ExtensionFn one(parse_expr("1"), 0, -2.0, 2.0);
    CHECK(std::fabs(pair_delta(s0, one) - 1.0) <= 1e-15);

    auto [s5, b5] = make_delta(rc(1, 2), dd(), 2);
    ExtensionFn cubic(parse_expr("x^3 - x"), 3, -2.0, 2.0);
    CHECK(std::fabs(pair_delta(s5, cubic) - (-0.375)) <= 1e-12);
}

TEST_CASE("sifting sees only the monad-level data") {
    // center with an infinitesimal offset pairs like its standard part
    auto [spec, bump] = make_delta(rd(0.3) + dd() * dd(), dd() * dd() * dd(), 1);
    ExtensionFn sine(parse_expr("sin(x)"), 4, -2.0, 2.0);
    CHECK(std::fabs(pair_delta(spec, sine) - std::sin(0.3)) <= 1e-9);
}

TEST_CASE("derivative pairing") {
    // m = 1, f = sin, r = 0: -cos(0) = -1
    auto [s1, b1] = make_delta(rc(0), dd(), 2);
    ExtensionFn sine(parse_expr("sin(x)"), 4, -2.0, 2.0);
    PairingReport r1 = pair_delta_derivative_report(s1, 1, sine);
    CHECK(r1.within_tol);
    CHECK(std::fabs(r1.computed - (-1.0)) <= 1e-9);

    // m = 0 reduces to the plain pairing
    CHECK(pair_delta_derivative(s1, 0, sine) == pair_delta(s1, sine));

    // m = 2, f = x^3, r = 1: (+1) * 6
    auto [s2, b2] = make_delta(rc(1), dd(), 2);
    ExtensionFn cubic(parse_expr("x^3"), 3, -2.0, 2.0);
    CHECK(std::fabs(pair_delta_derivative(s2, 2, cubic) - 6.0) <= 1e-9);

    // degenerate order: j < m gives exactly zero
    ExtensionFn low(parse_expr("x^2"), 1, -2.0, 2.0);
    CHECK(pair_delta_derivative(s2, 2, low) == 0.0);

    // insufficient smoothness
    auto [s3, b3] = make_delta(rc(0), dd(), 1);
    CHECK_THROWS_AS(pair_delta_derivative(s3, 3, sine), std::invalid_argument);

    // center at the domain boundary is rejected
    ExtensionFn edge(parse_expr("sin(x)"), 2, 0.0, 1.0);
    CHECK_THROWS_AS(pair_delta(s3, edge), std::domain_error);
}

TEST_CASE("width independence") {
    ExtensionFn f(parse_expr("exp(x)"), 4, -2.0, 2.0);
    auto [s1, b1] = make_delta(rd(0.25), dd(), 2);
    auto [s2, b2] = make_delta(rd(0.25), dd() * dd(), 2);
    auto [s3, b3] = make_delta(rd(0.25), dd() * rc(1, 2), 2);
    double v1 = pair_delta(s1, f);
    double v2 = pair_delta(s2, f);
    double v3 = pair_delta(s3, f);
    CHECK(std::fabs(v1 - v2) <= 1e-9);
    CHECK(std::fabs(v1 - v3) <= 1e-9);
    for (int m : {1, 2}) {
        double w1 = pair_delta_derivative(s1, m, f);
        double w2 = pair_delta_derivative(s2, m, f);
        CHECK(std::fabs(w1 - w2) <= 1e-9);
    }
}

TEST_CASE("delta products integrate through the m-integral dispatch") {
    auto [spec, bump] = make_delta(rd(0.3), dd(), 1);
    ExtensionFn sine(parse_expr("sin(x)"), 2, -2.0, 2.0);
    IntegrateOptions o;
    o.cfg = X;

    ExtReal v = m_integral(DeltaProduct{spec, sine}, Region::finite_part(), o);
    CHECK(std::fabs(v.to_double() - std::sin(0.3)) <= 1e-9);

    // over a measurable set containing the support
    ExtReal w = m_integral(DeltaProduct{spec, sine},
                           Region::interval(Interval(rc(0) - rc(1), rc(1))), o);
    CHECK(std::fabs(w.to_double() - std::sin(0.3)) <= 1e-9);

    // support not contained: refused
    CHECK_THROWS_AS(m_integral(DeltaProduct{spec, sine},
                               Region::interval(Interval(rc(1), rc(2))), o),
                    std::domain_error);
}
