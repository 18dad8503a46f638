#include "doctest.h"

#include <cmath>

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

Piecewise poly_on(Interval iv, std::vector<LCNumber> coeffs) {
    LCNumber c = iv.lo;
    return Piecewise({PowerSeries(iv, c, std::move(coeffs))});
}

IntegrateOptions opts() {
    IntegrateOptions o;
    o.cfg = X;
    return o;
}

} // namespace

TEST_CASE("field-valued integral of simple functions") {
    // f = 1 over [0, 1+d]
    Piecewise one = poly_on(Interval(rc(0), rc(2)), {rc(1)});
    MeasurableSet A({Interval(rc(0), rc(1) + dd())});
    CHECK(integral_simple(one, A) == rc(1) + dd());

    // additivity across a split set
    Piecewise x2 = poly_on(Interval(rc(0), rc(1)), {rc(0), rc(0), rc(1)});
    MeasurableSet halves(
        {Interval(rc(0), rc(1, 2), true, false), Interval(rc(1, 2), rc(1))});
    CHECK(integral_simple(x2, halves) == rc(1, 3));

    // f = x over [0, d]
    Piecewise lin = poly_on(Interval(rc(0), rc(1)), {rc(0), rc(1)});
    MeasurableSet tiny({Interval(rc(0), dd())});
    CHECK(integral_simple(lin, tiny) == dd() * dd() * rc(1, 2));

    // uncovered interval
    MeasurableSet outside({Interval(rc(3), rc(4))});
    CHECK_THROWS_AS(integral_simple(one, outside), std::domain_error);
}

TEST_CASE("tail certificates in simple integrals") {
    Piecewise one = poly_on(Interval(rc(0), rc(2)), {rc(1)});
    MeasurableSet with_tail({Interval(rc(0), rc(1))},
                            TailCertificate{Rational(2), "dyadic leftovers"});
    SimpleIntegralReport rep = integral_simple_report(one, with_tail);
    CHECK(rep.value == rc(1));
    REQUIRE(rep.tail_term_valuation.has_value());
    CHECK(*rep.tail_term_valuation == Rational(2));  // bound 1, valuation 0

    // generator-backed pieces cannot bound the tail
    PowerSeries gen(Interval(rc(0), rc(2)), rc(0),
                    [](std::size_t n) { return n == 0 ? rc(1) : rc(0); }, 16);
    Piecewise genpw({gen});
    CHECK_THROWS_AS(integral_simple_report(genpw, with_tail), std::domain_error);
    CHECK(integral_simple(genpw, MeasurableSet({Interval(rc(0), rc(1))})) == rc(1));
}

TEST_CASE("the real-valued integral on the licensed classes") {
    // piecewise simple: constant d integrates to an infinitesimal, st 0
    Piecewise tiny = poly_on(Interval(rc(0), rc(1)), {dd()});
    CHECK(m_integral(tiny, Region::interval(Interval(rc(0), rc(1))), opts()) ==
          ExtReal(Coeff(Rational(0))));

    // Taylor lift: order-2 sine over [0, pi]
    ExtensionFn sin2(parse_expr("sin(x)"), 2, 0.0, 4.0);
    ExtReal v = m_integral(sin2, Region::interval(Interval(rc(0), rd(M_PI))), opts());
    CHECK(std::fabs(v.to_double() - 2.0) <= 1e-8);

    // the lifted value does not depend on the order
    for (int h : {0, 1, 5}) {
        ExtensionFn sh(parse_expr("sin(x)"), h, 0.0, 4.0);
        ExtReal vh = m_integral(sh, Region::interval(Interval(rc(0), rd(M_PI))), opts());
        CHECK(std::fabs(vh.to_double() - v.to_double()) <= 1e-9);
    }

    // x^{-1} over [1, 10]
    ExtensionFn recip(parse_expr("x^(-1)"), 0, 0.5, 1e9);
    ExtReal lnv = m_integral(recip, Region::interval(Interval(rc(1), rc(10))), opts());
    CHECK(std::fabs(lnv.to_double() - std::log(10.0)) <= 1e-9);

    // step function
    StepFn steps({{Interval(rc(0), rc(1), true, false), rc(2)},
                  {Interval(rc(1), rc(2)), rc(1)}});
    CHECK(m_integral(steps, Region::interval(Interval(rc(0), rc(2))), opts()) ==
          ExtReal(Coeff(Rational(3))));

    // infinite-measure region with a non-simple integrand is refused
    CHECK_THROWS_WITH_AS(
        m_integral(sin2, Region::interval(Interval(rc(0), inv(dd()))), opts()),
        doctest::Contains("M-integrability not established"), std::domain_error);
}

TEST_CASE("report plumbing") {
    ExtensionFn sin2(parse_expr("sin(x)"), 2, 0.0, 4.0);
    IntegralReport rep =
        m_integral_report(sin2, Region::interval(Interval(rc(0), rd(M_PI))), opts());
    CHECK(rep.verdict == "finite");
    CHECK(rep.route.find("lifting") != std::string::npos);
    CHECK(std::fabs(rep.value.to_double() - 2.0) <= 1e-8);
}

TEST_CASE("linearity with standard-part scalars") {
    Interval iv(rc(0), rc(1));
    Piecewise f = poly_on(iv, {rc(1), rc(2)});           // 1 + 2x
    Piecewise g = poly_on(iv, {rc(0), rc(0), rc(3)});    // 3x^2
    LCNumber a = rc(2) + dd();                           // st 2
    LCNumber b = rc(-1) + dd() * dd();                   // st -1

    // x f + y g assembled coefficientwise
    Piecewise combo = poly_on(iv, {a * rc(1), a * rc(2), b * rc(3)});
    double lhs = m_integral(combo, Region::interval(iv), opts()).to_double();
    double rhs = 2.0 * m_integral(f, Region::interval(iv), opts()).to_double() -
                 1.0 * m_integral(g, Region::interval(iv), opts()).to_double();
    CHECK(std::fabs(lhs - rhs) <= 1e-9);
}

TEST_CASE("infinitesimal perturbation invariance on finite measure") {
    Interval iv(rc(0), rc(1));
    Piecewise f = poly_on(iv, {rc(1), rc(1)});
    Piecewise fplus = poly_on(iv, {rc(1) + dd(), rc(1)});
    CHECK(m_integral(f, Region::interval(iv), opts()) ==
          m_integral(fplus, Region::interval(iv), opts()));

    // domain perturbation by a null set
    MeasurableSet A({Interval(rc(0), rc(1))});
    MeasurableSet B({Interval(dd(), rc(1))});
    CHECK(m_integral(f, Region::measurable(A), opts()) ==
          m_integral(f, Region::measurable(B), opts()));
}

TEST_CASE("limit integrals over A(q)") {
    Interval window(rc(1), inv(dd()));

    // x^{-2}: converges to 1
    ExtensionFn inv2(parse_expr("x^(-2)"), 0, 0.5, 1e300);
    LimitReport r2 = m_integral_limit(inv2, Region::aq(Rational(0), window),
                                      LimitSchedule{}, opts());
    CHECK(r2.verdict == LimitReport::Verdict::Finite);
    CHECK(std::fabs(r2.value - 1.0) <= 1e-6);
    CHECK(!r2.trace.empty());

    // x^{-1}: the windows reproduce ln and the limit diverges
    ExtensionFn inv1(parse_expr("x^(-1)"), 0, 0.5, 1e300);
    LimitReport r1 = m_integral_limit(inv1, Region::aq(Rational(0), window),
                                      LimitSchedule{}, opts());
    CHECK(r1.verdict == LimitReport::Verdict::PosInf);

    // x^{-1/2}: diverges
    ExtensionFn rhalf(parse_expr("x^(-0.5)"), 0, 0.5, 1e300);
    LimitReport rh = m_integral_limit(rhalf, Region::aq(Rational(0), window),
                                      LimitSchedule{}, opts());
    CHECK(rh.verdict == LimitReport::Verdict::PosInf);

    // zero integrand
    Piecewise zero = poly_on(Interval(rc(0) - inv(dd()), inv(dd())), {rc(0)});
    LimitReport rz =
        m_integral_limit(zero, Region::aq(Rational(0)), LimitSchedule{}, opts());
    CHECK(rz.verdict == LimitReport::Verdict::Finite);
    CHECK(rz.value == 0.0);
}

TEST_CASE("limit integrals over B(q) and the finite part") {
    // constant 1 over B(0): windows [-d^t, d^t] have infinitesimal measure
    Piecewise one = poly_on(Interval(rc(0) - rc(1), rc(1)), {rc(1)});
    LimitReport rb =
        m_integral_limit(one, Region::bq(Rational(0)), LimitSchedule{}, opts());
    CHECK(rb.verdict == LimitReport::Verdict::Finite);
    CHECK(rb.value == 0.0);

    // gaussian decay: finite over the finite part
    ExtensionFn gauss(parse_expr("exp(-(x^2))"), 0, -1e300, 1e300);
    LimitReport rg =
        m_integral_limit(gauss, Region::finite_part(), LimitSchedule{}, opts());
    CHECK(rg.verdict == LimitReport::Verdict::Finite);
    CHECK(std::fabs(rg.value - std::sqrt(M_PI)) <= 1e-6);

    // cos over the finite part oscillates
    ExtensionFn cosx(parse_expr("cos(x)"), 0, -1e300, 1e300);
    LimitReport rosc =
        m_integral_limit(cosx, Region::finite_part(), LimitSchedule{}, opts());
    CHECK(rosc.verdict == LimitReport::Verdict::Oscillating);
}

TEST_CASE("fundamental theorem: consistent cases") {
    // F = x^2 on [0,1]
    Piecewise F = poly_on(Interval(rc(0), rc(1)), {rc(0), rc(0), rc(1)});
    FtcReport rep = ftc_check(F, Interval(rc(0), rc(1)), opts());
    CHECK(rep.measurable);
    CHECK(rep.consistent);
    CHECK(rep.lhs == ExtReal(Coeff(Rational(1))));
    CHECK(rep.rhs == ExtReal(Coeff(Rational(1))));

    // extension subject: F = sin on [0, pi/2]
    ExtensionFn sine(parse_expr("sin(x)"), std::nullopt, 0.0, 2.0);
    FtcReport rsin = ftc_check(sine, Interval(rc(0), rd(M_PI_2)), opts());
    CHECK(rsin.measurable);
    CHECK(rsin.consistent);
    CHECK(std::fabs(rsin.lhs.to_double() - 1.0) <= 1e-12);
    CHECK(std::fabs(rsin.rhs.to_double() - 1.0) <= 1e-9);
}

TEST_CASE("fundamental theorem fails on the locator") {
    FtcReport rep = ftc_check(Locator{}, Interval(rc(-1), rc(1)), opts());
    CHECK(!rep.measurable);
    CHECK(!rep.consistent);
    CHECK(rep.lhs == ExtReal(Coeff(Rational(1))));
    CHECK(rep.rhs == ExtReal(Coeff(Rational(0))));

    // an interval inside the monad of zero sees no jump
    FtcReport flat = ftc_check(Locator{}, Interval(rc(0) - dd(), dd()), opts());
    CHECK(flat.lhs == ExtReal(Coeff(Rational(0))));
    CHECK(flat.consistent);
}

TEST_CASE("ftc over multiple pieces") {
    PowerSeries p1(Interval(rc(0), rc(1), true, false), rc(0), {rc(0), rc(0), rc(1)});
    PowerSeries p2(Interval(rc(1), rc(2)), rc(1), {rc(1), rc(2), rc(1)});  // (x-1+1)^2
    Piecewise F({p1, p2});
    FtcReport rep = ftc_check(F, Interval(rc(0), rc(2)), opts());
    CHECK(rep.consistent);
    CHECK(rep.lhs == ExtReal(Coeff(Rational(4))));

    Piecewise gap({p2});
    CHECK_THROWS_AS(ftc_check(gap, Interval(rc(0), rc(2)), opts()), std::domain_error);
}

TEST_CASE("integration by parts") {
    Interval iv(rc(0), rc(1));
    Piecewise id = poly_on(Interval(rc(0), rc(1)), {rc(0), rc(1)});
    IbpReport rep = integrate_by_parts(id, id, iv, opts());
    CHECK(rep.boundary == 1.0);
    CHECK(std::fabs(rep.sum - 1.0) <= 1e-12);
    CHECK(rep.residual <= 1e-12);

    Piecewise one = poly_on(Interval(rc(0), rc(1)), {rc(1)});
    IbpReport r2 = integrate_by_parts(id, one, iv, opts());
    CHECK(std::fabs(r2.boundary - 1.0) <= 1e-12);
    CHECK(r2.residual <= 1e-12);

    // sin and cos as truncated series; double coefficients in the unpruned
    // configuration so small Taylor terms survive
    Interval dom(rc(0), rd(M_PI_2));
    std::vector<LCNumber> sc, cc;
    double fact = 1.0;
    for (int n = 0; n <= 25; ++n) {
        if (n > 0) fact *= n;
        LCNumber c = rd(1.0 / fact);
        LCNumber z = rc(0);
        sc.push_back(n % 2 == 1 ? (n % 4 == 1 ? c : -c) : z);
        cc.push_back(n % 2 == 0 ? (n % 4 == 0 ? c : -c) : z);
    }
    Piecewise sinf({PowerSeries(dom, rc(0), sc)});
    Piecewise cosf({PowerSeries(dom, rc(0), cc)});
    IbpReport r3 = integrate_by_parts(sinf, cosf, Interval(rc(0), rd(M_PI_2)), opts());
    CHECK(std::fabs(r3.boundary - 0.0) <= 1e-12);
    CHECK(r3.residual <= 1e-9);
}

TEST_CASE("epigraph route for step functions") {
    StepFn unit({{Interval(rc(0), rc(1)), rc(1)}});
    CHECK(epigraph_l_integral(unit) == ExtReal(Coeff(Rational(1))));

    StepFn thin({{Interval(rc(0), rc(1)), dd()}});
    CHECK(epigraph_l_integral(thin) == ExtReal(Coeff(Rational(0))));

    StepFn two({{Interval(rc(0), rc(1)), rc(2)}, {Interval(rc(1), rc(2)), rc(1)}});
    CHECK(epigraph_l_integral(two) == ExtReal(Coeff(Rational(3))));

    StepFn signed_steps({{Interval(rc(0), rc(1)), rc(-2)}, {Interval(rc(2), rc(3)), rc(1)}});
    EpigraphReport rep = epigraph_l_integral_report(signed_steps);
    CHECK(rep.consistent);
    CHECK(rep.epigraph_route == ExtReal(Coeff(Rational(-1))));

    StepFn infinite({{Interval(rc(0), inv(dd())), rc(1)}});
    CHECK_THROWS_AS(epigraph_l_integral(infinite), std::domain_error);
}

TEST_CASE("lifting route and simple route agree on polynomials") {
    // x^3 - x over [0,1]: once through quadrature over the shadow, once
    // through the exact field integral
    ExtensionFn lift(parse_expr("x^3 - x"), std::nullopt, -2.0, 2.0);
    ExtReal via_quad = m_integral(lift, Region::interval(Interval(rc(0), rc(1))), opts());
    Piecewise poly = poly_on(Interval(rc(0), rc(1)), {rc(0), rc(-1), rc(0), rc(1)});
    ExtReal via_field = m_integral(poly, Region::interval(Interval(rc(0), rc(1))), opts());
    CHECK(via_field == ExtReal(Coeff(Rational(-1, 4))));
    CHECK(std::fabs(via_quad.to_double() - via_field.to_double()) <= 1e-9);
}

TEST_CASE("powers of a bounded simple function are M-integrable") {
    Interval iv(rc(0), rc(1));
    PowerSeries f(iv, rc(0), {rc(1, 2), rc(1), rc(-1, 4)});
    PowerSeries fp = f;
    for (int p = 2; p <= 4; ++p) {
        fp = ps_mul(fp, f);
        Piecewise pw({fp});
        ExtReal via_m = m_integral(pw, Region::interval(iv), opts());
        ExtReal via_st = standard_part(integral_simple(pw, MeasurableSet({iv})));
        CHECK(via_m == via_st);
    }
}

TEST_CASE("step sums respect intersection with the region") {
    StepFn steps({{Interval(rc(0), rc(2), true, false), rc(3)},
                  {Interval(rc(2), rc(4)), rc(1)}});
    MeasurableSet A({Interval(rc(1), rc(3))});
    // 3 on [1,2) and 1 on [2,3]
    CHECK(m_integral(steps, Region::measurable(A), opts()) ==
          ExtReal(Coeff(Rational(4))));
}
