#include "doctest.h"

#include <random>

#include "civita/error.hpp"
#include "civita/lc_expr.hpp"
#include "civita/lc_number.hpp"
#include "helpers.hpp"

using namespace civita;
using testgen::exact_cfg;

TEST_CASE("number parsing") {
    Config X = exact_cfg();
    LCNumber a = parse_number("3 + 5*d", X);
    CHECK(a.coefficient(Rational(0)).rat() == Rational(3));
    CHECK(a.coefficient(Rational(1)).rat() == Rational(5));

    LCNumber b = parse_number("1/2*d^1/2 - d^-3", X);
    CHECK(b.coefficient(Rational(1, 2)).rat() == Rational(1, 2));
    CHECK(b.coefficient(Rational(-3)).rat() == Rational(-1));

    LCNumber c = parse_number("2.5", X);
    CHECK(c.coefficient(Rational(0)).rat() == Rational(5, 2));

    LCNumber e = parse_number("1e-3*d", X);
    CHECK(e.coefficient(Rational(1)).rat() == Rational(1, 1000));

    CHECK(parse_number("0", X).is_zero());
    CHECK_THROWS_AS(parse_number("3 + + d", X), ParseError);
    CHECK_THROWS_AS(parse_number("", X), ParseError);
    CHECK_THROWS_AS(parse_number("q", X), ParseError);
}

TEST_CASE("render/parse round trip is exact in exact mode") {
    Config X = exact_cfg();
    std::mt19937 rng(101);
    for (int i = 0; i < 300; ++i) {
        LCNumber x = testgen::random_lc(rng);
        LCNumber back = parse_number(x.str(), X);
        REQUIRE(back.terms().size() == x.terms().size());
        for (std::size_t k = 0; k < x.terms().size(); ++k) {
            CHECK(back.terms()[k].exp == x.terms()[k].exp);
            CHECK(back.terms()[k].coeff.rat() == x.terms()[k].coeff.rat());
        }
    }
    CHECK(parse_number(LCNumber::zero(X).str(), X).is_zero());
}

TEST_CASE("float mode round trip preserves values") {
    Config F{16, 1e-13};
    LCNumber x({{Rational(0), Coeff(0.1)}, {Rational(3, 2), Coeff(-2.75e-5)}}, F);
    LCNumber back = parse_number(x.str(), F);
    REQUIRE(back.terms().size() == 2);
    CHECK(back.terms()[0].coeff.to_double() == 0.1);
    CHECK(back.terms()[1].coeff.to_double() == -2.75e-5);
}

TEST_CASE("expression evaluation") {
    Config X = exact_cfg();
    LCValue v = eval_lc_expression("st(3 + 5*d)", X);
    CHECK(v.kind == LCValue::Kind::Extended);
    CHECK(v.extended.value.rat() == Rational(3));

    LCValue g = eval_lc_expression("1/(1-d)", X);
    REQUIRE(g.kind == LCValue::Kind::Number);
    for (int k = 0; k <= 16; ++k)
        CHECK(g.number.coefficient(Rational(k)).rat() == Rational(1));

    LCValue lam = eval_lc_expression("lambda(d^(1/2)+d)", X);
    REQUIRE(lam.kind == LCValue::Kind::Exponent);
    CHECK(*lam.exponent == Rational(1, 2));

    LCValue z = eval_lc_expression("lambda(0)", X);
    CHECK(!z.exponent.has_value());
    CHECK(z.str() == "infinity");

    CHECK(eval_lc_expression("(1+d)*(1-d)", X).number.str() == "1 - d^2");
    CHECK(eval_lc_expression("2^3", X).number.str() == "8");
    CHECK(eval_lc_expression("d^-1", X).number.str() == "d^-1");
    CHECK(eval_lc_expression("root(4,2)", X).number.str() == "2");
    CHECK(eval_lc_expression("st(d^-1)", X).str() == "+inf");
    CHECK(eval_lc_expression("abs(0-d)", X).number.str() == "d");

    CHECK_THROWS_AS(eval_lc_expression("1+", X), ParseError);
    CHECK_THROWS_AS(eval_lc_expression("sin(1)", X), ParseError);
    CHECK_THROWS_AS(eval_lc_expression("1/0", X), std::domain_error);
}
