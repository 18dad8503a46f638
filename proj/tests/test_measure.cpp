#include "doctest.h"

#include <random>

#include "civita/measure.hpp"
#include "helpers.hpp"

using namespace civita;
using testgen::exact_cfg;

namespace {

const Config X = exact_cfg();

LCNumber rc(std::int64_t n, std::int64_t d = 1) {
    return LCNumber::real(Coeff(Rational(n, d)), X);
}
LCNumber dd() { return LCNumber::d(X); }

MeasurableSet set_of(std::vector<Interval> ivs) { return MeasurableSet(std::move(ivs)); }

// random disjoint finite-length union within [-40, 40]
MeasurableSet random_set(std::mt19937& rng, int max_parts = 4) {
    std::uniform_int_distribution<int> parts(1, max_parts);
    std::uniform_int_distribution<int> gap(1, 5);
    std::uniform_int_distribution<int> len(0, 6);
    std::uniform_int_distribution<int> infml(0, 2);
    int k = parts(rng);
    LCNumber cursor = rc(-40);
    std::vector<Interval> ivs;
    for (int i = 0; i < k; ++i) {
        LCNumber lo = cursor + rc(gap(rng));
        LCNumber hi = lo + rc(len(rng), 2);
        if (infml(rng) == 0) hi = hi + dd();  // infinitesimal fuzz
        ivs.emplace_back(lo, hi);
        cursor = hi;
    }
    return set_of(std::move(ivs));
}

} // namespace

TEST_CASE("set construction: sorting, merging, overlap") {
    MeasurableSet s({Interval(rc(2), rc(3)), Interval(rc(0), rc(1))});
    CHECK(s.intervals().size() == 2);
    CHECK(s.intervals()[0].lo == rc(0));

    // shared closed endpoint merges
    MeasurableSet m({Interval(rc(0), rc(1)), Interval(rc(1), rc(2))});
    CHECK(m.intervals().size() == 1);
    CHECK(m.intervals()[0].hi == rc(2));

    // half-open touching stays separate
    MeasurableSet t({Interval(rc(0), rc(1), true, false), Interval(rc(1), rc(2))});
    CHECK(t.intervals().size() == 2);

    CHECK_THROWS_AS(set_of({Interval(rc(0), rc(2)), Interval(rc(1), rc(3))}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MeasurableSet({Interval(rc(0), rc(1))},
                                  TailCertificate{Rational(0), "bad"}),
                    std::invalid_argument);
}

TEST_CASE("field-valued measure") {
    CHECK(m_measure(set_of({Interval(rc(0), rc(1) + dd())})) == rc(1) + dd());
    LCNumber two_parts = m_measure(
        set_of({Interval(rc(0), dd()), Interval(rc(1), rc(1) + dd() * dd())}));
    CHECK(two_parts == dd() + dd() * dd());
    CHECK(m_measure(set_of({Interval(rc(0), rc(1)), Interval(rc(2), rc(3))})) == rc(2));
    CHECK(m_measure(MeasurableSet(X)).is_zero());
}

TEST_CASE("real-valued measure") {
    CHECK(mL_measure(set_of({Interval(rc(0), rc(1) + dd())})) == ExtReal(Coeff(Rational(1))));
    CHECK(mL_measure(set_of({Interval(rc(0), dd())})) == ExtReal(Coeff(Rational(0))));
    CHECK(mL_measure(set_of({Interval(rc(0), inv(dd()))})).kind == ExtReal::Kind::PosInf);
}

TEST_CASE("translation invariance") {
    MeasurableSet a = set_of({Interval(rc(0), rc(1))});
    MeasurableSet b = translate(a, dd());
    CHECK(b.intervals()[0].lo == dd());
    CHECK(b.intervals()[0].hi == rc(1) + dd());
    CHECK(mL_measure(b) == ExtReal(Coeff(Rational(1))));

    MeasurableSet c = set_of({Interval(rc(0), rc(1)), Interval(rc(2), rc(3))});
    CHECK(mL_measure(translate(c, rc(-5))) == mL_measure(c));
    CHECK(m_measure(translate(c, rc(-5))) == m_measure(c));

    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        MeasurableSet A = random_set(rng);
        LCNumber x = testgen::random_lc(rng);
        CHECK(mL_measure(translate(A, x)) == mL_measure(A));
        CHECK(m_measure(translate(A, x)) == m_measure(A));
    }
}

TEST_CASE("scaling and positive homogeneity") {
    MeasurableSet unit = set_of({Interval(rc(0), rc(1))});
    ScaleReport r = scale_report(unit, rc(2) + dd());
    CHECK(r.homogeneity_checked);
    CHECK(r.measured == ExtReal(Coeff(Rational(2))));
    CHECK(r.consistent);

    // scaling by an infinitesimal kills finite measure
    ScaleReport z = scale_report(unit, dd());
    CHECK(z.measured == ExtReal(Coeff(Rational(0))));
    CHECK(z.consistent);

    // negative factor swaps endpoints
    MeasurableSet neg = scale(unit, rc(-3));
    CHECK(neg.intervals()[0].lo == rc(-3));
    CHECK(neg.intervals()[0].hi == rc(0));

    CHECK(scale(unit, rc(0)).intervals()[0].degenerate());

    std::mt19937 rng(9);
    for (int i = 0; i < 100; ++i) {
        MeasurableSet A = random_set(rng);
        LCNumber x = testgen::random_finite_lc(rng);
        ScaleReport rep = scale_report(A, x);
        CHECK(rep.homogeneity_checked);
        CHECK(rep.consistent);
    }
}

TEST_CASE("the infinite-measure scaling example") {
    // A = [0, a] with a = d^{-1}; r = 3 + d
    LCNumber a = inv(dd());
    LCNumber r = rc(3) + dd();
    MeasurableSet A = set_of({Interval(rc(0), a)});

    ScaleReport r1 = scale_report(A, r * inv(a));
    CHECK(!r1.homogeneity_checked);  // m_L(A) is infinite: indeterminate form
    CHECK(r1.measured == ExtReal(Coeff(Rational(3))));

    ScaleReport r2 = scale_report(A, r * inv(a * a));
    CHECK(r2.measured == ExtReal(Coeff(Rational(0))));

    ScaleReport r3 = scale_report(A, r * inv(root(a, 2)));
    CHECK(r3.measured.kind == ExtReal::Kind::PosInf);
}

TEST_CASE("st-preimage sandwich") {
    RealSet R({RealInterval{Coeff(Rational(0)), Coeff(Rational(1))}});
    SandwichResult s = st_preimage_sandwich(R, 10, X);
    CHECK(s.value == Coeff(Rational(1)));
    CHECK(s.inner.intervals().size() == 1);
    CHECK(s.outer.intervals().size() == 1);
    CHECK(s.outer.intervals()[0].lo == rc(-1, 10));
    CHECK(s.outer.intervals()[0].hi == rc(11, 10));

    CHECK(st_preimage_sandwich(RealSet{}, 10, X).value == Coeff(Rational(0)));

    RealSet R2({RealInterval{Coeff(Rational(0)), Coeff(Rational(1))},
                RealInterval{Coeff(Rational(2)), Coeff(Rational(4))}});
    CHECK(st_preimage_sandwich(R2, 100, X).value == Coeff(Rational(3)));

    CHECK_THROWS_AS(st_preimage_sandwich(R, 0, X), std::invalid_argument);

    // widened copies that collide get merged, keeping the outer set legal
    RealSet close({RealInterval{Coeff(Rational(0)), Coeff(Rational(1))},
                   RealInterval{Coeff(Rational(21, 20)), Coeff(Rational(2))}});
    SandwichResult c = st_preimage_sandwich(close, 10, X);
    CHECK(c.outer.intervals().size() == 1);

    std::mt19937 rng(13);
    std::uniform_int_distribution<int> parts(1, 5);
    std::uniform_int_distribution<int> step(1, 9);
    for (int i = 0; i < 100; ++i) {
        std::vector<RealInterval> ivs;
        Rational cursor(-30);
        int k = parts(rng);
        for (int j = 0; j < k; ++j) {
            Rational lo = cursor + Rational(step(rng));
            Rational hi = lo + Rational(step(rng), 4);
            ivs.push_back({Coeff(lo), Coeff(hi)});
            cursor = hi;
        }
        RealSet R3(std::move(ivs));
        long n = 1000;
        SandwichResult sw = st_preimage_sandwich(R3, n, X);
        ExtReal inner_m = mL_measure(sw.inner);
        ExtReal outer_m = mL_measure(sw.outer);
        REQUIRE(inner_m.finite());
        REQUIRE(outer_m.finite());
        CHECK(inner_m.value <= sw.value);
        CHECK(sw.value <= outer_m.value);
        Coeff gap = outer_m.value - inner_m.value;
        Coeff bound = Coeff(Rational(2 * static_cast<std::int64_t>(R3.intervals().size()), n));
        CHECK(gap <= bound);
    }
}

TEST_CASE("shadow of finite sets") {
    Shadow s1 = shadow(set_of({Interval(rc(0), rc(1) + dd()),
                               Interval(rc(2) + dd(), rc(2) + dd() + dd())}));
    REQUIRE(s1.intervals.intervals().size() == 1);
    CHECK(s1.intervals.intervals()[0].lo == Coeff(Rational(0)));
    CHECK(s1.intervals.intervals()[0].hi == Coeff(Rational(1)));
    REQUIRE(s1.points.size() == 1);
    CHECK(s1.points[0] == Coeff(Rational(2)));

    Shadow s2 = shadow(set_of({Interval(rc(0), dd())}));
    CHECK(s2.intervals.empty());
    REQUIRE(s2.points.size() == 1);
    CHECK(s2.points[0] == Coeff(Rational(0)));
    CHECK(lebesgue_measure(s2.intervals).is_zero());

    // touching shadows merge and absorb the shared point
    Shadow s3 = shadow(set_of({Interval(rc(0), rc(1)), Interval(rc(1) + dd(), rc(2))}));
    REQUIRE(s3.intervals.intervals().size() == 1);
    CHECK(s3.intervals.intervals()[0].hi == Coeff(Rational(2)));
    CHECK(s3.points.empty());
    CHECK(lebesgue_measure(s3.intervals) == Coeff(Rational(2)));

    CHECK_THROWS_AS(shadow(set_of({Interval(rc(0), inv(dd()))})), std::domain_error);

    // measure preservation on random finite sets
    std::mt19937 rng(17);
    for (int i = 0; i < 100; ++i) {
        MeasurableSet A = random_set(rng);
        ExtReal m = mL_measure(A);
        REQUIRE(m.finite());
        CHECK(lebesgue_measure(shadow(A).intervals) == m.value);
    }
}

TEST_CASE("monotonicity under containment") {
    std::mt19937 rng(19);
    for (int i = 0; i < 100; ++i) {
        MeasurableSet A = random_set(rng);
        // B: extend the last interval, so A is contained in B
        std::vector<Interval> ivs(A.intervals());
        Interval last = ivs.back();
        ivs.back() = Interval(last.lo, last.hi + rc(1), last.lo_closed, last.hi_closed);
        MeasurableSet B(std::move(ivs));
        CHECK(compare(m_measure(A), m_measure(B)) != Cmp::GT);
        CHECK(mL_measure(A).value <= mL_measure(B).value);
    }
}

TEST_CASE("finite additivity on disjoint unions") {
    std::mt19937 rng(29);
    for (int i = 0; i < 100; ++i) {
        MeasurableSet A = random_set(rng);
        MeasurableSet B = translate(A, rc(200));  // far away, disjoint
        std::vector<Interval> both(A.intervals());
        both.insert(both.end(), B.intervals().begin(), B.intervals().end());
        MeasurableSet U(std::move(both));
        ExtReal sum = mL_measure(A) + mL_measure(B);
        CHECK(mL_measure(U) == sum);
        CHECK(m_measure(U) == m_measure(A) + m_measure(B));
    }
}

TEST_CASE("st of m equals mL") {
    std::mt19937 rng(31);
    for (int i = 0; i < 200; ++i) {
        MeasurableSet A = random_set(rng);
        ExtReal lhs = standard_part(m_measure(A));
        ExtReal rhs = mL_measure(A);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("rectangle measure") {
    Rectangle r1{{Interval(rc(0), rc(1) + dd()), Interval(rc(0), rc(2))}};
    CHECK(rect_measure({r1}) == ExtReal(Coeff(Rational(2))));

    // the product is taken before the standard part
    Rectangle thin{{Interval(rc(0), dd()), Interval(rc(0), inv(dd()))}};
    CHECK(rect_measure({thin}) == ExtReal(Coeff(Rational(1))));

    CHECK(rect_measure({}) == ExtReal(Coeff(Rational(0))));

    Rectangle r2{{Interval(rc(2), rc(3)), Interval(rc(0), rc(2))}};
    CHECK(rect_measure({r1, r2}) == ExtReal(Coeff(Rational(4))));

    Rectangle clash{{Interval(rc(0), rc(1)), Interval(rc(1), rc(3))}};
    CHECK_THROWS_AS(rect_measure({r1, clash}), std::invalid_argument);

    Rectangle wrongdim{{Interval(rc(0), rc(1))}};
    CHECK_THROWS_AS(rect_measure({r1, wrongdim}), std::invalid_argument);
}

TEST_CASE("tail certificates ride along") {
    MeasurableSet A({Interval(rc(0), rc(1))},
                    TailCertificate{Rational(3), "omitted dyadic tail"});
    CHECK(A.tail().has_value());
    CHECK(m_measure(A) == rc(1));  // value contribution is zero
    CHECK(translate(A, dd()).tail().has_value());
    CHECK(scale(A, rc(2)).tail().has_value());
}
