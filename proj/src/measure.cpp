#include "civita/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace civita {

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    LCNumber lo = a.lo;
    bool lo_c = a.lo_closed;
    if (compare(b.lo, lo) == Cmp::GT) {
        lo = b.lo;
        lo_c = b.lo_closed;
    } else if (compare(b.lo, lo) == Cmp::EQ) {
        lo_c = a.lo_closed && b.lo_closed;
    }
    LCNumber hi = a.hi;
    bool hi_c = a.hi_closed;
    if (compare(b.hi, hi) == Cmp::LT) {
        hi = b.hi;
        hi_c = b.hi_closed;
    } else if (compare(b.hi, hi) == Cmp::EQ) {
        hi_c = a.hi_closed && b.hi_closed;
    }
    Cmp c = compare(lo, hi);
    if (c == Cmp::GT) return std::nullopt;
    if (c == Cmp::EQ && !(lo_c && hi_c)) return std::nullopt;
    return Interval(lo, hi, lo_c, hi_c);
}

MeasurableSet::MeasurableSet(std::vector<Interval> intervals,
                             std::optional<TailCertificate> tail)
    : tail_(std::move(tail)) {
    if (tail_ && !(tail_->bound_exponent > Rational(0)))
        throw std::invalid_argument("TailCertificate: bound exponent must be positive");
    if (intervals.empty()) {
        intervals_ = std::move(intervals);
        return;
    }
    cfg_ = intervals.front().lo.config();
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
        Cmp c = compare(a.lo, b.lo);
        if (c != Cmp::EQ) return c == Cmp::LT;
        return compare(a.hi, b.hi) == Cmp::LT;
    });
    for (auto& iv : intervals) {
        if (!intervals_.empty()) {
            Interval& prev = intervals_.back();
            if (!disjoint(prev, iv)) {
                // only a shared closed endpoint is mergeable
                if (compare(prev.hi, iv.lo) == Cmp::EQ && prev.hi_closed && iv.lo_closed &&
                    compare(iv.hi, prev.hi) != Cmp::LT) {
                    prev = Interval(prev.lo, iv.hi, prev.lo_closed, iv.hi_closed);
                    continue;
                }
                throw std::invalid_argument("MeasurableSet: intervals overlap");
            }
        }
        intervals_.push_back(std::move(iv));
    }
}

LCNumber m_measure(const MeasurableSet& A) {
    LCNumber sum = LCNumber::zero(A.config());
    for (const auto& iv : A.intervals()) sum = sum + iv.length();
    return sum;
}

ExtReal mL_measure(const MeasurableSet& A) {
    Coeff sum{Rational(0)};
    for (const auto& iv : A.intervals()) {
        ExtReal st = standard_part(iv.length());
        if (!st.finite()) return ExtReal::pos_inf();
        sum += st.value;
    }
    return ExtReal(sum);
}

MeasurableSet translate(const MeasurableSet& A, const LCNumber& x) {
    if (A.empty()) return A;
    std::vector<Interval> out;
    out.reserve(A.intervals().size());
    for (const auto& iv : A.intervals())
        out.emplace_back(iv.lo + x, iv.hi + x, iv.lo_closed, iv.hi_closed);
    return MeasurableSet(std::move(out), A.tail());
}

MeasurableSet scale(const MeasurableSet& A, const LCNumber& x) {
    if (A.empty()) return A;
    if (x.is_zero()) {
        // 0 A = {0}
        LCNumber z = LCNumber::zero(A.config());
        return MeasurableSet({Interval(z, z)});
    }
    const bool neg = x.leading_coeff().sign() < 0;
    std::vector<Interval> out;
    out.reserve(A.intervals().size());
    for (const auto& iv : A.intervals()) {
        LCNumber lo = iv.lo * x, hi = iv.hi * x;
        if (neg)
            out.emplace_back(std::move(hi), std::move(lo), iv.hi_closed, iv.lo_closed);
        else
            out.emplace_back(std::move(lo), std::move(hi), iv.lo_closed, iv.hi_closed);
    }
    return MeasurableSet(std::move(out), A.tail());
}

ScaleReport scale_report(const MeasurableSet& A, const LCNumber& x) {
    ScaleReport rep{scale(A, x), ExtReal(Coeff(Rational(0))), false, std::nullopt, false};
    rep.measured = mL_measure(rep.set);
    ExtReal before = mL_measure(A);
    if (before.finite() && is_finite(x)) {
        rep.homogeneity_checked = true;
        ExtReal stx = standard_part(x);
        Coeff factor = abs(stx.value);
        rep.expected = ExtReal(factor * before.value);
        if (rep.measured.finite()) {
            if (rep.measured.value.exact() && rep.expected->value.exact())
                rep.consistent = rep.measured.value == rep.expected->value;
            else
                rep.consistent = std::fabs(rep.measured.value.to_double() -
                                           rep.expected->value.to_double()) <= 1e-12;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Real sets

RealSet::RealSet(std::vector<RealInterval> intervals) {
    for (const auto& iv : intervals)
        if (iv.hi < iv.lo) throw std::invalid_argument("RealInterval: hi < lo");
    std::sort(intervals.begin(), intervals.end(),
              [](const RealInterval& a, const RealInterval& b) { return a.lo < b.lo; });
    for (auto& iv : intervals) {
        if (!intervals_.empty()) {
            RealInterval& prev = intervals_.back();
            bool joins = iv.lo < prev.hi ||
                         (iv.lo == prev.hi && (prev.hi_closed || iv.lo_closed));
            if (joins) {
                if (iv.hi > prev.hi) {
                    prev.hi = iv.hi;
                    prev.hi_closed = iv.hi_closed;
                }
                continue;
            }
        }
        intervals_.push_back(iv);
    }
}

Coeff lebesgue_measure(const RealSet& R) {
    Coeff sum{Rational(0)};
    for (const auto& iv : R.intervals()) sum += iv.length();
    return sum;
}

SandwichResult st_preimage_sandwich(const RealSet& R, long n, Config cfg) {
    if (n <= 0) throw std::invalid_argument("st_preimage_sandwich: n must be positive");

    auto lc_of = [&](const Coeff& c) {
        return c.is_zero() ? LCNumber::zero(cfg) : LCNumber::real(c, cfg);
    };

    std::vector<Interval> inner;
    inner.reserve(R.intervals().size());
    for (const auto& iv : R.intervals()) inner.emplace_back(lc_of(iv.lo), lc_of(iv.hi));

    // widen by 1/n on each side, merging overlaps on the real line first
    Coeff pad = cfg.exact() ? Coeff(Rational(1, n)) : Coeff(1.0 / static_cast<double>(n));
    std::vector<RealInterval> widened;
    widened.reserve(R.intervals().size());
    for (const auto& iv : R.intervals())
        widened.push_back({iv.lo - pad, iv.hi + pad, true, true});
    RealSet merged(std::move(widened));

    std::vector<Interval> outer;
    outer.reserve(merged.intervals().size());
    for (const auto& iv : merged.intervals()) outer.emplace_back(lc_of(iv.lo), lc_of(iv.hi));

    return SandwichResult{MeasurableSet(std::move(inner)), MeasurableSet(std::move(outer)),
                          lebesgue_measure(R)};
}

Shadow shadow(const MeasurableSet& A) {
    std::vector<RealInterval> parts;
    std::vector<Coeff> points;
    for (const auto& iv : A.intervals()) {
        if (!is_finite(iv.lo) || !is_finite(iv.hi))
            throw std::domain_error("shadow: set has a non-finite endpoint");
        Coeff lo = standard_part(iv.lo).value;
        Coeff hi = standard_part(iv.hi).value;
        if ((hi - lo).is_zero())
            points.push_back(lo);
        else
            parts.push_back({lo, hi, true, true});
    }
    RealSet merged(std::move(parts));

    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<Coeff> isolated;
    for (const auto& p : points) {
        bool inside = false;
        for (const auto& iv : merged.intervals())
            if (!(p < iv.lo) && !(iv.hi < p)) {
                inside = true;
                break;
            }
        if (!inside) isolated.push_back(p);
    }
    return Shadow{std::move(merged), std::move(isolated)};
}

// ---------------------------------------------------------------------------
// Rectangles

LCNumber Rectangle::volume() const {
    if (sides.empty()) throw std::invalid_argument("Rectangle: zero dimension");
    LCNumber v = sides.front().length();
    for (std::size_t i = 1; i < sides.size(); ++i) v = v * sides[i].length();
    return v;
}

ExtReal rect_measure(const std::vector<Rectangle>& rects) {
    if (rects.empty()) return ExtReal(Coeff(Rational(0)));
    const std::size_t dim = rects.front().sides.size();
    if (dim == 0) throw std::invalid_argument("rect_measure: zero dimension");
    for (const auto& r : rects)
        if (r.sides.size() != dim)
            throw std::invalid_argument("rect_measure: dimension mismatch");

    for (std::size_t i = 0; i < rects.size(); ++i)
        for (std::size_t j = i + 1; j < rects.size(); ++j) {
            bool separated = false;
            for (std::size_t k = 0; k < dim && !separated; ++k)
                separated = disjoint(rects[i].sides[k], rects[j].sides[k]);
            if (!separated)
                throw std::invalid_argument(
                    "rect_measure: rectangles overlap or the axis test cannot separate them");
        }

    ExtReal sum{Coeff(Rational(0))};
    for (const auto& r : rects) sum = sum + standard_part(r.volume());
    return sum;
}

} // namespace civita
