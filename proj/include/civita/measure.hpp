#pragma once

#include <optional>
#include <string>
#include <vector>

#include "civita/lc_number.hpp"
#include "civita/power_series.hpp"

namespace civita {

std::optional<Interval> intersect(const Interval& a, const Interval& b);

// Certifies that the omitted tail of an interval family has total length of
// valuation >= bound_exponent > 0, hence infinitesimal.
struct TailCertificate {
    Rational bound_exponent;
    std::string description;
};

// Constructive measurable set: a finite disjoint union of intervals, sorted
// by left endpoint, plus an optional certified infinitesimal tail. Adjacent
// intervals sharing a closed endpoint are merged; genuine overlap is an error.
class MeasurableSet {
public:
    explicit MeasurableSet(Config cfg = Config{}) : cfg_(cfg) {}
    explicit MeasurableSet(std::vector<Interval> intervals,
                           std::optional<TailCertificate> tail = std::nullopt);

    const std::vector<Interval>& intervals() const { return intervals_; }
    const std::optional<TailCertificate>& tail() const { return tail_; }
    const Config& config() const { return cfg_; }
    bool empty() const { return intervals_.empty(); }

private:
    Config cfg_;
    std::vector<Interval> intervals_;
    std::optional<TailCertificate> tail_;
};

// The field-valued uniform measure: the exact sum of interval lengths. The
// certified tail contributes nothing below its bound exponent and is carried
// in reports only.
LCNumber m_measure(const MeasurableSet& A);

// The real-valued measure: sum of st(length); +infinity as soon as one
// interval has infinite length. Tails never contribute.
ExtReal mL_measure(const MeasurableSet& A);

MeasurableSet translate(const MeasurableSet& A, const LCNumber& x);

MeasurableSet scale(const MeasurableSet& A, const LCNumber& x);

struct ScaleReport {
    MeasurableSet set;
    ExtReal measured;                 // m_L of the scaled set
    bool homogeneity_checked = false; // requires finite m_L(A) and finite x
    std::optional<ExtReal> expected;  // |st x| * m_L(A) when checked
    bool consistent = false;
};
ScaleReport scale_report(const MeasurableSet& A, const LCNumber& x);

// Real interval with exact (or floating) endpoints.
struct RealInterval {
    Coeff lo, hi;
    bool lo_closed = true;
    bool hi_closed = true;

    Coeff length() const { return hi - lo; }
};

// Finite union of disjoint real intervals, sorted; overlapping or touching
// closed inputs are merged.
class RealSet {
public:
    RealSet() = default;
    explicit RealSet(std::vector<RealInterval> intervals);

    const std::vector<RealInterval>& intervals() const { return intervals_; }
    bool empty() const { return intervals_.empty(); }

private:
    std::vector<RealInterval> intervals_;
};

Coeff lebesgue_measure(const RealSet& R);

// Interval-union witnesses bracketing the standard-part preimage of R:
// inner copies [a,b] of R's components and outer copies widened by 1/n.
// value is the Lebesgue measure of R, computed exactly on exact endpoints;
// m_L(outer) - m_L(inner) <= 2 * (#intervals) / n.
struct SandwichResult {
    MeasurableSet inner;
    MeasurableSet outer;
    Coeff value;
};
SandwichResult st_preimage_sandwich(const RealSet& R, long n, Config cfg = Config{});

// Projection of a finite-union set under the standard part map: intervals of
// appreciable length survive as real intervals, infinitesimal ones collapse
// to points (deduplicated, absorbed into touching intervals).
struct Shadow {
    RealSet intervals;
    std::vector<Coeff> points;
};
Shadow shadow(const MeasurableSet& A);

// Product of n bounded intervals.
struct Rectangle {
    std::vector<Interval> sides;

    LCNumber volume() const;  // product of the side lengths, before st
};

// Sum of st(volume) over pairwise disjoint rectangles. Disjointness must be
// witnessed on some shared axis; otherwise the check fails loudly.
ExtReal rect_measure(const std::vector<Rectangle>& rects);

} // namespace civita
