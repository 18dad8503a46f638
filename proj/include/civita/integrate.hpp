#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "civita/delta.hpp"
#include "civita/measure.hpp"
#include "civita/power_series.hpp"
#include "civita/real_expr.hpp"

namespace civita {

// Step function with field values on disjoint intervals.
struct StepFn {
    struct Step {
        Interval interval;
        LCNumber value;
    };
    std::vector<Step> steps;

    explicit StepFn(std::vector<Step> s);
};

// Product of a Dirac-like bump with a Taylor lift.
struct DeltaProduct {
    DeltaSpec delta;
    ExtensionFn fn;
};

// The integrand classes for which the real-valued integral has a proven
// closed form. Anything else is refused, never silently evaluated.
using MIntegrand = std::variant<Piecewise, ExtensionFn, StepFn, DeltaProduct>;

// Integration region: a measurable set, the non-measurable valuation sets
// A(q) = {lambda >= q} and B(q) = {lambda > q} (optionally clipped to a
// window), the finite part of the field, or the whole field.
struct Region {
    enum class Kind { Measurable, Aq, Bq, FinitePart, Full };
    Kind kind = Kind::Measurable;
    MeasurableSet set;                       // Measurable
    Rational q;                              // Aq / Bq
    std::optional<Interval> window;          // Aq / Bq clip

    static Region measurable(MeasurableSet s);
    static Region interval(Interval iv);
    static Region aq(Rational q, std::optional<Interval> window = std::nullopt);
    static Region bq(Rational q, std::optional<Interval> window = std::nullopt);
    static Region finite_part();
    static Region full();
};

struct IntegrateOptions {
    double tol = 1e-9;          // real-comparison tolerance carried in reports
    double quad_tol = 1e-10;    // absolute quadrature target
    long quad_budget = 1000000; // quadrature evaluation budget
    Config cfg;                 // truncation configuration for field work
};

// Field-valued integral of a piecewise simple function over a measurable
// set: every interval of A must lie inside one piece.
LCNumber integral_simple(const Piecewise& f, const MeasurableSet& A);

struct SimpleIntegralReport {
    LCNumber value;
    // valuation lower bound for the neglected tail term, present iff A has a
    // certified tail: bound_exponent + lambda(sup-norm bound of f)
    std::optional<Rational> tail_term_valuation;
};
SimpleIntegralReport integral_simple_report(const Piecewise& f, const MeasurableSet& A);

// The real-valued integral on the licensed классes:
//   piecewise simple over measurable        st of the field integral
//   step function over measurable           sum st(value) st(length)
//   Taylor lift over measurable             real quadrature over the shadow
//   delta product                           closed-form pairing
// Throws std::domain_error("M-integrability not established: ...") on any
// other combination.
ExtReal m_integral(const MIntegrand& f, const Region& r,
                   const IntegrateOptions& opts = IntegrateOptions{});

struct IntegralReport {
    ExtReal value;
    std::string verdict;  // "finite", "+infinity", "-infinity"
    double tolerance = 0.0;
    std::string route;    // the theorem that licensed the computation
    std::vector<std::string> warnings;
};
IntegralReport m_integral_report(const MIntegrand& f, const Region& r,
                                 const IntegrateOptions& opts = IntegrateOptions{});

// Limit integrals over A(q), B(q), the finite part and the full field,
// evaluated on a geometric window schedule with Cauchy limit detection.
struct LimitSchedule {
    int max_points = 60;
    double cauchy_tol = 1e-8;
    double blowup = 1e12;
};

struct LimitReport {
    enum class Verdict { Finite, PosInf, NegInf, Oscillating };
    Verdict verdict = Verdict::Finite;
    double value = 0.0;  // meaningful iff verdict == Finite
    std::vector<std::pair<double, double>> trace;  // (schedule parameter, window value)
    double tolerance = 0.0;

    ExtReal as_ext_real() const;
};
LimitReport m_integral_limit(const MIntegrand& f, const Region& r,
                             const LimitSchedule& schedule = LimitSchedule{},
                             const IntegrateOptions& opts = IntegrateOptions{});

// Fundamental-theorem check: compares st(F(b) - F(a)) with the M-integral of
// F' over the interval. The locator function is the built-in counterexample:
// 0 left of the monad of zero, 1 on appreciable positives; continuous with
// zero derivative everywhere, yet F(b) - F(a) = 1.
struct Locator {};
using FtcSubject = std::variant<Piecewise, ExtensionFn, Locator>;

struct FtcReport {
    ExtReal lhs;  // st(F(b) - F(a))
    ExtReal rhs;  // M-integral of F'
    bool consistent = false;
    bool measurable = false;  // whether F' and F sit in the supported L1 fragment
    double tolerance = 0.0;
};
FtcReport ftc_check(const FtcSubject& F, const Interval& iv,
                    const IntegrateOptions& opts = IntegrateOptions{});

// st(f(b)g(b) - f(a)g(a)) against the M-integrals of f'g + fg'.
struct IbpReport {
    double boundary = 0.0;
    double sum = 0.0;
    double residual = 0.0;
};
IbpReport integrate_by_parts(const Piecewise& f, const Piecewise& g, const Interval& iv,
                             const IntegrateOptions& opts = IntegrateOptions{});

// Epigraph route for the integral of a step function: measure of
// {(x, y) : 0 <= y <= f(x)} via rectangles, checked against the direct
// step sum. Negative values split into positive and negative parts.
struct EpigraphReport {
    ExtReal epigraph_route;
    ExtReal direct_route;
    bool consistent = false;
};
EpigraphReport epigraph_l_integral_report(const StepFn& f);
ExtReal epigraph_l_integral(const StepFn& f);

} // namespace civita
