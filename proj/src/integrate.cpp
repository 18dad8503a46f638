#include "civita/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace civita {

namespace {

LCNumber lc_rat(const Rational& r, const Config& cfg) {
    return LCNumber::real(Coeff(r), cfg);
}

ExtReal ext_sub(const ExtReal& a, const ExtReal& b) {
    using K = ExtReal::Kind;
    ExtReal nb = b;
    if (b.kind == K::PosInf)
        nb = ExtReal::neg_inf();
    else if (b.kind == K::NegInf)
        nb = ExtReal::pos_inf();
    else
        nb = ExtReal(-b.value);
    return a + nb;
}

[[noreturn]] void unsupported(const std::string& why) {
    throw std::domain_error("M-integrability not established: " + why);
}

} // namespace

StepFn::StepFn(std::vector<Step> s) : steps(std::move(s)) {
    std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) {
        return compare(a.interval.lo, b.interval.lo) == Cmp::LT;
    });
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        Interval& cur = steps[i].interval;
        Interval& next = steps[i + 1].interval;
        if (!disjoint(cur, next)) {
            // a shared closed endpoint is resolved half-open; single points
            // carry no measure
            if (compare(cur.hi, next.lo) == Cmp::EQ && cur.hi_closed && next.lo_closed)
                next = Interval(next.lo, next.hi, false, next.hi_closed);
            else
                throw std::invalid_argument("StepFn: step intervals overlap");
        }
    }
}

Region Region::measurable(MeasurableSet s) {
    Region r;
    r.kind = Kind::Measurable;
    r.set = std::move(s);
    return r;
}

Region Region::interval(Interval iv) { return measurable(MeasurableSet({std::move(iv)})); }

Region Region::aq(Rational q, std::optional<Interval> window) {
    Region r;
    r.kind = Kind::Aq;
    r.q = std::move(q);
    r.window = std::move(window);
    return r;
}

Region Region::bq(Rational q, std::optional<Interval> window) {
    Region r;
    r.kind = Kind::Bq;
    r.q = std::move(q);
    r.window = std::move(window);
    return r;
}

Region Region::finite_part() {
    Region r;
    r.kind = Kind::FinitePart;
    return r;
}

Region Region::full() {
    Region r;
    r.kind = Kind::Full;
    return r;
}

// ---------------------------------------------------------------------------
// Field-valued integral of piecewise simple functions

namespace {

// crude sup-norm bound of a finite series on its interval: sum |a_i| M^i
LCNumber series_sup_bound(const PowerSeries& p) {
    if (!p.finite())
        throw std::domain_error(
            "integral_simple: no closed-form bound for a generator-backed series on a tail");
    LCNumber m1 = lc_abs(p.domain().lo - p.center());
    LCNumber m2 = lc_abs(p.domain().hi - p.center());
    LCNumber M = compare(m1, m2) == Cmp::LT ? m2 : m1;
    LCNumber bound = LCNumber::zero(p.center().config());
    LCNumber mpow = LCNumber::real(Coeff(Rational(1)), p.center().config());
    for (const auto& a : p.coeffs()) {
        bound = bound + lc_abs(a) * mpow;
        mpow = mpow * M;
    }
    return bound;
}

} // namespace

SimpleIntegralReport integral_simple_report(const Piecewise& f, const MeasurableSet& A) {
    LCNumber sum = LCNumber::zero(A.config());
    for (const auto& iv : A.intervals()) {
        const PowerSeries* piece = f.piece_covering(iv);
        if (!piece)
            throw std::domain_error(
                "integral_simple: an interval of the set is not covered by one piece");
        sum = sum + ps_integral(*piece, iv);
    }

    SimpleIntegralReport rep{std::move(sum), std::nullopt};
    if (A.tail()) {
        LCNumber bound = LCNumber::zero(A.config());
        for (const auto& p : f.pieces()) bound = bound + series_sup_bound(p);
        Rational lam = bound.is_zero() ? Rational(0) : *bound.valuation();
        Rational tail_val = A.tail()->bound_exponent + lam;
        if (!(tail_val > Rational(0)))
            throw std::domain_error(
                "integral_simple: the integrand bound does not keep the tail infinitesimal");
        rep.tail_term_valuation = tail_val;
    }
    return rep;
}

LCNumber integral_simple(const Piecewise& f, const MeasurableSet& A) {
    return integral_simple_report(f, A).value;
}

// ---------------------------------------------------------------------------
// The real-valued integral

namespace {

ExtReal step_sum_over(const StepFn& f, const MeasurableSet& A) {
    Coeff sum{Rational(0)};
    for (const auto& step : f.steps) {
        if (!is_finite(step.value))
            unsupported("a step value is infinite at the standard level");
        Coeff v = standard_part(step.value).value;
        for (const auto& iv : A.intervals()) {
            auto cap = intersect(step.interval, iv);
            if (!cap) continue;
            ExtReal len = standard_part(cap->length());
            if (!len.finite()) unsupported("a step piece has infinite length");
            sum += v * len.value;
        }
    }
    return ExtReal(sum);
}

ExtReal lifting_quadrature(const ExtensionFn& f, const MeasurableSet& A,
                           const IntegrateOptions& opts, std::vector<std::string>* warnings) {
    Shadow sh = [&] {
        try {
            return shadow(A);
        } catch (const std::domain_error&) {
            unsupported("infinite-measure region with a non-simple integrand");
        }
    }();
    double total = 0.0;
    std::size_t parts = std::max<std::size_t>(sh.intervals.intervals().size(), 1);
    for (const auto& iv : sh.intervals.intervals()) {
        double lo = iv.lo.to_double(), hi = iv.hi.to_double();
        if (lo < f.lo || hi > f.hi)
            throw std::domain_error("m_integral: region shadow leaves the function domain");
        total += quad(f.base, lo, hi, opts.quad_tol / static_cast<double>(parts),
                      opts.quad_budget);
    }
    if (warnings && !sh.points.empty())
        warnings->push_back("shadow points contribute zero to the integral");
    return ExtReal(Coeff(total));
}

ExtReal delta_route(const DeltaProduct& p, const Region& r, const IntegrateOptions& opts) {
    if (r.kind == Region::Kind::Measurable) {
        // the support must sit inside the region
        Interval supp(p.delta.center - p.delta.half_width,
                      p.delta.center + p.delta.half_width);
        bool covered = false;
        for (const auto& iv : r.set.intervals())
            if (iv.contains_interval(supp)) {
                covered = true;
                break;
            }
        if (!covered) unsupported("the bump support is not inside the region");
    } else if (r.kind != Region::Kind::FinitePart && r.kind != Region::Kind::Full) {
        unsupported("delta products are integrated over measurable sets or the finite part");
    }
    return ExtReal(Coeff(pair_delta(p.delta, p.fn, opts.tol)));
}

} // namespace

ExtReal m_integral(const MIntegrand& f, const Region& r, const IntegrateOptions& opts) {
    if (std::holds_alternative<DeltaProduct>(f))
        return delta_route(std::get<DeltaProduct>(f), r, opts);

    if (r.kind != Region::Kind::Measurable)
        return m_integral_limit(f, r, LimitSchedule{}, opts).as_ext_real();

    if (std::holds_alternative<Piecewise>(f))
        return standard_part(integral_simple(std::get<Piecewise>(f), r.set));
    if (std::holds_alternative<StepFn>(f)) return step_sum_over(std::get<StepFn>(f), r.set);
    if (std::holds_alternative<ExtensionFn>(f))
        return lifting_quadrature(std::get<ExtensionFn>(f), r.set, opts, nullptr);
    unsupported("unknown integrand kind");
}

IntegralReport m_integral_report(const MIntegrand& f, const Region& r,
                                 const IntegrateOptions& opts) {
    IntegralReport rep;
    rep.tolerance = opts.tol;
    if (std::holds_alternative<Piecewise>(f))
        rep.route = "st of the field-valued integral (L1 functions are M-integrable)";
    else if (std::holds_alternative<StepFn>(f))
        rep.route = "step-function sum st(value)*st(length)";
    else if (std::holds_alternative<ExtensionFn>(f))
        rep.route = r.kind == Region::Kind::Measurable
                        ? "lifting theorem: real quadrature over the shadow"
                        : "limit of window integrals";
    else
        rep.route = "delta pairing";

    if (std::holds_alternative<ExtensionFn>(f) && r.kind == Region::Kind::Measurable) {
        rep.value = lifting_quadrature(std::get<ExtensionFn>(f), r.set, opts, &rep.warnings);
    } else {
        rep.value = m_integral(f, r, opts);
    }
    rep.verdict = rep.value.finite() ? "finite"
                  : rep.value.kind == ExtReal::Kind::PosInf ? "+infinity"
                                                            : "-infinity";
    return rep;
}

// ---------------------------------------------------------------------------
// Limit integrals

ExtReal LimitReport::as_ext_real() const {
    switch (verdict) {
        case Verdict::Finite: return ExtReal(Coeff(value));
        case Verdict::PosInf: return ExtReal::pos_inf();
        case Verdict::NegInf: return ExtReal::neg_inf();
        default:
            throw std::domain_error("m_integral: the window integrals oscillate");
    }
}

namespace {

struct WindowSpec {
    double param;        // trace abscissa
    LCNumber lo, hi;     // window endpoints
};

std::optional<WindowSpec> schedule_window(const Region& r, int k, const Config& cfg) {
    WindowSpec w{0.0, LCNumber::zero(cfg), LCNumber::zero(cfg)};
    switch (r.kind) {
        case Region::Kind::Aq: {
            Rational t(std::int64_t(1) << k);
            w.param = t.to_double();
            w.lo = LCNumber::monomial(Coeff(-t), r.q, cfg);
            w.hi = LCNumber::monomial(Coeff(t), r.q, cfg);
            break;
        }
        case Region::Kind::Bq: {
            Rational e = r.q + Rational(1, std::int64_t(1) << k);
            w.param = e.to_double();
            w.lo = -LCNumber::monomial(Coeff(Rational(1)), e, cfg);
            w.hi = LCNumber::monomial(Coeff(Rational(1)), e, cfg);
            break;
        }
        case Region::Kind::Full: {
            Rational e(-(std::int64_t(1) << k));
            w.param = e.to_double();
            w.lo = -LCNumber::monomial(Coeff(Rational(1)), e, cfg);
            w.hi = LCNumber::monomial(Coeff(Rational(1)), e, cfg);
            break;
        }
        case Region::Kind::FinitePart: {
            Rational t(std::int64_t(1) << k);
            w.param = t.to_double();
            w.lo = lc_rat(-t, cfg);
            w.hi = lc_rat(t, cfg);
            break;
        }
        default: throw std::logic_error("schedule_window: not a limit region");
    }
    if (r.window) {
        if (compare(r.window->lo, w.lo) == Cmp::GT) w.lo = r.window->lo;
        if (compare(r.window->hi, w.hi) == Cmp::LT) w.hi = r.window->hi;
        if (compare(w.lo, w.hi) == Cmp::GT) return std::nullopt;
    }
    return w;
}

// divergence signature over the last few window values: one-signed,
// non-decaying increments
bool diverges_monotone(const std::vector<double>& v, double tol, int* sign) {
    const std::size_t m = 6;
    if (v.size() < m + 1) return false;
    double prev = 0.0;
    int s = 0;
    for (std::size_t i = v.size() - m; i < v.size(); ++i) {
        double dlt = v[i] - v[i - 1];
        int ds = dlt > 0 ? 1 : (dlt < 0 ? -1 : 0);
        if (ds == 0) return false;
        if (s == 0)
            s = ds;
        else if (ds != s)
            return false;
        if (prev != 0.0 && std::fabs(dlt) < 0.999 * std::fabs(prev)) return false;
        prev = dlt;
    }
    if (std::fabs(prev) < 100.0 * tol) return false;
    *sign = s;
    return true;
}

bool oscillates(const std::vector<double>& v) {
    if (v.size() < 4) return false;
    int flips = 0;
    for (std::size_t i = v.size() - std::min<std::size_t>(v.size() - 1, 8); i + 1 < v.size();
         ++i) {
        double d1 = v[i] - v[i - 1];
        double d2 = v[i + 1] - v[i];
        if (d1 * d2 < 0) ++flips;
    }
    return flips >= 2;
}

} // namespace

LimitReport m_integral_limit(const MIntegrand& f, const Region& r,
                             const LimitSchedule& schedule, const IntegrateOptions& opts) {
    if (r.kind == Region::Kind::Measurable)
        throw std::invalid_argument("m_integral_limit: region is already measurable");
    if (std::holds_alternative<DeltaProduct>(f))
        throw std::invalid_argument("m_integral_limit: delta products need no schedule");

    LimitReport rep;
    rep.tolerance = schedule.cauchy_tol;
    std::vector<double> values;

    bool budget_cut = false;
    for (int k = 0; k < schedule.max_points && !budget_cut; ++k) {
        auto w = schedule_window(r, k, opts.cfg);
        if (!w) continue;
        MeasurableSet W({Interval(w->lo, w->hi)});

        IntegrateOptions wopts = opts;
        if (!values.empty())
            wopts.quad_tol =
                std::fmax(opts.quad_tol, std::fabs(values.back()) * 1e-12);
        ExtReal v{Coeff(Rational(0))};
        try {
            v = m_integral(f, Region::measurable(W), wopts);
        } catch (const std::runtime_error&) {
            // quadrature budget ran out on this window: judge the prefix
            budget_cut = true;
            break;
        }
        if (!v.finite()) {
            rep.verdict = v.kind == ExtReal::Kind::PosInf ? LimitReport::Verdict::PosInf
                                                          : LimitReport::Verdict::NegInf;
            return rep;
        }
        values.push_back(v.value.to_double());
        rep.trace.emplace_back(w->param, values.back());

        const std::size_t n = values.size();
        if (n >= 3) {
            double d1 = std::fabs(values[n - 1] - values[n - 2]);
            double d2 = std::fabs(values[n - 2] - values[n - 3]);
            if (d1 <= schedule.cauchy_tol && d2 <= schedule.cauchy_tol) {
                rep.verdict = LimitReport::Verdict::Finite;
                rep.value = values.back();
                return rep;
            }
            if (std::fabs(values[n - 1]) > schedule.blowup &&
                ((values[n - 1] > values[n - 2] && values[n - 2] > values[n - 3]) ||
                 (values[n - 1] < values[n - 2] && values[n - 2] < values[n - 3]))) {
                rep.verdict = values[n - 1] > 0 ? LimitReport::Verdict::PosInf
                                                : LimitReport::Verdict::NegInf;
                return rep;
            }
        }
        int sign = 0;
        if (values.size() >= 12 && diverges_monotone(values, schedule.cauchy_tol, &sign)) {
            rep.verdict = sign > 0 ? LimitReport::Verdict::PosInf : LimitReport::Verdict::NegInf;
            return rep;
        }
    }

    int sign = 0;
    if (diverges_monotone(values, schedule.cauchy_tol, &sign)) {
        rep.verdict = sign > 0 ? LimitReport::Verdict::PosInf : LimitReport::Verdict::NegInf;
        return rep;
    }
    if (oscillates(values)) {
        rep.verdict = LimitReport::Verdict::Oscillating;
        return rep;
    }
    throw std::runtime_error("m_integral_limit: schedule exhausted without a verdict");
}

// ---------------------------------------------------------------------------
// Fundamental theorem of calculus

namespace {

Coeff locator_value(const LCNumber& x) {
    LCNumber zero = LCNumber::zero(x.config());
    bool positive_appreciable = compare(x, zero) == Cmp::GT && !monad_eq(x, zero);
    return Coeff(Rational(positive_appreciable ? 1 : 0));
}

// intersections of [a,b] with the pieces of f, required to tile [a,b]
std::vector<std::pair<const PowerSeries*, Interval>> tile_by_pieces(const Piecewise& f,
                                                                    const Interval& iv) {
    std::vector<std::pair<const PowerSeries*, Interval>> plan;
    for (const auto& p : f.pieces()) {
        auto cap = intersect(Interval(p.domain().lo, p.domain().hi), iv);
        if (cap) plan.emplace_back(&p, *cap);
    }
    LCNumber covered = LCNumber::zero(iv.lo.config());
    for (const auto& [p, seg] : plan) covered = covered + seg.length();
    if (!(covered == iv.length()))
        throw std::domain_error("the pieces do not cover the interval");
    return plan;
}

} // namespace

FtcReport ftc_check(const FtcSubject& F, const Interval& iv, const IntegrateOptions& opts) {
    FtcReport rep;
    rep.tolerance = opts.tol;

    if (std::holds_alternative<Locator>(F)) {
        rep.lhs = ExtReal(locator_value(iv.hi) - locator_value(iv.lo));
        rep.rhs = ExtReal(Coeff(Rational(0)));  // the derivative vanishes identically
        rep.measurable = false;
        rep.consistent = rep.lhs == rep.rhs;
        return rep;
    }

    if (std::holds_alternative<Piecewise>(F)) {
        const Piecewise& f = std::get<Piecewise>(F);
        auto plan = tile_by_pieces(f, iv);
        const PowerSeries* at_lo = f.piece_at(iv.lo);
        const PowerSeries* at_hi = f.piece_at(iv.hi);
        if (!at_lo || !at_hi)
            throw std::domain_error("ftc_check: endpoint outside every piece");
        LCNumber diff_lc = ps_eval(*at_hi, iv.hi) - ps_eval(*at_lo, iv.lo);
        rep.lhs = standard_part(diff_lc);

        LCNumber total = LCNumber::zero(iv.lo.config());
        for (const auto& [p, seg] : plan) total = total + ps_integral(ps_derivative(*p), seg);
        rep.rhs = standard_part(total);
        rep.measurable = true;
    } else {
        const ExtensionFn& f = std::get<ExtensionFn>(F);
        LCNumber at_hi = extend(f, iv.hi);
        LCNumber at_lo = extend(f, iv.lo);
        rep.lhs = ext_sub(standard_part(at_hi), standard_part(at_lo));
        ExtensionFn fprime(diff(f.base), f.order, f.lo, f.hi);
        rep.rhs = m_integral(MIntegrand(fprime), Region::interval(iv), opts);
        rep.measurable = true;
    }

    if (rep.lhs.finite() && rep.rhs.finite())
        rep.consistent =
            std::fabs(rep.lhs.value.to_double() - rep.rhs.value.to_double()) <= opts.tol;
    else
        rep.consistent = rep.lhs == rep.rhs;
    return rep;
}

// ---------------------------------------------------------------------------
// Integration by parts

IbpReport integrate_by_parts(const Piecewise& f, const Piecewise& g, const Interval& iv,
                             const IntegrateOptions& opts) {
    const PowerSeries* pf = f.piece_covering(iv);
    const PowerSeries* pg = g.piece_covering(iv);
    if (!pf || !pg)
        throw std::domain_error("integrate_by_parts: pieces do not cover the interval");
    if (!pf->finite() || !pg->finite())
        throw std::domain_error("integrate_by_parts: requires finite coefficient lists");

    const Config cfg = iv.lo.config();
    LCNumber c = (iv.lo + iv.hi) * LCNumber::real(Coeff(Rational(1, 2)), cfg);
    PowerSeries fr = ps_recenter(*pf, c);
    PowerSeries gr = ps_recenter(*pg, c);
    PowerSeries fd = ps_derivative(fr);
    PowerSeries gd = ps_derivative(gr);

    LCNumber sum_lc =
        ps_integral(ps_mul(fd, gr), iv) + ps_integral(ps_mul(fr, gd), iv);
    LCNumber boundary_lc = ps_eval(fr, iv.hi) * ps_eval(gr, iv.hi) -
                           ps_eval(fr, iv.lo) * ps_eval(gr, iv.lo);

    IbpReport rep;
    rep.boundary = standard_part(boundary_lc).to_double();
    rep.sum = standard_part(sum_lc).to_double();
    rep.residual = std::fabs(rep.boundary - rep.sum);
    (void)opts;
    return rep;
}

// ---------------------------------------------------------------------------
// Epigraph route

EpigraphReport epigraph_l_integral_report(const StepFn& f) {
    Coeff direct{Rational(0)};
    std::vector<Rectangle> pos, neg;
    for (const auto& step : f.steps) {
        ExtReal len = standard_part(step.interval.length());
        if (!len.finite())
            throw std::domain_error("epigraph_l_integral: base set has infinite measure");
        if (!is_finite(step.value))
            throw std::domain_error("epigraph_l_integral: step value is infinite");
        Coeff v = standard_part(step.value).value;
        direct += v * len.value;

        LCNumber zero = LCNumber::zero(step.value.config());
        if (step.value.is_zero()) continue;
        if (step.value.leading_coeff().sign() > 0)
            pos.push_back(Rectangle{{step.interval, Interval(zero, step.value)}});
        else
            neg.push_back(Rectangle{{step.interval, Interval(zero, -step.value)}});
    }

    ExtReal up = rect_measure(pos);
    ExtReal down = rect_measure(neg);
    EpigraphReport rep{ext_sub(up, down), ExtReal(direct), false};
    if (rep.epigraph_route.finite() && rep.direct_route.finite()) {
        const Coeff& a = rep.epigraph_route.value;
        const Coeff& b = rep.direct_route.value;
        rep.consistent = (a.exact() && b.exact())
                             ? a == b
                             : std::fabs(a.to_double() - b.to_double()) <= 1e-12;
    }
    return rep;
}

ExtReal epigraph_l_integral(const StepFn& f) {
    EpigraphReport rep = epigraph_l_integral_report(f);
    if (!rep.consistent)
        throw std::logic_error("epigraph_l_integral: the two integral routes disagree");
    return rep.epigraph_route;
}

} // namespace civita
