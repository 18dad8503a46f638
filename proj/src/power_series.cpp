#include "civita/power_series.hpp"

#include <stdexcept>

namespace civita {

Interval::Interval(LCNumber lo_, LCNumber hi_, bool lo_c, bool hi_c)
    : lo(std::move(lo_)), hi(std::move(hi_)), lo_closed(lo_c), hi_closed(hi_c) {
    Cmp c = compare(lo, hi);
    if (c == Cmp::GT) throw std::invalid_argument("Interval: lo > hi");
    if (c == Cmp::EQ && !(lo_closed && hi_closed))
        throw std::invalid_argument("Interval: degenerate interval must be closed");
}

bool Interval::contains(const LCNumber& x) const {
    Cmp cl = compare(lo, x);
    if (cl == Cmp::GT || (cl == Cmp::EQ && !lo_closed)) return false;
    Cmp ch = compare(x, hi);
    if (ch == Cmp::GT || (ch == Cmp::EQ && !hi_closed)) return false;
    return true;
}

bool Interval::contains_closure(const LCNumber& x) const {
    return compare(lo, x) != Cmp::GT && compare(x, hi) != Cmp::GT;
}

bool Interval::contains_interval(const Interval& inner) const {
    return compare(lo, inner.lo) != Cmp::GT && compare(inner.hi, hi) != Cmp::GT;
}

bool disjoint(const Interval& a, const Interval& b) {
    const Interval& first = compare(a.lo, b.lo) != Cmp::GT ? a : b;
    const Interval& second = &first == &a ? b : a;
    Cmp c = compare(first.hi, second.lo);
    if (c == Cmp::LT) return true;
    if (c == Cmp::GT) return false;
    return !(first.hi_closed && second.lo_closed);
}

bool adjacent_or_overlapping(const Interval& a, const Interval& b) {
    const Interval& first = compare(a.lo, b.lo) != Cmp::GT ? a : b;
    const Interval& second = &first == &a ? b : a;
    Cmp c = compare(first.hi, second.lo);
    if (c == Cmp::GT) return true;
    if (c == Cmp::LT) return false;
    return first.hi_closed || second.lo_closed;
}

PowerSeries::PowerSeries(Interval domain, LCNumber center, std::vector<LCNumber> coeffs)
    : domain_(std::move(domain)), center_(std::move(center)), coeffs_(std::move(coeffs)) {
    if (!domain_.contains_closure(center_))
        throw std::invalid_argument("PowerSeries: center outside the domain");
}

PowerSeries::PowerSeries(Interval domain, LCNumber center, Generator gen,
                         std::size_t term_budget)
    : domain_(std::move(domain)),
      center_(std::move(center)),
      gen_(std::move(gen)),
      budget_(term_budget) {
    if (!domain_.contains_closure(center_))
        throw std::invalid_argument("PowerSeries: center outside the domain");
    if (budget_ == 0) throw std::invalid_argument("PowerSeries: zero term budget");
}

LCNumber PowerSeries::coeff(std::size_t n) const {
    if (gen_) return gen_(n);
    if (n < coeffs_.size()) return coeffs_[n];
    return LCNumber::zero(center_.config());
}

LCNumber ps_eval(const PowerSeries& f, const LCNumber& x) {
    if (!f.domain().contains_closure(x))
        throw std::domain_error("ps_eval: point outside the domain closure");
    const Config cfg = x.config();
    LCNumber u = x - f.center();

    if (f.finite()) {
        // polynomial: Horner
        const auto& a = f.coeffs();
        LCNumber acc = LCNumber::zero(cfg);
        for (std::size_t i = a.size(); i-- > 0;) acc = a[i] + u * acc;
        return acc;
    }

    // Generator-backed series: accumulate partial sums until two consecutive
    // increments vanish below the zero threshold (the weak-convergence
    // surrogate); reject if the budget runs out first.
    LCNumber sum = LCNumber::zero(cfg);
    LCNumber u_pow = LCNumber::real(Coeff(Rational(1)), cfg);
    int stable_steps = 0;
    for (std::size_t n = 0; n < f.term_budget(); ++n) {
        LCNumber term = f.coeff(n) * u_pow;
        LCNumber next = sum + term;
        if ((next - sum).is_zero()) {
            if (++stable_steps >= 2) return next;
        } else {
            stable_steps = 0;
        }
        sum = next;
        u_pow = u_pow * u;
    }
    throw std::runtime_error("ps_eval: series did not stabilize within the term budget");
}

PowerSeries ps_derivative(const PowerSeries& f) {
    if (f.finite()) {
        std::vector<LCNumber> out;
        const auto& a = f.coeffs();
        const Config cfg = f.center().config();
        for (std::size_t n = 1; n < a.size(); ++n)
            out.push_back(a[n] * LCNumber::real(Coeff(Rational(static_cast<std::int64_t>(n))), cfg));
        return PowerSeries(f.domain(), f.center(), std::move(out));
    }
    const Config cfg = f.center().config();
    return PowerSeries(
        f.domain(), f.center(),
        [f, cfg](std::size_t n) {
            return f.coeff(n + 1) *
                   LCNumber::real(Coeff(Rational(static_cast<std::int64_t>(n + 1))), cfg);
        },
        f.term_budget());
}

PowerSeries ps_antiderivative(const PowerSeries& f) {
    const Config cfg = f.center().config();
    if (f.finite()) {
        std::vector<LCNumber> out;
        out.push_back(LCNumber::zero(cfg));
        const auto& a = f.coeffs();
        for (std::size_t n = 0; n < a.size(); ++n)
            out.push_back(a[n] /
                          LCNumber::real(Coeff(Rational(static_cast<std::int64_t>(n + 1))), cfg));
        return PowerSeries(f.domain(), f.center(), std::move(out));
    }
    return PowerSeries(
        f.domain(), f.center(),
        [f, cfg](std::size_t n) {
            if (n == 0) return LCNumber::zero(cfg);
            return f.coeff(n - 1) /
                   LCNumber::real(Coeff(Rational(static_cast<std::int64_t>(n))), cfg);
        },
        f.term_budget());
}

LCNumber ps_integral(const PowerSeries& f, const Interval& I) {
    if (!f.domain().contains_closure(I.lo) || !f.domain().contains_closure(I.hi))
        throw std::domain_error("ps_integral: interval outside the series domain");
    PowerSeries F = ps_antiderivative(f);
    return ps_eval(F, I.hi) - ps_eval(F, I.lo);
}

Piecewise::Piecewise(std::vector<PowerSeries> pieces) : pieces_(std::move(pieces)) {
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        for (std::size_t j = i + 1; j < pieces_.size(); ++j)
            if (!disjoint(pieces_[i].domain(), pieces_[j].domain()))
                throw std::invalid_argument("Piecewise: pieces overlap");
}

const PowerSeries* Piecewise::piece_at(const LCNumber& x) const {
    for (const auto& p : pieces_)
        if (p.domain().contains_closure(x)) return &p;
    return nullptr;
}

const PowerSeries* Piecewise::piece_covering(const Interval& I) const {
    for (const auto& p : pieces_)
        if (p.domain().contains_interval(I)) return &p;
    return nullptr;
}

LCNumber Piecewise::operator()(const LCNumber& x) const {
    for (const auto& p : pieces_)
        if (p.domain().contains(x)) return ps_eval(p, x);
    return LCNumber::zero(x.config());
}

Piecewise pw_derivative(const Piecewise& f) {
    std::vector<PowerSeries> out;
    out.reserve(f.pieces().size());
    for (const auto& p : f.pieces()) out.push_back(ps_derivative(p));
    return Piecewise(std::move(out));
}

PowerSeries ps_recenter(const PowerSeries& f, const LCNumber& new_center) {
    if (!f.finite())
        throw std::invalid_argument("ps_recenter: requires a finite coefficient list");
    // x - c = (x - c') + s with s = c' - c: synthetic-division Taylor shift.
    LCNumber s = new_center - f.center();
    std::vector<LCNumber> work(f.coeffs());
    const std::size_t n = work.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k-- > i;) work[k] = work[k] + s * work[k + 1];
    return PowerSeries(f.domain(), new_center, std::move(work));
}

PowerSeries ps_mul(const PowerSeries& f, const PowerSeries& g, std::size_t max_degree) {
    if (!f.finite() || !g.finite())
        throw std::invalid_argument("ps_mul: requires finite coefficient lists");
    if (!(f.center() == g.center()))
        throw std::invalid_argument("ps_mul: centers differ (recenter first)");
    const Config cfg = f.center().config();
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    if (a.empty() || b.empty())
        return PowerSeries(f.domain(), f.center(), std::vector<LCNumber>{});
    std::size_t deg = std::min(a.size() + b.size() - 2, max_degree);
    std::vector<LCNumber> out(deg + 1, LCNumber::zero(cfg));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (i + j <= deg) out[i + j] = out[i + j] + a[i] * b[j];
    return PowerSeries(f.domain(), f.center(), std::move(out));
}

} // namespace civita
