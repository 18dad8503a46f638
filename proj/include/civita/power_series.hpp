#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "civita/lc_number.hpp"

namespace civita {

// Bounded interval of the field with endpoint closedness flags.
struct Interval {
    LCNumber lo, hi;
    bool lo_closed = true;
    bool hi_closed = true;

    Interval(LCNumber lo_, LCNumber hi_, bool lo_c = true, bool hi_c = true);

    LCNumber length() const { return hi - lo; }
    bool degenerate() const { return lo == hi; }
    bool contains(const LCNumber& x) const;
    bool contains_closure(const LCNumber& x) const;  // treats the interval as closed
    bool contains_interval(const Interval& inner) const;
};

// Strict set disjointness; touching closed endpoints count as overlap.
bool disjoint(const Interval& a, const Interval& b);
// Mergeable into one interval: overlapping or touching without a gap.
bool adjacent_or_overlapping(const Interval& a, const Interval& b);

// Power series sum a_n (x - center)^n on an interval. Either a finite
// coefficient list (a polynomial, evaluated directly) or a generator-backed
// series whose evaluation must stabilize to the zero threshold: two
// consecutive partial sums equal within zeta, else it is rejected.
class PowerSeries {
public:
    using Generator = std::function<LCNumber(std::size_t)>;

    PowerSeries(Interval domain, LCNumber center, std::vector<LCNumber> coeffs);
    PowerSeries(Interval domain, LCNumber center, Generator gen,
                std::size_t term_budget = 512);

    const Interval& domain() const { return domain_; }
    const LCNumber& center() const { return center_; }
    bool finite() const { return !gen_; }
    const std::vector<LCNumber>& coeffs() const { return coeffs_; }
    LCNumber coeff(std::size_t n) const;
    std::size_t term_budget() const { return budget_; }

private:
    Interval domain_;
    LCNumber center_;
    std::vector<LCNumber> coeffs_;  // used when gen_ is empty
    Generator gen_;
    std::size_t budget_ = 0;
};

// Evaluation at a point of the closed hull of the domain (simple functions
// extend uniquely to the closure).
LCNumber ps_eval(const PowerSeries& f, const LCNumber& x);

PowerSeries ps_derivative(const PowerSeries& f);
PowerSeries ps_antiderivative(const PowerSeries& f);

// F(hi) - F(lo) for the antiderivative F; I must lie inside the closure of
// f's domain. Boundary flags play no role (points have length zero).
LCNumber ps_integral(const PowerSeries& f, const Interval& I);

// Finitely many disjoint pieces, each simple on its interval; zero outside.
class Piecewise {
public:
    Piecewise() = default;
    explicit Piecewise(std::vector<PowerSeries> pieces);

    const std::vector<PowerSeries>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }

    // the piece whose closed hull contains x, if any
    const PowerSeries* piece_at(const LCNumber& x) const;
    const PowerSeries* piece_covering(const Interval& I) const;

    LCNumber operator()(const LCNumber& x) const;  // 0 outside all pieces

private:
    std::vector<PowerSeries> pieces_;
};

Piecewise pw_derivative(const Piecewise& f);

// Polynomial helpers used by the integration and distribution modules:
// recenter a finite series to a new center (exact binomial shift) and
// multiply two finite series with a common center.
PowerSeries ps_recenter(const PowerSeries& f, const LCNumber& new_center);
PowerSeries ps_mul(const PowerSeries& f, const PowerSeries& g, std::size_t max_degree = 256);

} // namespace civita
