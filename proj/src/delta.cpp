#include "civita/delta.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace civita {

Rational bump_normalizer(int k) {
    if (k < 0) throw std::invalid_argument("bump_normalizer: negative smoothness");
    // I_m = integral of (1-u^2)^m over [-1,1]; I_0 = 2, I_m = I_{m-1} 2m/(2m+1)
    Rational I(2);
    for (int m = 1; m <= k + 1; ++m) I = I * Rational(2 * m, 2 * m + 1);
    return I;
}

namespace {

Rational binomial(int n, int i) {
    Rational b(1);
    for (int t = 0; t < i; ++t) b = b * Rational(n - t) / Rational(t + 1);
    return b;
}

// Taylor coefficients of ext^j f recentered from st(r) to r: polynomial in
// (x - r) with LC coefficients.
std::vector<LCNumber> lift_coeffs_at(const ExtensionFn& f, const LCNumber& r, int degree) {
    const Config cfg = r.config();
    ExtReal st = standard_part(r);
    if (!st.finite()) throw std::domain_error("delta pairing: center is not finite");
    const double rho = st.value.to_double();

    std::vector<double> taylor;  // f^(i)(rho) / i!
    RealExpr deriv = f.base;
    double factorial = 1.0;
    taylor.push_back(eval_real(deriv, rho));
    for (int i = 1; i <= degree; ++i) {
        deriv = diff(deriv);
        factorial *= static_cast<double>(i);
        taylor.push_back(eval_real(deriv, rho) / factorial);
    }

    // sum t_i ((x-r) + eps)^i with eps = r - rho
    LCNumber eps = r - LCNumber::real(st.value, cfg);
    std::vector<LCNumber> out(taylor.size(), LCNumber::zero(cfg));
    std::vector<LCNumber> eps_powers(taylor.size(), LCNumber::real(Coeff(Rational(1)), cfg));
    for (std::size_t p = 1; p < eps_powers.size(); ++p)
        eps_powers[p] = eps_powers[p - 1] * eps;
    for (std::size_t i = 0; i < taylor.size(); ++i) {
        LCNumber ti = LCNumber::real(Coeff(taylor[i]), cfg);
        if (ti.is_zero()) continue;
        for (std::size_t m = 0; m <= i; ++m) {
            LCNumber contrib = ti *
                               LCNumber::real(Coeff(binomial(static_cast<int>(i),
                                                             static_cast<int>(m))),
                                              cfg) *
                               eps_powers[i - m];
            out[m] = out[m] + contrib;
        }
    }
    return out;
}

int effective_degree(const ExtensionFn& f, const Config& cfg, int k) {
    if (f.order) return *f.order;
    return cfg.depth + 2 * (k + 1) + 4;
}

} // namespace

std::pair<DeltaSpec, Piecewise> make_delta(const LCNumber& r, const LCNumber& h, int k) {
    if (k < 0) throw std::invalid_argument("make_delta: smoothness must be >= 0");
    if (!is_finite(r)) throw std::domain_error("make_delta: center must be finite");
    if (classify(h) != NumberClass::Infinitesimal || h.leading_coeff().sign() <= 0)
        throw std::domain_error("make_delta: half-width must be a positive infinitesimal");

    const Config cfg = r.config();
    Rational unit_mass = Rational(1) / bump_normalizer(k);

    // c (1 - u^2)^{k+1} with u = (x-r)/h expands to even powers of (x-r):
    // a_{2i} = unit_mass * (-1)^i binom(k+1, i) * h^{-(2i+1)}
    LCNumber h_inv = inv(h);
    LCNumber h_inv_sq = h_inv * h_inv;
    std::vector<LCNumber> coeffs(2 * (k + 1) + 1, LCNumber::zero(cfg));
    LCNumber scale = LCNumber::real(Coeff(unit_mass), cfg) * h_inv;
    for (int i = 0; i <= k + 1; ++i) {
        Rational sign = (i % 2 == 0) ? Rational(1) : Rational(-1);
        coeffs[2 * i] = LCNumber::real(Coeff(sign * binomial(k + 1, i)), cfg) * scale;
        scale = scale * h_inv_sq;
    }

    Interval support(r - h, r + h);
    PowerSeries bump(support, r, std::move(coeffs));
    DeltaSpec spec{r, h, k, unit_mass};
    return {spec, Piecewise({bump})};
}

namespace {

PowerSeries realize_bump(const DeltaSpec& d) {
    return make_delta(d.center, d.half_width, d.smoothness).second.pieces().front();
}

double pair_core(const DeltaSpec& delta, const ExtensionFn& f, int m, double* expected_out) {
    if (m > delta.smoothness)
        throw std::invalid_argument("pair_delta_derivative: m exceeds the bump smoothness");

    const Config cfg = delta.center.config();
    ExtReal st = standard_part(delta.center);
    const double rho = st.value.to_double();
    if (!(f.lo < rho && rho < f.hi))
        throw std::domain_error("delta pairing: st(center) must be interior to the domain");

    // degenerate order: ext^j f is locally a polynomial of degree j < m
    if (f.order && *f.order < m) {
        if (expected_out) *expected_out = 0.0;
        return 0.0;
    }

    PowerSeries bump = realize_bump(delta);

    // boundary contact: the first m-1 bump derivatives vanish at r +- h
    PowerSeries db = bump;
    for (int i = 0; i < m; ++i) {
        LCNumber at_hi = ps_eval(db, delta.center + delta.half_width);
        LCNumber at_lo = ps_eval(db, delta.center - delta.half_width);
        if (!at_hi.is_zero() || !at_lo.is_zero())
            throw std::logic_error("delta pairing: bump boundary contact failed");
        db = ps_derivative(db);
    }

    const int degree = effective_degree(f, cfg, delta.smoothness);
    std::vector<LCNumber> lift = lift_coeffs_at(f, delta.center, degree);

    // m-fold integration by parts: (-1)^m integral of bump * (ext f)^(m)
    std::vector<LCNumber> dm;
    for (std::size_t n = m; n < lift.size(); ++n) {
        // coefficient of (x-r)^{n-m} in the m-th derivative: n!/(n-m)! * lift[n]
        Rational fall(1);
        for (int t = 0; t < m; ++t) fall = fall * Rational(static_cast<std::int64_t>(n - t));
        dm.push_back(lift[n] * LCNumber::real(Coeff(fall), cfg));
    }
    PowerSeries integrand = ps_mul(bump, PowerSeries(bump.domain(), delta.center, std::move(dm)));
    LCNumber val = ps_integral(integrand, bump.domain());
    double result = standard_part(val).to_double();
    if (m % 2 == 1) result = -result;

    if (expected_out) {
        RealExpr deriv = f.base;
        for (int t = 0; t < m; ++t) deriv = diff(deriv);
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        *expected_out = sign * eval_real(deriv, rho);
    }
    return result;
}

} // namespace

double pair_delta(const DeltaSpec& delta, const ExtensionFn& f, double tol) {
    return pair_delta_report(delta, f, tol).computed;
}

PairingReport pair_delta_report(const DeltaSpec& delta, const ExtensionFn& f, double tol) {
    PairingReport rep;
    rep.tolerance = tol;
    double expected = 0.0;
    rep.computed = pair_core(delta, f, 0, &expected);
    rep.expected = expected;
    rep.residual = std::fabs(rep.computed - rep.expected);
    rep.within_tol = rep.residual <= tol;
    return rep;
}

double pair_delta_derivative(const DeltaSpec& delta, int m, const ExtensionFn& f, double tol) {
    return pair_delta_derivative_report(delta, m, f, tol).computed;
}

PairingReport pair_delta_derivative_report(const DeltaSpec& delta, int m,
                                           const ExtensionFn& f, double tol) {
    if (m < 0) throw std::invalid_argument("pair_delta_derivative: negative order");
    PairingReport rep;
    rep.tolerance = tol;
    double expected = 0.0;
    rep.computed = pair_core(delta, f, m, &expected);
    rep.expected = expected;
    rep.residual = std::fabs(rep.computed - rep.expected);
    rep.within_tol = rep.residual <= tol;
    return rep;
}

} // namespace civita
