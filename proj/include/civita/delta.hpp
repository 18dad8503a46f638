#pragma once

#include <utility>

#include "civita/power_series.hpp"
#include "civita/real_expr.hpp"

namespace civita {

// Dirac-like bump: c (1 - ((x-r)/h)^2)^{k+1} supported on [r-h, r+h] with
// infinitesimal h, normalized to unit integral. unit_mass is the exact
// rational 1/B(k) with B(k) = integral of (1-u^2)^{k+1} over [-1,1]; the full
// normalization constant is unit_mass / h.
struct DeltaSpec {
    LCNumber center;
    LCNumber half_width;
    int smoothness = 0;  // C^k contact at the support boundary
    Rational unit_mass;  // 1 / B(k)
};

// B(k) as an exact rational via the recurrence I_m = I_{m-1} * 2m/(2m+1),
// I_0 = 2, B(k) = I_{k+1}.
Rational bump_normalizer(int k);

// Realizes the bump as a one-piece simple function. Requires finite r,
// positive infinitesimal h and k >= 0.
std::pair<DeltaSpec, Piecewise> make_delta(const LCNumber& r, const LCNumber& h, int k);

struct PairingReport {
    double computed = 0.0;
    double expected = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool within_tol = false;
};

// integral of delta * ext^j f over the support; equals f(st r).
double pair_delta(const DeltaSpec& delta, const ExtensionFn& f, double tol = 1e-9);
PairingReport pair_delta_report(const DeltaSpec& delta, const ExtensionFn& f,
                                double tol = 1e-9);

// integral of delta^(m) * ext^j f, computed by m-fold integration by parts
// (boundary terms vanish by the C^k contact); equals (-1)^m f^(m)(st r) when
// j >= m and is exactly 0 when j < m.
double pair_delta_derivative(const DeltaSpec& delta, int m, const ExtensionFn& f,
                             double tol = 1e-9);
PairingReport pair_delta_derivative_report(const DeltaSpec& delta, int m,
                                           const ExtensionFn& f, double tol = 1e-9);

} // namespace civita
