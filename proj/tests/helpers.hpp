#pragma once

#include <random>
#include <vector>

#include "civita/lc_number.hpp"

namespace testgen {

using civita::Coeff;
using civita::Config;
using civita::LCNumber;
using civita::Rational;

inline Config exact_cfg(int depth = 16) { return Config{depth, 0.0}; }

// Random nonzero rational with small numerator and power-of-two denominator,
// so long chains of exact operations stay inside 64 bits.
inline Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-12, 12);
    std::uniform_int_distribution<int> den_pow(0, 3);
    int n = num(rng);
    if (n == 0) n = 1;
    return Rational(n, std::int64_t(1) << den_pow(rng));
}

// Random exact-mode LC number with exponents on the half-integer grid,
// between lo_half/2 and hi_half/2.
inline LCNumber random_lc(std::mt19937& rng, Config cfg = exact_cfg(),
                          int lo_half = -4, int hi_half = 8, int max_terms = 5) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> exp2(lo_half, hi_half);
    std::vector<LCNumber::Term> terms;
    int k = nterms(rng);
    for (int i = 0; i < k; ++i)
        terms.push_back({Rational(exp2(rng), 2), Coeff(random_rational(rng))});
    return LCNumber(std::move(terms), cfg);
}

// Random number whose support fits in a 2-exponent-unit band, narrow enough
// that sums and triple products never hit the truncation window: field laws
// then hold exactly.
inline LCNumber random_lc_banded(std::mt19937& rng, int band_lo_half,
                                 Config cfg = exact_cfg()) {
    return random_lc(rng, cfg, band_lo_half, band_lo_half + 4);
}

// Random finite (valuation >= 0) exact-mode LC number.
inline LCNumber random_finite_lc(std::mt19937& rng, Config cfg = exact_cfg()) {
    return random_lc(rng, cfg, 0, 8);
}

// Random nonzero number safe to invert at depth 16 in exact mode: unit-ish
// leading coefficient and small dyadic tail coefficients, so the geometric
// series coefficients stay inside 64 bits.
inline LCNumber random_invertible_lc(std::mt19937& rng, Config cfg = exact_cfg()) {
    std::uniform_int_distribution<int> lead_exp2(-4, 4);
    std::uniform_int_distribution<int> sign(0, 1);
    std::uniform_int_distribution<int> ntail(0, 3);
    std::uniform_int_distribution<int> off2(1, 6);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den_pow(0, 2);

    Rational lam(lead_exp2(rng), 2);
    std::vector<LCNumber::Term> terms;
    terms.push_back({lam, Coeff(Rational(sign(rng) ? 1 : -1))});
    int k = ntail(rng);
    for (int i = 0; i < k; ++i) {
        int n = num(rng);
        if (n == 0) n = 1;
        terms.push_back({lam + Rational(off2(rng), 2),
                         Coeff(Rational(n, std::int64_t(1) << den_pow(rng)))});
    }
    return LCNumber(std::move(terms), cfg);
}

} // namespace testgen
