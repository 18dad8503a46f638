#pragma once

#include <optional>
#include <string>
#include <vector>

#include "civita/coeff.hpp"
#include "civita/rational.hpp"

namespace civita {

// Truncation configuration shared by all operands of an operation.
// zeta == 0 selects exact-coefficient mode: only exact zeros are pruned and
// rational coefficients are never rounded.
struct Config {
    int depth = 16;       // exponent levels retained beyond the leading one
    double zeta = 1e-13;  // coefficients with |c| <= zeta are dropped

    bool exact() const { return zeta == 0.0; }
    friend bool operator==(const Config&, const Config&) = default;
};

enum class Cmp { LT, EQ, GT };
enum class NumberClass { Zero, Infinitesimal, Appreciable, Infinite };

// Extended real: the codomain of the standard part map.
struct ExtReal {
    enum class Kind { Finite, PosInf, NegInf };
    Kind kind = Kind::Finite;
    Coeff value;  // meaningful iff kind == Finite

    ExtReal() = default;
    ExtReal(Coeff v) : kind(Kind::Finite), value(std::move(v)) {}
    static ExtReal pos_inf() { return ExtReal(Kind::PosInf); }
    static ExtReal neg_inf() { return ExtReal(Kind::NegInf); }

    bool finite() const { return kind == Kind::Finite; }
    double to_double() const;
    std::string str() const;

    friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
    friend ExtReal operator*(const ExtReal& a, const ExtReal& b);
    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        if (a.kind != b.kind) return false;
        return a.kind != Kind::Finite || a.value == b.value;
    }
    friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }

private:
    explicit ExtReal(Kind k) : kind(k) {}
};

// Element of the Levi-Civita field, truncated: a sparse series
// sum of c_i * d^{q_i} with strictly increasing rational exponents q_i,
// kept up to q <= lambda + depth * granularity.
class LCNumber {
public:
    struct Term {
        Rational exp;
        Coeff coeff;
    };

    explicit LCNumber(Config cfg = Config{}) : cfg_(cfg) {}
    LCNumber(std::vector<Term> terms, Config cfg);

    static LCNumber zero(Config cfg = Config{}) { return LCNumber(cfg); }
    static LCNumber real(Coeff c, Config cfg = Config{});
    static LCNumber d(Config cfg = Config{});  // the canonical infinitesimal
    static LCNumber monomial(Coeff c, Rational q, Config cfg = Config{});

    const Config& config() const { return cfg_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Least support exponent; nullopt for zero (the lambda(0) = infinity convention).
    std::optional<Rational> valuation() const;
    Coeff coefficient(const Rational& q) const;
    Coeff leading_coeff() const;

    // gcd of the support offsets q - lambda together with 1; in (0, 1].
    Rational granularity() const;

    std::string str() const;

    LCNumber operator-() const;
    friend LCNumber operator+(const LCNumber& a, const LCNumber& b);
    friend LCNumber operator-(const LCNumber& a, const LCNumber& b);
    friend LCNumber operator*(const LCNumber& a, const LCNumber& b);
    friend LCNumber operator/(const LCNumber& a, const LCNumber& b);

    friend bool operator==(const LCNumber& a, const LCNumber& b);
    friend bool operator!=(const LCNumber& a, const LCNumber& b) { return !(a == b); }
    friend bool operator<(const LCNumber& a, const LCNumber& b);
    friend bool operator>(const LCNumber& a, const LCNumber& b) { return b < a; }
    friend bool operator<=(const LCNumber& a, const LCNumber& b) { return !(b < a); }
    friend bool operator>=(const LCNumber& a, const LCNumber& b) { return !(a < b); }

private:
    friend LCNumber inv(const LCNumber& a);
    friend LCNumber root(const LCNumber& a, int n);

    void normalize();
    void truncate(const Rational& window);

    Config cfg_;
    std::vector<Term> terms_;  // strictly increasing in exp
};

LCNumber inv(const LCNumber& a);
LCNumber root(const LCNumber& a, int n);
LCNumber pow(const LCNumber& a, long long k);

Cmp compare(const LCNumber& a, const LCNumber& b);
ExtReal standard_part(const LCNumber& a);
NumberClass classify(const LCNumber& a);
bool monad_eq(const LCNumber& a, const LCNumber& b);
bool is_finite(const LCNumber& a);
bool is_infinitesimal(const LCNumber& a);
LCNumber lc_abs(const LCNumber& a);

// Parses the linear text format "c0*d^q0 + c1*d^q1 + ...": coefficients as
// integers, p/q rationals or decimals, exponents as integers or p/q.
// In exact mode decimal literals become exact rationals.
LCNumber parse_number(const std::string& text, Config cfg = Config{});

const char* to_string(NumberClass c);
const char* to_string(Cmp c);

} // namespace civita
