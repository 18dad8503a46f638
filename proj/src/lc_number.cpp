#include "civita/lc_number.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace civita {

double ExtReal::to_double() const {
    switch (kind) {
        case Kind::PosInf: return std::numeric_limits<double>::infinity();
        case Kind::NegInf: return -std::numeric_limits<double>::infinity();
        default: return value.to_double();
    }
}

std::string ExtReal::str() const {
    switch (kind) {
        case Kind::PosInf: return "+inf";
        case Kind::NegInf: return "-inf";
        default: return value.str();
    }
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.finite() && b.finite()) return ExtReal(a.value + b.value);
    if (a.finite()) return b;
    if (b.finite()) return a;
    if (a.kind != b.kind)
        throw std::domain_error("ExtReal: +inf + -inf is undefined");
    return a;
}

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
    using K = ExtReal::Kind;
    if (a.finite() && b.finite()) return ExtReal(a.value * b.value);
    int sa = a.finite() ? a.value.sign() : (a.kind == K::PosInf ? 1 : -1);
    int sb = b.finite() ? b.value.sign() : (b.kind == K::PosInf ? 1 : -1);
    if ((a.finite() && sa == 0) || (b.finite() && sb == 0))
        throw std::domain_error("ExtReal: 0 * inf is undefined");
    return sa * sb > 0 ? ExtReal::pos_inf() : ExtReal::neg_inf();
}

namespace {

bool prune_coeff(const Coeff& c, const Config& cfg) {
    if (cfg.exact()) return c.is_zero();
    return std::fabs(c.to_double()) <= cfg.zeta;
}

// gcd over both operands' support offsets and 1.
Rational joint_granularity(const LCNumber& a, const LCNumber& b) {
    Rational g = rational_gcd(a.granularity(), b.granularity());
    return g;
}

} // namespace

LCNumber::LCNumber(std::vector<Term> terms, Config cfg) : cfg_(cfg), terms_(std::move(terms)) {
    normalize();
    truncate(Rational(cfg_.depth) * granularity());
}

LCNumber LCNumber::real(Coeff c, Config cfg) {
    return LCNumber({{Rational(0), std::move(c)}}, cfg);
}

LCNumber LCNumber::d(Config cfg) {
    return LCNumber({{Rational(1), Coeff(Rational(1))}}, cfg);
}

LCNumber LCNumber::monomial(Coeff c, Rational q, Config cfg) {
    return LCNumber({{std::move(q), std::move(c)}}, cfg);
}

void LCNumber::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.exp < y.exp; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().exp == t.exp)
            out.back().coeff += t.coeff;
        else
            out.push_back(std::move(t));
    }
    std::erase_if(out, [&](const Term& t) { return prune_coeff(t.coeff, cfg_); });
    terms_ = std::move(out);
}

void LCNumber::truncate(const Rational& window) {
    if (terms_.empty()) return;
    const Rational cut = terms_.front().exp + window;
    std::erase_if(terms_, [&](const Term& t) { return t.exp > cut; });
}

std::optional<Rational> LCNumber::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().exp;
}

Coeff LCNumber::coefficient(const Rational& q) const {
    for (const auto& t : terms_) {
        if (t.exp == q) return t.coeff;
        if (t.exp > q) break;
    }
    return Coeff(Rational(0));
}

Coeff LCNumber::leading_coeff() const {
    if (terms_.empty()) return Coeff(Rational(0));
    return terms_.front().coeff;
}

Rational LCNumber::granularity() const {
    Rational g(1);
    if (terms_.size() < 2) return g;
    const Rational& lam = terms_.front().exp;
    for (std::size_t i = 1; i < terms_.size(); ++i)
        g = rational_gcd(g, terms_[i].exp - lam);
    return g;
}

LCNumber LCNumber::operator-() const {
    LCNumber r(cfg_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.exp, -t.coeff});
    return r;
}

static void require_same_config(const LCNumber& a, const LCNumber& b) {
    if (!(a.config() == b.config()))
        throw std::invalid_argument("LCNumber: mismatched truncation configuration");
}

LCNumber operator+(const LCNumber& a, const LCNumber& b) {
    require_same_config(a, b);
    std::vector<LCNumber::Term> merged;
    merged.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (ia != a.terms_.end() && ib != b.terms_.end()) {
        if (ia->exp < ib->exp)
            merged.push_back(*ia++);
        else if (ib->exp < ia->exp)
            merged.push_back(*ib++);
        else {
            merged.push_back({ia->exp, ia->coeff + ib->coeff});
            ++ia;
            ++ib;
        }
    }
    merged.insert(merged.end(), ia, a.terms_.end());
    merged.insert(merged.end(), ib, b.terms_.end());

    LCNumber r(a.cfg_);
    r.terms_ = std::move(merged);
    std::erase_if(r.terms_, [&](const LCNumber::Term& t) { return prune_coeff(t.coeff, r.cfg_); });
    r.truncate(Rational(r.cfg_.depth) * joint_granularity(a, b));
    return r;
}

LCNumber operator-(const LCNumber& a, const LCNumber& b) { return a + (-b); }

LCNumber operator*(const LCNumber& a, const LCNumber& b) {
    require_same_config(a, b);
    LCNumber r(a.cfg_);
    if (a.terms_.empty() || b.terms_.empty()) return r;

    // Exponent pairs beyond the window cut are skipped up front: they would be
    // truncated anyway and their exact coefficients can overflow.
    const Rational window = Rational(a.cfg_.depth) * joint_granularity(a, b);
    const Rational cut = a.terms_.front().exp + b.terms_.front().exp + window;

    std::map<Rational, Coeff> acc;
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) {
            Rational q = ta.exp + tb.exp;
            if (q > cut) break;  // b is sorted ascending
            auto [it, fresh] = acc.try_emplace(q, ta.coeff * tb.coeff);
            if (!fresh) it->second += ta.coeff * tb.coeff;
        }
    r.terms_.reserve(acc.size());
    for (auto& [q, c] : acc)
        if (!prune_coeff(c, r.cfg_)) r.terms_.push_back({q, std::move(c)});
    r.truncate(window);
    return r;
}

LCNumber operator/(const LCNumber& a, const LCNumber& b) { return a * inv(b); }

bool operator==(const LCNumber& a, const LCNumber& b) { return compare(a, b) == Cmp::EQ; }
bool operator<(const LCNumber& a, const LCNumber& b) { return compare(a, b) == Cmp::LT; }

Cmp compare(const LCNumber& a, const LCNumber& b) {
    LCNumber diff = a - b;
    if (diff.is_zero()) return Cmp::EQ;
    return diff.leading_coeff().sign() > 0 ? Cmp::GT : Cmp::LT;
}

LCNumber inv(const LCNumber& a) {
    if (a.is_zero()) throw std::domain_error("LCNumber: inverse of zero");
    const Rational lam = *a.valuation();
    const Coeff c = a.leading_coeff();

    // a = c d^lam (1 + eps): divide out the leading monomial.
    LCNumber eps(a.cfg_);
    for (std::size_t i = 1; i < a.terms_.size(); ++i)
        eps.terms_.push_back({a.terms_[i].exp - lam, a.terms_[i].coeff / c});

    // Geometric series sum_{n<=depth} (-eps)^n, by Horner.
    LCNumber one = LCNumber::real(Coeff(Rational(1)), a.cfg_);
    LCNumber s = one;
    LCNumber neg_eps = -eps;
    for (int n = 0; n < a.cfg_.depth; ++n) s = one + neg_eps * s;

    LCNumber lead(a.cfg_);
    lead.terms_.push_back({-lam, Coeff(Rational(1)) / c});
    return lead * s;
}

namespace {

// Exact integer n-th root if it exists.
std::optional<std::int64_t> exact_iroot(std::int64_t v, int n) {
    if (v < 0) return std::nullopt;
    double guess = std::pow(static_cast<double>(v), 1.0 / n);
    for (std::int64_t r = std::max<std::int64_t>(0, llround(guess) - 2);
         r <= llround(guess) + 2; ++r) {
        __int128 p = 1;
        for (int i = 0; i < n; ++i) {
            p *= r;
            if (p > std::numeric_limits<std::int64_t>::max()) break;
        }
        if (p == v) return r;
    }
    return std::nullopt;
}

Coeff coeff_root(const Coeff& c, int n) {
    if (c.exact()) {
        auto rn = exact_iroot(c.rat().num(), n);
        auto rd = exact_iroot(c.rat().den(), n);
        if (rn && rd) return Coeff(Rational(*rn, *rd));
    }
    return Coeff(std::pow(c.to_double(), 1.0 / n));
}

} // namespace

LCNumber root(const LCNumber& a, int n) {
    if (n <= 0) throw std::invalid_argument("root: order must be positive");
    if (a.is_zero() || a.leading_coeff().sign() <= 0)
        throw std::domain_error("root: argument must be positive");
    const Rational lam = *a.valuation();
    const Coeff c = a.leading_coeff();

    LCNumber eps(a.cfg_);
    for (std::size_t i = 1; i < a.terms_.size(); ++i)
        eps.terms_.push_back({a.terms_[i].exp - lam, a.terms_[i].coeff / c});

    // (1 + eps)^{1/n} = sum_k binom(1/n, k) eps^k, k <= depth.
    const Rational alpha(1, n);
    LCNumber s = LCNumber::real(Coeff(Rational(1)), a.cfg_);
    LCNumber eps_pow = s;
    Coeff binom{Rational(1)};
    for (int k = 1; k <= a.cfg_.depth; ++k) {
        binom = binom * Coeff((alpha - Rational(k - 1)) / Rational(k));
        eps_pow = eps_pow * eps;
        if (eps_pow.is_zero()) break;
        s = s + LCNumber::real(binom, a.cfg_) * eps_pow;
    }

    LCNumber lead(a.cfg_);
    lead.terms_.push_back({lam / Rational(n), coeff_root(c, n)});
    return lead * s;
}

LCNumber pow(const LCNumber& a, long long k) {
    if (k < 0) return inv(pow(a, -k));
    LCNumber r = LCNumber::real(Coeff(Rational(1)), a.config());
    LCNumber base = a;
    while (k > 0) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

ExtReal standard_part(const LCNumber& a) {
    if (a.is_zero()) return ExtReal(Coeff(Rational(0)));
    const Rational lam = *a.valuation();
    if (lam < Rational(0))
        return a.leading_coeff().sign() > 0 ? ExtReal::pos_inf() : ExtReal::neg_inf();
    return ExtReal(a.coefficient(Rational(0)));
}

NumberClass classify(const LCNumber& a) {
    if (a.is_zero()) return NumberClass::Zero;
    const Rational lam = *a.valuation();
    if (lam > Rational(0)) return NumberClass::Infinitesimal;
    if (lam == Rational(0)) return NumberClass::Appreciable;
    return NumberClass::Infinite;
}

bool monad_eq(const LCNumber& a, const LCNumber& b) {
    NumberClass c = classify(a - b);
    return c == NumberClass::Zero || c == NumberClass::Infinitesimal;
}

bool is_finite(const LCNumber& a) {
    NumberClass c = classify(a);
    return c != NumberClass::Infinite;
}

bool is_infinitesimal(const LCNumber& a) {
    NumberClass c = classify(a);
    return c == NumberClass::Zero || c == NumberClass::Infinitesimal;
}

LCNumber lc_abs(const LCNumber& a) {
    return a.leading_coeff().sign() < 0 ? -a : a;
}

const char* to_string(NumberClass c) {
    switch (c) {
        case NumberClass::Zero: return "zero";
        case NumberClass::Infinitesimal: return "infinitesimal";
        case NumberClass::Appreciable: return "appreciable";
        default: return "infinite";
    }
}

const char* to_string(Cmp c) {
    switch (c) {
        case Cmp::LT: return "LT";
        case Cmp::EQ: return "EQ";
        default: return "GT";
    }
}

std::string LCNumber::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Coeff c = t.coeff;
        if (first) {
            if (c.sign() < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c.sign() < 0 ? " - " : " + ";
            if (c.sign() < 0) c = -c;
        }
        const bool unit = c.exact() ? c.rat() == Rational(1) : c.to_double() == 1.0;
        if (t.exp == Rational(0)) {
            out += c.str();
        } else {
            if (!unit) out += c.str() + "*";
            out += "d";
            if (t.exp != Rational(1)) out += "^" + t.exp.str();
        }
        first = false;
    }
    return out;
}

} // namespace civita
