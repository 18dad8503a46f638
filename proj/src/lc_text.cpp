#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

#include "civita/error.hpp"
#include "civita/lc_expr.hpp"
#include "civita/lc_number.hpp"

namespace civita {

namespace {

struct Scanner {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    bool at_end() { return peek() == '\0'; }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }
};

bool digit_at(const std::string& s, std::size_t i) {
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
}

// Scans an unsigned numeric literal: integer, p/q rational, or decimal with
// optional exponent part. In exact mode decimals are converted to exact
// rationals; in float mode everything becomes a double.
Coeff scan_coeff(Scanner& sc, const Config& cfg) {
    sc.skip_ws();
    std::size_t start = sc.pos;
    if (!digit_at(sc.s, sc.pos) && sc.s[sc.pos] != '.') sc.fail("expected number");
    while (digit_at(sc.s, sc.pos)) ++sc.pos;

    bool is_decimal = false;
    if (sc.pos < sc.s.size() && sc.s[sc.pos] == '.') {
        is_decimal = true;
        ++sc.pos;
        while (digit_at(sc.s, sc.pos)) ++sc.pos;
    }
    if (sc.pos < sc.s.size() && (sc.s[sc.pos] == 'e' || sc.s[sc.pos] == 'E')) {
        std::size_t p = sc.pos + 1;
        if (p < sc.s.size() && (sc.s[p] == '+' || sc.s[p] == '-')) ++p;
        if (digit_at(sc.s, p)) {
            is_decimal = true;
            sc.pos = p;
            while (digit_at(sc.s, sc.pos)) ++sc.pos;
        }
    }

    if (!is_decimal && sc.pos < sc.s.size() && sc.s[sc.pos] == '/' && digit_at(sc.s, sc.pos + 1)) {
        // p/q rational
        std::size_t num_end = sc.pos;
        ++sc.pos;
        std::size_t den_start = sc.pos;
        while (digit_at(sc.s, sc.pos)) ++sc.pos;
        std::int64_t num = std::strtoll(sc.s.substr(start, num_end - start).c_str(), nullptr, 10);
        std::int64_t den = std::strtoll(sc.s.substr(den_start, sc.pos - den_start).c_str(), nullptr, 10);
        if (den == 0) throw ParseError("zero denominator", den_start);
        Rational r(num, den);
        return cfg.exact() ? Coeff(r) : Coeff(r.to_double());
    }

    std::string text = sc.s.substr(start, sc.pos - start);
    if (!is_decimal) {
        std::int64_t v = std::strtoll(text.c_str(), nullptr, 10);
        return cfg.exact() ? Coeff(Rational(v)) : Coeff(static_cast<double>(v));
    }
    double v = std::strtod(text.c_str(), nullptr);
    if (cfg.exact()) {
        // Finite decimals are exact: digits * 10^-k, exponent folded in.
        std::int64_t mant = 0;
        int frac_digits = 0, exp10 = 0;
        std::size_t i = 0;
        bool overflow = false;
        auto push = [&](char c) {
            if (mant > (INT64_MAX - 9) / 10) {
                overflow = true;
                return;
            }
            mant = mant * 10 + (c - '0');
        };
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
            push(text[i]);
        if (i < text.size() && text[i] == '.') {
            for (++i; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
                push(text[i]);
                ++frac_digits;
            }
        }
        if (i < text.size() && (text[i] == 'e' || text[i] == 'E'))
            exp10 = std::atoi(text.c_str() + i + 1);
        if (!overflow) {
            Rational r(mant);
            int shift = exp10 - frac_digits;
            r = r * pow(Rational(10), shift);
            return Coeff(r);
        }
    }
    return Coeff(v);
}

// Exponent after '^' in the number format: [-] int or p/q, parsed greedily.
Rational scan_exponent(Scanner& sc) {
    sc.skip_ws();
    bool neg = sc.accept('-');
    sc.skip_ws();
    std::size_t start = sc.pos;
    if (!digit_at(sc.s, sc.pos)) sc.fail("expected exponent");
    while (digit_at(sc.s, sc.pos)) ++sc.pos;
    std::int64_t num = std::strtoll(sc.s.substr(start, sc.pos - start).c_str(), nullptr, 10);
    std::int64_t den = 1;
    if (sc.pos < sc.s.size() && sc.s[sc.pos] == '/' && digit_at(sc.s, sc.pos + 1)) {
        ++sc.pos;
        std::size_t ds = sc.pos;
        while (digit_at(sc.s, sc.pos)) ++sc.pos;
        den = std::strtoll(sc.s.substr(ds, sc.pos - ds).c_str(), nullptr, 10);
    }
    Rational r(num, den);
    return neg ? -r : r;
}

} // namespace

LCNumber parse_number(const std::string& text, Config cfg) {
    Scanner sc{text};
    std::vector<LCNumber::Term> terms;
    bool first = true;
    while (!sc.at_end()) {
        int sign = 1;
        char c = sc.peek();
        if (c == '+' || c == '-') {
            sign = c == '-' ? -1 : 1;
            ++sc.pos;
        } else if (!first) {
            sc.fail("expected '+' or '-' between terms");
        }
        sc.skip_ws();

        Coeff coeff(Rational(1));
        bool have_coeff = false;
        if (digit_at(sc.s, sc.pos) || (sc.pos < sc.s.size() && sc.s[sc.pos] == '.')) {
            coeff = scan_coeff(sc, cfg);
            have_coeff = true;
        }
        sc.skip_ws();
        if (sc.pos < sc.s.size() && sc.s[sc.pos] == '*') {
            ++sc.pos;
            sc.skip_ws();
        }

        Rational exp(0);
        if (sc.pos < sc.s.size() && sc.s[sc.pos] == 'd') {
            ++sc.pos;
            exp = Rational(1);
            if (sc.pos < sc.s.size() && sc.s[sc.pos] == '^') {
                ++sc.pos;
                exp = scan_exponent(sc);
            }
        } else if (!have_coeff) {
            sc.fail("expected coefficient or 'd'");
        }
        if (sign < 0) coeff = -coeff;
        if (!cfg.exact() && coeff.exact()) coeff = Coeff(coeff.to_double());
        terms.push_back({exp, coeff});
        first = false;
    }
    if (first) throw ParseError("empty number", 0);
    return LCNumber(std::move(terms), cfg);
}

// ---------------------------------------------------------------------------
// Expression evaluator

namespace {

class ExprEval {
public:
    ExprEval(const std::string& text, Config cfg) : sc_{text}, cfg_(cfg) {}

    LCValue run() {
        LCValue v = expr();
        if (!sc_.at_end()) sc_.fail("trailing input");
        return v;
    }

private:
    LCNumber as_number(const LCValue& v) {
        switch (v.kind) {
            case LCValue::Kind::Number: return v.number;
            case LCValue::Kind::Extended:
                if (!v.extended.finite())
                    throw std::domain_error("cannot use infinite value in arithmetic");
                return LCNumber::real(v.extended.value, cfg_);
            default:
                if (!v.exponent)
                    throw std::domain_error("cannot use infinite valuation in arithmetic");
                return LCNumber::real(cfg_.exact() ? Coeff(*v.exponent)
                                                   : Coeff(v.exponent->to_double()),
                                      cfg_);
        }
    }

    LCValue expr() {
        LCValue acc = term();
        while (true) {
            char c = sc_.peek();
            if (c != '+' && c != '-') return acc;
            ++sc_.pos;
            LCValue rhs = term();
            LCNumber l = as_number(acc), r = as_number(rhs);
            acc = LCValue::from_number(c == '+' ? l + r : l - r);
        }
    }

    LCValue term() {
        LCValue acc = factor();
        while (true) {
            char c = sc_.peek();
            if (c != '*' && c != '/') return acc;
            ++sc_.pos;
            LCValue rhs = factor();
            LCNumber l = as_number(acc), r = as_number(rhs);
            acc = LCValue::from_number(c == '*' ? l * r : l / r);
        }
    }

    LCValue factor() {
        LCValue base = unary();
        if (sc_.peek() != '^') return base;
        ++sc_.pos;
        LCValue e = factor();  // right associative
        Rational q = exponent_value(e);
        return LCValue::from_number(power(as_number(base), q));
    }

    Rational exponent_value(const LCValue& v) {
        LCNumber n = as_number(v);
        if (n.is_zero()) return Rational(0);
        if (n.terms().size() != 1 || *n.valuation() != Rational(0))
            throw std::domain_error("exponent must be a rational constant");
        const Coeff& c = n.leading_coeff();
        if (c.exact()) return c.rat();
        // exponents are always exact: recover p/q from the double via
        // continued fractions and verify the reconstruction is lossless
        double x = c.to_double();
        double a = x;
        std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        for (int it = 0; it < 40; ++it) {
            double fl = std::floor(a);
            std::int64_t ai = static_cast<std::int64_t>(fl);
            std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
            if (q2 > 1000000) break;
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            if (static_cast<double>(p1) / static_cast<double>(q1) == x)
                return Rational(p1, q1);
            double frac = a - fl;
            if (frac == 0.0) break;
            a = 1.0 / frac;
        }
        throw std::domain_error("exponent must be a rational constant");
    }

    LCNumber power(const LCNumber& base, const Rational& q) {
        if (q.is_integer()) return pow(base, q.num());
        return root(pow(base, q.num()), static_cast<int>(q.den()));
    }

    LCValue unary() {
        if (sc_.peek() == '-') {
            ++sc_.pos;
            LCValue v = unary();
            return LCValue::from_number(-as_number(v));
        }
        if (sc_.peek() == '+') {
            ++sc_.pos;
            return unary();
        }
        return primary();
    }

    LCValue primary() {
        char c = sc_.peek();
        if (c == '(') {
            ++sc_.pos;
            LCValue v = expr();
            sc_.expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            // Plain literal; '/' stays an operator here so 1/2 is a division.
            std::size_t save = sc_.pos;
            Coeff coeff = scan_plain(save);
            return LCValue::from_number(LCNumber::real(coeff, cfg_));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = sc_.pos;
            while (sc_.pos < sc_.s.size() &&
                   std::isalnum(static_cast<unsigned char>(sc_.s[sc_.pos])))
                ++sc_.pos;
            std::string name = sc_.s.substr(start, sc_.pos - start);
            if (name == "d") return LCValue::from_number(LCNumber::d(cfg_));
            if (name == "pi")
                return LCValue::from_number(LCNumber::real(Coeff(3.14159265358979323846), cfg_));
            return call(name);
        }
        sc_.fail("expected expression");
    }

    Coeff scan_plain(std::size_t start) {
        // integer / decimal literal; '/' is left to the division operator
        sc_.pos = start;
        while (digit_at(sc_.s, sc_.pos)) ++sc_.pos;
        if (sc_.pos < sc_.s.size() && sc_.s[sc_.pos] == '.') {
            ++sc_.pos;
            while (digit_at(sc_.s, sc_.pos)) ++sc_.pos;
        }
        if (sc_.pos < sc_.s.size() && (sc_.s[sc_.pos] == 'e' || sc_.s[sc_.pos] == 'E')) {
            std::size_t p = sc_.pos + 1;
            if (p < sc_.s.size() && (sc_.s[p] == '+' || sc_.s[p] == '-')) ++p;
            if (digit_at(sc_.s, p)) {
                sc_.pos = p;
                while (digit_at(sc_.s, sc_.pos)) ++sc_.pos;
            }
        }
        std::string text = sc_.s.substr(start, sc_.pos - start);
        Scanner tmp{text};
        return scan_coeff(tmp, cfg_);
    }

    LCValue call(const std::string& name) {
        sc_.expect('(');
        LCValue arg = expr();
        if (name == "root") {
            sc_.expect(',');
            LCValue ord = expr();
            sc_.expect(')');
            Rational n = exponent_value(ord);
            if (!n.is_integer() || n.num() <= 0)
                throw std::domain_error("root: order must be a positive integer");
            return LCValue::from_number(root(as_number(arg), static_cast<int>(n.num())));
        }
        sc_.expect(')');
        if (name == "st") return LCValue::from_extended(standard_part(as_number(arg)));
        if (name == "lambda") return LCValue::from_exponent(as_number(arg).valuation());
        if (name == "inv") return LCValue::from_number(inv(as_number(arg)));
        if (name == "abs") return LCValue::from_number(lc_abs(as_number(arg)));
        throw ParseError("unknown function '" + name + "'", sc_.pos);
    }

    Scanner sc_;
    Config cfg_;
};

} // namespace

std::string LCValue::str() const {
    switch (kind) {
        case Kind::Number: return number.str();
        case Kind::Extended: return extended.str();
        default: return exponent ? exponent->str() : "infinity";
    }
}

LCValue eval_lc_expression(const std::string& text, Config cfg) {
    return ExprEval(text, cfg).run();
}

} // namespace civita
