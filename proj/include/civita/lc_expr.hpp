#pragma once

#include <optional>
#include <string>

#include "civita/lc_number.hpp"

namespace civita {

// Result of evaluating a Levi-Civita arithmetic expression: a field element,
// a standard part (st), or a valuation exponent (lambda; nullopt = infinity).
struct LCValue {
    enum class Kind { Number, Extended, Exponent };
    Kind kind = Kind::Number;
    LCNumber number;
    ExtReal extended;
    std::optional<Rational> exponent;

    static LCValue from_number(LCNumber n) {
        LCValue v;
        v.kind = Kind::Number;
        v.number = std::move(n);
        return v;
    }
    static LCValue from_extended(ExtReal e) {
        LCValue v;
        v.kind = Kind::Extended;
        v.extended = std::move(e);
        return v;
    }
    static LCValue from_exponent(std::optional<Rational> q) {
        LCValue v;
        v.kind = Kind::Exponent;
        v.exponent = std::move(q);
        return v;
    }

    std::string str() const;
};

// Evaluates an expression over LC numbers: literals, `d`, + - * / ^,
// parentheses, and the functions st, lambda, inv, root, abs.
LCValue eval_lc_expression(const std::string& text, Config cfg = Config{});

} // namespace civita
