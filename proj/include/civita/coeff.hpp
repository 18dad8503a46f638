#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "civita/rational.hpp"

namespace civita {

// Series coefficient: either an exact rational or a double. Operations on
// two exact values stay exact; any double operand makes the result a double.
// An exact value keeps a double mirror so numeric reads never re-convert.
class Coeff {
public:
    Coeff() : exact_(true), rat_(0), val_(0.0) {}
    Coeff(const Rational& r) : exact_(true), rat_(r), val_(r.to_double()) {}
    Coeff(std::int64_t n) : Coeff(Rational(n)) {}
    Coeff(int n) : Coeff(Rational(n)) {}
    Coeff(double v) : exact_(false), rat_(0), val_(v) {}

    bool exact() const { return exact_; }
    const Rational& rat() const {
        if (!exact_) throw std::logic_error("Coeff: not exact");
        return rat_;
    }
    double to_double() const { return val_; }

    bool is_zero() const { return exact_ ? rat_.is_zero() : val_ == 0.0; }
    int sign() const { return exact_ ? rat_.sign() : (val_ > 0 ? 1 : (val_ < 0 ? -1 : 0)); }

    friend Coeff operator-(const Coeff& x) {
        return x.exact_ ? Coeff(-x.rat_) : Coeff(-x.val_);
    }
    friend Coeff operator+(const Coeff& x, const Coeff& y) {
        if (x.exact_ && y.exact_) return Coeff(x.rat_ + y.rat_);
        return Coeff(x.val_ + y.val_);
    }
    friend Coeff operator-(const Coeff& x, const Coeff& y) { return x + (-y); }
    friend Coeff operator*(const Coeff& x, const Coeff& y) {
        if (x.exact_ && y.exact_) return Coeff(x.rat_ * y.rat_);
        return Coeff(x.val_ * y.val_);
    }
    friend Coeff operator/(const Coeff& x, const Coeff& y) {
        if (y.is_zero()) throw std::domain_error("Coeff: division by zero");
        if (x.exact_ && y.exact_) return Coeff(x.rat_ / y.rat_);
        return Coeff(x.val_ / y.val_);
    }

    Coeff& operator+=(const Coeff& y) { return *this = *this + y; }
    Coeff& operator-=(const Coeff& y) { return *this = *this - y; }
    Coeff& operator*=(const Coeff& y) { return *this = *this * y; }
    Coeff& operator/=(const Coeff& y) { return *this = *this / y; }

    // Exact equality when both sides are exact, double equality otherwise.
    friend bool operator==(const Coeff& x, const Coeff& y) {
        if (x.exact_ && y.exact_) return x.rat_ == y.rat_;
        return x.val_ == y.val_;
    }
    friend bool operator!=(const Coeff& x, const Coeff& y) { return !(x == y); }
    friend bool operator<(const Coeff& x, const Coeff& y) {
        if (x.exact_ && y.exact_) return x.rat_ < y.rat_;
        return x.val_ < y.val_;
    }
    friend bool operator>(const Coeff& x, const Coeff& y) { return y < x; }
    friend bool operator<=(const Coeff& x, const Coeff& y) { return !(y < x); }
    friend bool operator>=(const Coeff& x, const Coeff& y) { return !(x < y); }

    // Exact values render as p/q so text round-trips losslessly; doubles use
    // shortest-exact decimal digits.
    std::string str() const {
        if (exact_) return rat_.str();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", val_);
        return buf;
    }

private:
    bool exact_;
    Rational rat_;
    double val_;
};

inline Coeff abs(const Coeff& x) { return x.sign() < 0 ? -x : x; }

} // namespace civita
