#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace civita {

// Exact rational with canonical form gcd(|num|, den) = 1, den >= 1.
// Arithmetic is carried out in 128-bit intermediates; results that do not
// fit in 64 bits throw std::overflow_error instead of wrapping.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        __int128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        assign_reduced(nn, dd);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator-(const Rational& x) { return make_raw(-x.num_, x.den_); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return reduced((__int128)x.num_ * y.den_ + (__int128)y.num_ * x.den_,
                       (__int128)x.den_ * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return reduced((__int128)x.num_ * y.num_, (__int128)x.den_ * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw std::domain_error("Rational: division by zero");
        return reduced((__int128)x.num_ * y.den_, (__int128)x.den_ * y.num_);
    }

    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    Rational& operator/=(const Rational& y) { return *this = *this / y; }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y) {
        return (__int128)x.num_ * y.den_ < (__int128)y.num_ * x.den_;
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

private:
    static Rational make_raw(std::int64_t n, std::int64_t d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }
    static Rational reduced(__int128 n, __int128 d) {
        Rational r;
        if (d < 0) { n = -n; d = -d; }
        r.assign_reduced(n, d);
        return r;
    }
    void assign_reduced(__int128 n, __int128 d) {
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128(a, d);
        if (g > 1) { n /= g; d /= g; }
        constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: value exceeds 64-bit range");
        num_ = static_cast<std::int64_t>(n);
        den_ = static_cast<std::int64_t>(d);
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

// gcd of rationals in reduced form: gcd(a/b, c/d) = gcd(a,c) / lcm(b,d).
inline Rational rational_gcd(const Rational& x, const Rational& y) {
    if (x.is_zero()) return abs(y);
    if (y.is_zero()) return abs(x);
    std::int64_t gn = std::gcd(x.num() < 0 ? -x.num() : x.num(),
                               y.num() < 0 ? -y.num() : y.num());
    std::int64_t gd = std::gcd(x.den(), y.den());
    return Rational(gn, x.den()) / Rational(y.den() / gd);
}

inline Rational pow(Rational x, long long e) {
    if (e < 0) {
        x = Rational(1) / x;
        e = -e;
    }
    Rational r(1);
    while (e > 0) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

} // namespace civita
