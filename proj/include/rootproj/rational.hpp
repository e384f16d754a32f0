#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rootproj {

/// Exact rational number over 64-bit integers, always kept in lowest terms
/// with a positive denominator. Intermediate products use 128-bit arithmetic
/// and overflow past 64 bits is rejected rather than wrapped.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    [[nodiscard]] long long num() const { return num_; }
    [[nodiscard]] long long den() const { return den_; }

    [[nodiscard]] bool is_zero() const { return num_ == 0; }
    [[nodiscard]] bool is_integer() const { return den_ == 1; }
    [[nodiscard]] int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                       (__int128)a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("division by zero");
        return from128((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    /// Renders as "p/q", or just "p" when the value is an integer.
    [[nodiscard]] std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        size_t pos = 0;
        if (slash == std::string::npos) {
            long long n = std::stoll(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("bad rational: " + s);
            return Rational(n);
        }
        long long n = std::stoll(s.substr(0, slash), &pos);
        if (pos != slash) throw std::invalid_argument("bad rational: " + s);
        long long d = std::stoll(s.substr(slash + 1), &pos);
        if (pos != s.size() - slash - 1) throw std::invalid_argument("bad rational: " + s);
        return Rational(n, d);
    }

private:
    long long num_ = 0;
    long long den_ = 1;

    void normalize() {
        if (den_ == 0) throw std::domain_error("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static Rational from128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi) throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }
};

}  // namespace rootproj
