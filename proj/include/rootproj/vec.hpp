#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace rootproj {

/// Vector with exact rational coordinates.
using Vec = std::vector<Rational>;

[[nodiscard]] inline Rational inner(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) throw std::invalid_argument("dimension mismatch");
    Rational acc;
    for (size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return acc;
}

[[nodiscard]] inline Rational norm_sq(const Vec& v) { return inner(v, v); }

[[nodiscard]] inline bool is_zero(const Vec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

[[nodiscard]] inline Vec add(const Vec& u, const Vec& v) {
    Vec r(u.size());
    for (size_t i = 0; i < u.size(); ++i) r[i] = u[i] + v[i];
    return r;
}

[[nodiscard]] inline Vec sub(const Vec& u, const Vec& v) {
    Vec r(u.size());
    for (size_t i = 0; i < u.size(); ++i) r[i] = u[i] - v[i];
    return r;
}

[[nodiscard]] inline Vec scale(const Rational& c, const Vec& v) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

[[nodiscard]] inline Vec negate(const Vec& v) { return scale(Rational(-1), v); }

/// Canonical representative of {v, -v}: flips sign so that the first nonzero
/// coordinate is positive. Zero vectors pass through unchanged.
[[nodiscard]] inline Vec canonical_sign(const Vec& v) {
    for (const auto& c : v) {
        if (c.is_zero()) continue;
        return c.sign() > 0 ? v : negate(v);
    }
    return v;
}

[[nodiscard]] inline std::string vec_str(const Vec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    s += "]";
    return s;
}

/// Reflection of v in the hyperplane orthogonal to root r.
[[nodiscard]] inline Vec reflect(const Vec& v, const Vec& r) {
    Rational rr = norm_sq(r);
    if (rr.is_zero()) throw std::invalid_argument("reflection in zero vector");
    Rational c = Rational(2) * inner(v, r) / rr;
    return sub(v, scale(c, r));
}

}  // namespace rootproj
