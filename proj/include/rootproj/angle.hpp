#pragma once

#include <optional>
#include <string>
#include <vector>

#include "projector.hpp"
#include "vec.hpp"

namespace rootproj {

enum class AngleVerdict { a2, b2_like, g2_like, orthogonal, proportional, incompatible };

[[nodiscard]] inline std::string verdict_str(AngleVerdict v) {
    switch (v) {
        case AngleVerdict::a2: return "A2";
        case AngleVerdict::b2_like: return "B2-like";
        case AngleVerdict::g2_like: return "G2-like";
        case AngleVerdict::orthogonal: return "orthogonal";
        case AngleVerdict::proportional: return "proportional";
        case AngleVerdict::incompatible: return "incompatible";
    }
    return "?";
}

struct AnglePair {
    std::optional<Rational> c;           // empty when orthogonal
    Rational r;                          // longer over shorter, ≥ 1
    std::optional<Rational> product_cr;  // empty when orthogonal
    bool first_longer = false;
    AngleVerdict verdict = AngleVerdict::incompatible;
};

/// C = (|a|²|b|²)/⟨a,b⟩² and R = max/min of the squared lengths. The verdict
/// names the rank-2 configuration these values admit.
[[nodiscard]] inline AnglePair angle_data(const Vec& a, const Vec& b) {
    Rational na = norm_sq(a), nb = norm_sq(b);
    if (na.is_zero() || nb.is_zero()) throw std::invalid_argument("zero vector");
    AnglePair out;
    out.first_longer = na >= nb;
    out.r = out.first_longer ? na / nb : nb / na;
    Rational ip = inner(a, b);
    if (ip.is_zero()) {
        out.verdict = AngleVerdict::orthogonal;
        return out;
    }
    out.c = na * nb / (ip * ip);
    out.product_cr = *out.c * out.r;
    if (*out.c == Rational(1)) {
        out.verdict = AngleVerdict::proportional;
    } else if (*out.c == Rational(4) && out.r == Rational(1)) {
        out.verdict = AngleVerdict::a2;
    } else if (*out.c == Rational(2) && out.r == Rational(2)) {
        out.verdict = AngleVerdict::b2_like;
    } else if (*out.c == Rational(4, 3) && out.r == Rational(3)) {
        out.verdict = AngleVerdict::g2_like;
    } else {
        out.verdict = AngleVerdict::incompatible;
    }
    return out;
}

struct ScreenEntry {
    Vec a, b;
    AnglePair data;
};

struct ScreenReport {
    std::vector<ScreenEntry> pairs;      // every non-orthogonal, non-proportional pair
    std::vector<ScreenEntry> offenders;  // the incompatible subset
    bool admits_a2 = false, admits_b2 = false, admits_g2 = false;
};

/// Angle screen over all unordered pairs of canonical sign representatives.
[[nodiscard]] inline ScreenReport incompatibility_screen(const ProjectedSet& ps) {
    std::vector<Vec> reps;
    for (const auto& v : ps.sigma_theta) {
        Vec c = canonical_sign(v);
        if (c == v) reps.push_back(v);
    }
    ScreenReport rep;
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j) {
            AnglePair d = angle_data(reps[i], reps[j]);
            if (d.verdict == AngleVerdict::orthogonal ||
                d.verdict == AngleVerdict::proportional)
                continue;
            rep.pairs.push_back({reps[i], reps[j], d});
            switch (d.verdict) {
                case AngleVerdict::a2: rep.admits_a2 = true; break;
                case AngleVerdict::b2_like: rep.admits_b2 = true; break;
                case AngleVerdict::g2_like: rep.admits_g2 = true; break;
                default: rep.offenders.push_back({reps[i], reps[j], d});
            }
        }
    return rep;
}

}  // namespace rootproj
