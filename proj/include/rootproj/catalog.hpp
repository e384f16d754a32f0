#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "vec.hpp"

namespace rootproj {

enum class Family { A, B, C, D, E, F, G };
enum class Convention { labesse, bourbaki };

[[nodiscard]] inline char family_char(Family f) {
    switch (f) {
        case Family::A: return 'A';
        case Family::B: return 'B';
        case Family::C: return 'C';
        case Family::D: return 'D';
        case Family::E: return 'E';
        case Family::F: return 'F';
        case Family::G: return 'G';
    }
    throw std::logic_error("bad family");
}

[[nodiscard]] inline Family parse_family(char c) {
    switch (c) {
        case 'A': return Family::A;
        case 'B': return Family::B;
        case 'C': return Family::C;
        case 'D': return Family::D;
        case 'E': return Family::E;
        case 'F': return Family::F;
        case 'G': return Family::G;
        default: throw std::invalid_argument(std::string("unknown family: ") + c);
    }
}

struct SystemLabel {
    Family family = Family::A;
    int rank = 1;
    Convention convention = Convention::labesse;

    [[nodiscard]] std::string str() const {
        std::string s(1, family_char(family));
        s += std::to_string(rank);
        if (family == Family::E && convention == Convention::bourbaki) s += "(bourbaki)";
        return s;
    }
};

/// Parses labels like "A3", "E6", "F4".
[[nodiscard]] inline SystemLabel parse_label(const std::string& s,
                                             Convention conv = Convention::labesse) {
    if (s.size() < 2) throw std::invalid_argument("bad system label: " + s);
    SystemLabel label;
    label.family = parse_family(s[0]);
    label.rank = std::stoi(s.substr(1));
    label.convention = conv;
    return label;
}

struct RootSystemData {
    SystemLabel label;
    size_t ambient_dim = 0;
    std::vector<Vec> roots;
    std::vector<Vec> simple;                       // Δ, index i is α_{i+1}
    std::vector<std::pair<int, int>> adjacency;    // Dynkin edges on Δ, 0-based
};

namespace detail {

inline Vec unit(size_t dim, size_t i, long long c = 1) {
    Vec v(dim, Rational(0));
    v[i] = Rational(c);
    return v;
}

inline void push_pm_pairs(std::vector<Vec>& roots, size_t dim, size_t lo, size_t hi,
                          bool diffs_only) {
    for (size_t i = lo; i < hi; ++i)
        for (size_t j = i + 1; j < hi; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    if (diffs_only && si == sj) continue;
                    Vec v(dim, Rational(0));
                    v[i] = Rational(si);
                    v[j] = Rational(sj);
                    roots.push_back(v);
                }
}

inline std::vector<Vec> build_a(int n, std::vector<Vec>& simple) {
    size_t dim = n + 1;
    std::vector<Vec> roots;
    push_pm_pairs(roots, dim, 0, dim, /*diffs_only=*/true);
    for (int i = 0; i < n; ++i) simple.push_back(sub(unit(dim, i), unit(dim, i + 1)));
    return roots;
}

inline std::vector<Vec> build_bcd(Family f, int n, std::vector<Vec>& simple) {
    size_t dim = n;
    std::vector<Vec> roots;
    push_pm_pairs(roots, dim, 0, dim, /*diffs_only=*/false);
    for (int i = 0; i + 1 < n; ++i) simple.push_back(sub(unit(dim, i), unit(dim, i + 1)));
    if (f == Family::B) {
        for (int i = 0; i < n; ++i)
            for (int s : {1, -1}) roots.push_back(unit(dim, i, s));
        simple.push_back(unit(dim, n - 1));
    } else if (f == Family::C) {
        for (int i = 0; i < n; ++i)
            for (int s : {2, -2}) roots.push_back(unit(dim, i, s));
        simple.push_back(unit(dim, n - 1, 2));
    } else {
        simple.push_back(add(unit(dim, n - 2), unit(dim, n - 1)));
    }
    return roots;
}

inline std::vector<Vec> build_g2(std::vector<Vec>& simple) {
    size_t dim = 3;
    std::vector<Vec> roots;
    push_pm_pairs(roots, dim, 0, dim, /*diffs_only=*/true);
    for (int i = 0; i < 3; ++i) {
        Vec v(dim, Rational(-1));
        v[i] = Rational(2);
        roots.push_back(v);
        roots.push_back(negate(v));
    }
    simple.push_back(sub(unit(dim, 0), unit(dim, 1)));
    Vec a2{Rational(-2), Rational(1), Rational(1)};
    simple.push_back(a2);
    return roots;
}

inline std::vector<Vec> build_f4(std::vector<Vec>& simple) {
    size_t dim = 4;
    std::vector<Vec> roots;
    push_pm_pairs(roots, dim, 0, dim, /*diffs_only=*/false);
    for (int i = 0; i < 4; ++i)
        for (int s : {1, -1}) roots.push_back(unit(dim, i, s));
    for (int mask = 0; mask < 16; ++mask) {
        Vec v(dim);
        for (int i = 0; i < 4; ++i) v[i] = Rational((mask >> i) & 1 ? -1 : 1, 2);
        roots.push_back(v);
    }
    simple.push_back(sub(unit(dim, 0), unit(dim, 1)));
    simple.push_back(sub(unit(dim, 1), unit(dim, 2)));
    simple.push_back(unit(dim, 2));
    simple.push_back(Vec(dim, Rational(-1, 2)));
    return roots;
}

// E-series Labesse coordinates: ambient basis e0..e7 at indices 0..7.
inline Vec half_signs(int neg_mask) {
    Vec v(8);
    for (int i = 0; i < 8; ++i) v[i] = Rational((neg_mask >> i) & 1 ? -1 : 1, 2);
    return v;
}

inline Vec labesse_alpha1() {
    // ½[e0+e1+e2+e3−e4−e5−e6−e7]
    return half_signs(0b11110000);
}

inline std::vector<Vec> build_e8_labesse(std::vector<Vec>& simple) {
    std::vector<Vec> roots;
    push_pm_pairs(roots, 8, 0, 8, /*diffs_only=*/false);
    for (int mask = 0; mask < 256; ++mask)
        if (__builtin_popcount(mask) % 2 == 0) roots.push_back(half_signs(mask));
    simple.push_back(labesse_alpha1());
    for (int i = 2; i <= 7; ++i) simple.push_back(sub(unit(8, i), unit(8, i - 1)));
    // tabulated recipe α_i = e_i − e_{i−1} runs off the basis at i = 8; the
    // unique completion satisfying the base axioms is α8 = −(e0+e7)
    simple.push_back(negate(add(unit(8, 0), unit(8, 7))));
    return roots;
}

inline std::vector<Vec> build_e7_labesse(std::vector<Vec>& simple) {
    std::vector<Vec> roots;
    push_pm_pairs(roots, 8, 0, 8, /*diffs_only=*/true);
    for (int mask = 0; mask < 256; ++mask)
        if (__builtin_popcount(mask) == 4) roots.push_back(half_signs(mask));
    simple.push_back(labesse_alpha1());
    for (int i = 1; i <= 6; ++i) simple.push_back(sub(unit(8, i + 1), unit(8, i)));
    return roots;
}

inline std::vector<Vec> build_e6_labesse(std::vector<Vec>& simple) {
    std::vector<Vec> e7_simple;
    std::vector<Vec> e7 = build_e7_labesse(e7_simple);
    Vec w = add(unit(8, 7), unit(8, 0));
    std::vector<Vec> roots;
    for (const auto& r : e7)
        if (inner(r, w).is_zero()) roots.push_back(r);
    simple.push_back(labesse_alpha1());
    for (int i = 1; i <= 5; ++i) simple.push_back(sub(unit(8, i + 1), unit(8, i)));
    return roots;
}

// Bourbaki conventions for E6/E7 inside R^8, basis e1..e8 at indices 0..7.
inline Vec bourbaki_alpha1() {
    Vec v(8, Rational(-1, 2));
    v[0] = Rational(1, 2);
    v[7] = Rational(1, 2);
    return v;
}

inline std::vector<Vec> build_e6_bourbaki(std::vector<Vec>& simple) {
    std::vector<Vec> roots;
    push_pm_pairs(roots, 8, 0, 5, /*diffs_only=*/false);
    for (int mask = 0; mask < 32; ++mask) {
        if (__builtin_popcount(mask) % 2 != 0) continue;
        Vec v(8, Rational(0));
        v[7] = Rational(1, 2);
        v[6] = Rational(-1, 2);
        v[5] = Rational(-1, 2);
        for (int i = 0; i < 5; ++i) v[i] = Rational((mask >> i) & 1 ? -1 : 1, 2);
        roots.push_back(v);
        roots.push_back(negate(v));
    }
    simple.push_back(bourbaki_alpha1());
    simple.push_back(add(unit(8, 0), unit(8, 1)));
    for (int i = 3; i <= 6; ++i) simple.push_back(sub(unit(8, i - 2), unit(8, i - 3)));
    return roots;
}

inline std::vector<Vec> build_e7_bourbaki(std::vector<Vec>& simple) {
    std::vector<Vec> roots;
    push_pm_pairs(roots, 8, 0, 6, /*diffs_only=*/false);
    roots.push_back(sub(unit(8, 7), unit(8, 6)));
    roots.push_back(sub(unit(8, 6), unit(8, 7)));
    for (int mask = 0; mask < 64; ++mask) {
        if (__builtin_popcount(mask) % 2 != 1) continue;
        Vec v(8, Rational(0));
        v[7] = Rational(1, 2);
        v[6] = Rational(-1, 2);
        for (int i = 0; i < 6; ++i) v[i] = Rational((mask >> i) & 1 ? -1 : 1, 2);
        roots.push_back(v);
        roots.push_back(negate(v));
    }
    simple.push_back(bourbaki_alpha1());
    simple.push_back(add(unit(8, 0), unit(8, 1)));
    for (int i = 3; i <= 7; ++i) simple.push_back(sub(unit(8, i - 2), unit(8, i - 3)));
    return roots;
}

}  // namespace detail

[[nodiscard]] inline RootSystemData build(const SystemLabel& label) {
    auto bad = [&] {
        return std::invalid_argument("invalid system label: " + label.str());
    };
    int n = label.rank;
    RootSystemData sys;
    sys.label = label;
    switch (label.family) {
        case Family::A:
            if (n < 1 || n > 8) throw bad();
            sys.roots = detail::build_a(n, sys.simple);
            break;
        case Family::B:
        case Family::C:
            if (n < 1 || n > 8) throw bad();
            sys.roots = detail::build_bcd(label.family, n, sys.simple);
            break;
        case Family::D:
            if (n < 2 || n > 8) throw bad();
            sys.roots = detail::build_bcd(label.family, n, sys.simple);
            break;
        case Family::G:
            if (n != 2) throw bad();
            sys.roots = detail::build_g2(sys.simple);
            break;
        case Family::F:
            if (n != 4) throw bad();
            sys.roots = detail::build_f4(sys.simple);
            break;
        case Family::E:
            if (n == 8) {
                if (label.convention == Convention::bourbaki) throw bad();
                sys.roots = detail::build_e8_labesse(sys.simple);
            } else if (n == 7) {
                sys.roots = label.convention == Convention::labesse
                                ? detail::build_e7_labesse(sys.simple)
                                : detail::build_e7_bourbaki(sys.simple);
            } else if (n == 6) {
                sys.roots = label.convention == Convention::labesse
                                ? detail::build_e6_labesse(sys.simple)
                                : detail::build_e6_bourbaki(sys.simple);
            } else {
                throw bad();
            }
            break;
    }
    sys.ambient_dim = sys.simple.front().size();
    for (size_t i = 0; i < sys.simple.size(); ++i)
        for (size_t j = i + 1; j < sys.simple.size(); ++j)
            if (!inner(sys.simple[i], sys.simple[j]).is_zero())
                sys.adjacency.emplace_back((int)i, (int)j);
    return sys;
}

/// Cartan integer 2⟨b,a⟩/⟨a,a⟩.
[[nodiscard]] inline Rational cartan(const Vec& b, const Vec& a) {
    return Rational(2) * inner(b, a) / norm_sq(a);
}

struct DynkinComponent {
    std::string type;          // e.g. "A", "B", "C", "D"
    int rank = 0;
    std::vector<int> indices;  // 0-based Δ indices, diagram order
};

/// Connected components of the sub-diagram of Δ spanned by theta (0-based
/// indices), ordered by smallest index, each typed by its Cartan matrix shape.
/// For classical families the components come out in diagram order, so gaps
/// between consecutive components along the A-chain are index differences.
[[nodiscard]] inline std::vector<DynkinComponent> dynkin_components(
    const std::vector<int>& theta, const RootSystemData& sys) {
    size_t n = sys.simple.size();
    std::vector<char> in_theta(n, 0);
    for (int i : theta) {
        if (i < 0 || (size_t)i >= n) throw std::out_of_range("theta index out of range");
        in_theta[i] = 1;
    }
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : sys.adjacency) {
        if (in_theta[a] && in_theta[b]) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    std::vector<char> seen(n, 0);
    std::vector<DynkinComponent> out;
    for (size_t s = 0; s < n; ++s) {
        if (!in_theta[s] || seen[s]) continue;
        DynkinComponent comp;
        std::vector<int> stack{(int)s};
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.indices.push_back(v);
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.indices.begin(), comp.indices.end());
        comp.rank = (int)comp.indices.size();
        bool has_short = false, has_long_edge_to_long = false;
        Rational maxlen(0);
        for (int i : comp.indices) maxlen = std::max(maxlen, norm_sq(sys.simple[i]));
        for (int i : comp.indices)
            if (norm_sq(sys.simple[i]) != maxlen) has_short = true;
        (void)has_long_edge_to_long;
        if (!has_short) {
            bool branched = false;
            for (int i : comp.indices) {
                int deg = 0;
                for (int j : comp.indices)
                    if (j != i && !inner(sys.simple[i], sys.simple[j]).is_zero()) ++deg;
                if (deg > 2) branched = true;
            }
            comp.type = branched ? "D" : "A";
            bool has_last = std::find(comp.indices.begin(), comp.indices.end(),
                                      (int)n - 1) != comp.indices.end();
            // tail components keep the family letter: {α_n} alone is B1 in B_n
            // (contains e_n) and C1 in C_n (contains 2e_n)
            if (has_last && sys.label.family == Family::B) comp.type = "B";
            if (has_last && sys.label.family == Family::C) comp.type = "C";
            // a D_n tail component holds both fork roots α_{n−1}, α_n even when
            // its diagram is an unbranched D2/D3
            if (has_last && sys.label.family == Family::D &&
                std::find(comp.indices.begin(), comp.indices.end(), (int)n - 2) !=
                    comp.indices.end())
                comp.type = "D";
        } else {
            // mixed lengths: B if the short end is a single short root chain
            // relative to this system's conventions, C if the long root is 2e_n
            bool has_len4 = false;
            for (int i : comp.indices)
                if (norm_sq(sys.simple[i]) == Rational(4)) has_len4 = true;
            comp.type = has_len4 ? "C" : "B";
        }
        out.push_back(std::move(comp));
    }
    return out;
}

}  // namespace rootproj
