#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "subsystems.hpp"

namespace rootproj {

struct PatternVerdict {
    bool applies = false;
    std::optional<std::pair<std::string, int>> predicted;
    std::string rule = "no_pattern";
};

struct Discrepancy {
    SystemLabel system;
    std::vector<int> theta;  // 0-based simple-root indices
    std::string expected;
    std::string found;
    std::string source;
};

[[nodiscard]] inline std::string theta_str(const std::vector<int>& theta) {
    std::string out = "{";
    for (size_t i = 0; i < theta.size(); ++i) {
        if (i) out += ",";
        out += "a" + std::to_string(theta[i] + 1);
    }
    return out + "}";
}

namespace detail {

/// Θ membership over 1-based simple-root indices.
[[nodiscard]] inline std::vector<char> theta_mask(int n, const std::vector<int>& theta) {
    std::vector<char> in(n + 1, 0);
    for (int i : theta) {
        if (i < 0 || i >= n) throw std::out_of_range("theta index out of range");
        in[i + 1] = 1;
    }
    return in;
}

/// Membership matches the tiling by blocks of size m+1 over positions 1..L:
/// inside a block the simple roots lie in Θ, the single root between two
/// consecutive blocks does not.
[[nodiscard]] inline bool tiles(const std::vector<char>& in, int L, int m) {
    for (int i = 1; i <= L; ++i)
        if (bool(in[i]) != (i % (m + 1) != 0)) return false;
    return true;
}

/// Length of the run of Θ members ending at position n.
[[nodiscard]] inline int suffix_run(const std::vector<char>& in, int n) {
    int k = 0;
    while (k < n && in[n - k]) ++k;
    return k;
}

}  // namespace detail

/// Matches Θ against the block patterns that guarantee a rank-d subsystem for
/// the classical families; applies=false when no pattern fires (which carries
/// no claim either way except for the D case with both fork roots outside Θ,
/// where nothing of maximal rank can occur).
[[nodiscard]] inline PatternVerdict predict_classical(const RootSystemData& sys,
                                                      const std::vector<int>& theta) {
    Family fam = sys.label.family;
    if (fam != Family::A && fam != Family::B && fam != Family::C && fam != Family::D)
        throw std::invalid_argument("predict_classical expects a classical family");
    int n = sys.label.rank;
    if (theta.empty() || (int)theta.size() >= n)
        throw std::invalid_argument("theta must be proper and nonempty");
    auto in = detail::theta_mask(n, theta);
    PatternVerdict v;
    auto fire = [&](std::string type, int rank, std::string rule) {
        // rank-1 B and C systems are plain A1 pairs; C2 ≅ B2 and the
        // classifier names that shape B
        if (rank == 1 && (type == "B" || type == "C")) type = "A";
        if (rank == 2 && type == "C") type = "B";
        v.applies = true;
        v.predicted = {std::move(type), rank};
        v.rule = std::move(rule);
        return v;
    };

    if (fam == Family::A) {
        for (int m = 1; m <= n; ++m) {
            if ((n + 1) % (m + 1) != 0) continue;
            int d = (n + 1) / (m + 1) - 1;
            if (d >= 1 && detail::tiles(in, n, m)) return fire("A", d, "lemma_A");
        }
        return v;
    }

    if (fam == Family::B || fam == Family::C) {
        int k = detail::suffix_run(in, n);
        int L = n - k;
        for (int m = 0; m < std::max(L, 1); ++m) {
            if (L % (m + 1) != 0) continue;
            int d = L / (m + 1);
            if (d < 1 || !detail::tiles(in, L, m)) continue;
            if (m == 0 && k == 0) continue;
            if (fam == Family::B) return fire(m >= 1 ? "BC" : "B", d, "lemma_B");
            if (k >= 1) return fire("BC", d, "lemma_C");
            if (m >= 1) return fire("C", d, "lemma_C");
        }
        // C only: two A blocks of sizes m+1 and p+1 with p = 3m+2 (either
        // order) yield an A2 at d = 2
        if (fam == Family::C && n - k >= 2) {
            for (int m = 0; m + 2 + k <= n; ++m) {
                int p = n - k - 2 - m;
                if (p < 0 || (p != 3 * m + 2 && m != 3 * p + 2)) continue;
                bool match = true;
                for (int i = 1; i <= n - k; ++i) {
                    bool expect = (i <= m) || (i >= m + 2 && i <= m + p + 1);
                    if (bool(in[i]) != expect) {
                        match = false;
                        break;
                    }
                }
                if (match) return fire("A", 2, "lemma_C_d2_A2");
            }
        }
        return v;
    }

    // family D; fork roots are α_{n−1} = e_{n−1}−e_n and α_n = e_{n−1}+e_n
    bool last = in[n], prev = in[n - 1];
    if (last && prev) {
        int k = detail::suffix_run(in, n);
        int L = n - k;
        for (int m = 0; m < std::max(L, 1); ++m) {
            if (L % (m + 1) != 0) continue;
            int d = L / (m + 1);
            if (d < 1 || !detail::tiles(in, L, m)) continue;
            return fire(m >= 1 ? "BC" : "B", d, "lemma_D_case1");
        }
        return v;
    }
    if (last || prev) {
        for (int m = 1; m < n; ++m) {
            if (n % (m + 1) != 0) continue;
            int d = n / (m + 1);
            if (d < 1) continue;
            bool match = true;
            for (int i = 1; i <= n - 2; ++i)
                if (bool(in[i]) != (i % (m + 1) != 0)) {
                    match = false;
                    break;
                }
            // position n−1 carries whichever fork root Θ uses; position n is
            // its partner and must be outside
            if (match && ((n - 1) % (m + 1) != 0) && (last != prev))
                return fire("C", d, "lemma_D_case2");
        }
    }
    return v;
}

namespace detail {

[[nodiscard]] inline std::string found_str(const std::vector<SubsystemReport>& reports) {
    std::set<std::string> types;
    for (const auto& rep : reports)
        for (const auto& [t, r] : rep.components)
            if (r >= 2 || rep.components.size() > 1) types.insert(t + std::to_string(r));
    if (types.empty()) return "None";
    std::string out;
    for (const auto& t : types) {
        if (!out.empty()) out += " or ";
        out += t;
    }
    return out;
}

[[nodiscard]] inline bool classical_component(const std::string& t) {
    return t == "A" || t == "B" || t == "C" || t == "D" || t == "BC";
}

/// Runs fn(i) for i in [0, count) across `workers` threads, preserving
/// deterministic result order via the index.
template <class Fn>
inline void parallel_for(size_t count, unsigned workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (size_t i = w; i < count; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

[[nodiscard]] inline std::vector<std::vector<int>> proper_subsets(int n) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> theta;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) theta.push_back(i);
        out.push_back(std::move(theta));
    }
    return out;
}

}  // namespace detail

/// Confronts the classical-pattern predictions with brute-force search over
/// every proper nonempty Θ for ranks 2..max_rank_n. Returned discrepancies
/// cover both directions: a fired pattern whose predicted type is absent at
/// rank d, and any non-classical component found anywhere.
[[nodiscard]] inline std::vector<Discrepancy> verify_classical_sweep(Family family,
                                                                     int max_rank_n,
                                                                     unsigned workers = 1) {
    if (family != Family::A && family != Family::B && family != Family::C &&
        family != Family::D)
        throw std::invalid_argument("verify_classical_sweep expects a classical family");
    if (max_rank_n < 1 || max_rank_n > 8)
        throw std::invalid_argument("max_rank_n out of budget");
    struct Job {
        int n;
        std::vector<int> theta;
    };
    std::vector<Job> jobs;
    int low = family == Family::D ? 2 : 2;
    for (int n = low; n <= max_rank_n; ++n)
        for (auto& theta : detail::proper_subsets(n)) jobs.push_back({n, std::move(theta)});
    std::vector<std::vector<Discrepancy>> slots(jobs.size());
    std::map<int, RootSystemData> systems;
    for (int n = low; n <= max_rank_n; ++n) systems.emplace(n, build({family, n}));

    detail::parallel_for(jobs.size(), workers, [&](size_t j) {
        const auto& [n, theta] = jobs[j];
        const auto& sys = systems.at(n);
        SystemLabel label{family, n};
        auto ps = project_system(sys, theta);
        auto reports = max_rank_subsystems(ps, ps.d);
        for (const auto& rep : reports)
            for (const auto& [t, r] : rep.components)
                if (!detail::classical_component(t))
                    slots[j].push_back({label, theta, "classical component",
                                        t + std::to_string(r), "theorem1"});
        auto verdict = predict_classical(sys, theta);
        if (!verdict.applies) return;
        const auto& [pt, pr] = *verdict.predicted;
        bool hit = false;
        for (const auto& rep : reports)
            if (rep.achieves_d && rep.components.size() == 1 &&
                rep.components[0].first == pt && rep.components[0].second == pr)
                hit = true;
        if (!hit) {
            std::string src = family == Family::A   ? "theorem1"
                              : family == Family::B ? "lemma_B"
                              : family == Family::C ? "lemma_C"
                                                    : "lemma_D";
            slots[j].push_back({label, theta, pt + std::to_string(pr) + " at rank d",
                                detail::found_str(reports), src});
        }
    });
    std::vector<Discrepancy> out;
    for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    return out;
}

namespace detail {

struct TableRow {
    std::vector<int> theta;  // 0-based
    std::string expected;    // verbatim final-column text, normalized spacing
};

/// Final columns of the four case tables, Θ in the source's 1-based
/// numbering shifted down by one; rows quantified over several Θ are
/// expanded, conflicting duplicate rows are kept as tabulated.
[[nodiscard]] inline const std::vector<TableRow>& table_rows(Family fam, int rank) {
    static const std::vector<TableRow> f4{
        {{0}, "B2"},       {{1}, "B2"},    {{2}, "B3"},    {{3}, "A2 or B2"},
        {{2, 3}, "None"},  {{0, 1}, "None"}, {{0, 3}, "None"}, {{1, 2}, "B2"},
        {{1, 3}, "None"},  {{0, 2}, "None"}};
    static const std::vector<TableRow> e6{
        {{0}, "A3 and A2"},
        {{1}, "A5"},
        {{5}, "A5"},
        {{5}, "D3"},
        {{2}, "A5"},
        {{4}, "A5"},
        {{3}, "A2"},
        {{0, 3}, "A2"},
        {{0, 4}, "A3"},
        {{0, 2}, "A3"},
        {{0, 5}, "A3"},
        {{0, 1}, "A3"},
        {{1, 5}, "A3"},
        {{2, 4}, "B2"},
        {{1, 2, 4, 5}, "A2"},
        {{1, 4}, "None"},
        {{2, 5}, "None"},
        {{0, 2, 3, 4}, "None"}};
    static const std::vector<TableRow> e7{
        {{0}, "A6"},
        {{1}, "A5"},
        {{2}, "A4"},
        {{3}, "A2"},
        {{4}, "A3"},
        {{5}, "A5"},
        {{6}, "A4 or D4"},
        {{1, 5, 6}, "A2"},
        {{4, 5, 6}, "A2"},
        {{1, 2, 4, 5, 6}, "None"},
        {{2, 4}, "B4"},
        {{0, 3}, "A3"},
        {{0, 4}, "A3"},
        {{0, 1}, "A4"},
        {{0, 2}, "A3"},
        {{0, 6}, "D4"},
        {{1, 6}, "A3"},
        {{0, 2, 3, 4}, "None"},
        {{1, 2, 3}, "A2"},
        {{0, 1, 2, 3}, "A2"}};
    static const std::vector<TableRow> e8{
        {{0}, "A7"},
        {{1}, "A7"},
        {{2}, "A6"},
        {{3}, "A5"},
        {{4}, "A6"},
        {{5}, "A3"},
        {{6}, "A6"},
        {{7}, "E7 and therefore D7, A7"},
        {{0, 3}, "A4"},
        {{0, 1, 3}, "A4"},
        {{0, 1, 2, 3}, "A4"},
        {{0, 4}, "A5"},
        {{0, 1, 4}, "A4"},
        {{0, 2, 4}, "A3"},
        {{0, 2, 3, 4}, "A3"},
        {{1, 4, 5}, "A3"},
        {{1, 4, 6}, "A3"},
        {{1, 4, 7}, "A3"},
        {{1, 4, 5, 6}, "A3"},
        {{1, 4, 5, 7}, "A3"},
        {{1, 4, 6, 7}, "A3"},
        {{1, 4, 5, 6, 7}, "A3"},
        {{0, 1}, "A5"},
        {{0, 1, 2}, "A5"},
        {{0, 2}, "A5"},
        {{4, 5, 6, 7}, "A3"},
        {{0, 2, 4, 5, 6, 7}, "None"},
        {{1, 2, 4}, "A3"},
        {{2, 4}, "B5"},
        {{2, 3, 4}, "D4"},
        {{1, 4}, "D4"},
        {{0, 5, 6, 7}, "A3"},
        {{2, 3}, "A5"},
        {{1, 2, 3}, "A4"},
        {{0, 2, 3}, "A4"},
        {{2, 3, 4}, "A4"},
        {{1, 4, 5}, "A4"},
        {{1, 3}, "A4"},
        {{0, 1, 3}, "A4"},
        {{0, 1, 2, 3}, "A4"},
        {{0, 7}, "A4"},
        {{0, 6}, "A5"},
        {{0, 5}, "A4"},
        {{1, 2, 3, 4}, "A3"},
        {{5, 6, 7}, "D5"},
        {{0, 2, 4, 7}, "B2"}};
    static const std::vector<TableRow> none{};
    if (fam == Family::F) return f4;
    if (fam == Family::E && rank == 6) return e6;
    if (fam == Family::E && rank == 7) return e7;
    if (fam == Family::E && rank == 8) return e8;
    return none;
}

[[nodiscard]] inline std::string table_source(Family fam, int rank) {
    if (fam == Family::F) return "table_F4";
    return "table_E" + std::to_string(rank);
}

/// Type tokens of a table cell; D3 is normalized to A3 (same system), "None"
/// yields the empty set.
[[nodiscard]] inline std::set<std::string> parse_types(const std::string& text) {
    std::set<std::string> out;
    for (size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] < 'A' || text[i] > 'Z') continue;
        size_t j = i + 1;
        std::string fam(1, text[i]);
        if (j < text.size() && text[i] == 'B' && text[j] == 'C') fam = "BC", ++j;
        size_t k = j;
        while (k < text.size() && isdigit((unsigned char)text[k])) ++k;
        if (k == j) continue;
        std::string tok = fam + text.substr(j, k - j);
        if (tok == "D3") tok = "A3";
        out.insert(tok);
        i = k - 1;
    }
    return out;
}

}  // namespace detail

/// Sweeps every proper nonempty Θ of an exceptional system. Hard claims
/// (sources lemma_no_G2 / lemma_no_F4 / theorem1): no G2 or F4 component and
/// no exceptional-type component outside E8 Θ={α8} → E7. Soft claims (source
/// table_*): for each tabulated Θ, the tabulated highest-rank types occur among
/// the maximal-rank subsystems found.
[[nodiscard]] inline std::vector<Discrepancy> verify_exceptional(const SystemLabel& label,
                                                                 unsigned workers = 1) {
    if (!(label.family == Family::F ||
          (label.family == Family::E && label.convention == Convention::labesse)))
        throw std::invalid_argument("verify_exceptional expects F4, E6, E7 or E8");
    auto sys = build(label);
    int n = label.rank;
    auto thetas = detail::proper_subsets(n);
    std::vector<std::vector<Discrepancy>> slots(thetas.size());
    std::vector<std::string> found_text(thetas.size());
    std::vector<std::set<std::string>> found_types(thetas.size());

    detail::parallel_for(thetas.size(), workers, [&](size_t j) {
        const auto& theta = thetas[j];
        auto ps = project_system(sys, theta);
        auto reports = max_rank_subsystems(ps, ps.d);
        size_t max_rank = 0;
        for (const auto& rep : reports) max_rank = std::max(max_rank, rep.rank);
        std::set<std::pair<std::string, std::string>> hits;
        for (const auto& rep : reports)
            for (const auto& [t, r] : rep.components) {
                if (max_rank >= 2) found_types[j].insert(t + std::to_string(r));
                if (t == "G")
                    hits.insert({"lemma_no_G2", "G" + std::to_string(r)});
                else if (t == "F")
                    hits.insert({"lemma_no_F4", "F" + std::to_string(r)});
                else if (t == "E" &&
                         !(label.family == Family::E && label.rank == 8 &&
                           theta == std::vector<int>{7} && r == 7))
                    hits.insert({"theorem1", "E" + std::to_string(r)});
            }
        for (const auto& [src, found] : hits) {
            std::string expect = src == "lemma_no_G2"   ? "no G2 component"
                                 : src == "lemma_no_F4" ? "no F4 component"
                                 : "classical component outside E8 theta={a8}";
            slots[j].push_back({label, theta, expect, found, src});
        }
        found_text[j] = detail::found_str(reports);
    });

    std::vector<Discrepancy> out;
    for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    std::map<std::vector<int>, size_t> index;
    for (size_t j = 0; j < thetas.size(); ++j) index[thetas[j]] = j;
    for (const auto& row : detail::table_rows(label.family, label.rank)) {
        size_t j = index.at(row.theta);
        auto expected = detail::parse_types(row.expected);
        bool match;
        if (expected.empty()) {
            match = found_types[j].empty();
        } else {
            match = true;
            for (const auto& t : expected)
                if (!found_types[j].count(t)) match = false;
        }
        if (!match)
            out.push_back({label, row.theta, row.expected, found_text[j],
                           detail::table_source(label.family, label.rank)});
    }
    return out;
}

}  // namespace rootproj
