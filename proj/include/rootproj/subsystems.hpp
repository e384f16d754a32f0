#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "projector.hpp"

namespace rootproj {

struct ClosureResult {
    bool ok = false;
    std::vector<Vec> roots;      // sorted, ±-symmetric when ok
    std::string reason;          // "missing vector" or "non-integral pairing"
    std::optional<Vec> missing;  // first vector generated outside the universe
};

namespace detail {

using Bits = std::vector<uint64_t>;

inline Bits make_bits(size_t n) { return Bits((n + 63) / 64, 0); }
inline void bit_set(Bits& b, size_t i) { b[i >> 6] |= uint64_t(1) << (i & 63); }
inline bool bit_get(const Bits& b, size_t i) {
    return (b[i >> 6] >> (i & 63)) & 1;
}

/// Reflection tables over a fixed ±-symmetric universe; closures become pure
/// index chasing.
struct UniverseTable {
    std::vector<Vec> vecs;             // sorted
    std::vector<std::vector<int>> refl;  // refl[a][b] = index of s_a(b); −1 outside
    std::vector<std::vector<char>> integral;
    std::vector<std::vector<char>> orth;  // ⟨a,b⟩ = 0
    std::vector<char> is_rep;             // canonical sign representative

    explicit UniverseTable(const std::vector<Vec>& universe) {
        std::set<Vec> all(universe.begin(), universe.end());
        for (const auto& v : universe) all.insert(negate(v));
        vecs.assign(all.begin(), all.end());
        size_t n = vecs.size();
        refl.assign(n, std::vector<int>(n, -1));
        integral.assign(n, std::vector<char>(n, 0));
        orth.assign(n, std::vector<char>(n, 0));
        is_rep.assign(n, 0);
        for (size_t a = 0; a < n; ++a) {
            is_rep[a] = canonical_sign(vecs[a]) == vecs[a];
            for (size_t b = 0; b < n; ++b) {
                integral[a][b] = cartan(vecs[b], vecs[a]).is_integer();
                orth[a][b] = inner(vecs[a], vecs[b]).is_zero();
                Vec r = reflect(vecs[b], vecs[a]);
                auto it = std::lower_bound(vecs.begin(), vecs.end(), r);
                if (it != vecs.end() && *it == r) refl[a][b] = int(it - vecs.begin());
            }
        }
    }

    [[nodiscard]] int index_of(const Vec& v) const {
        auto it = std::lower_bound(vecs.begin(), vecs.end(), v);
        if (it != vecs.end() && *it == v) return int(it - vecs.begin());
        return -1;
    }

    /// Closes seed indices under reflection. On success fills `out` (sorted
    /// index list); on failure reports the first offending vector in
    /// deterministic worklist order.
    [[nodiscard]] ClosureResult close(const std::vector<int>& seed) const {
        ClosureResult res;
        Bits in = make_bits(vecs.size());
        std::vector<int> work;
        auto push = [&](int i) {
            if (!bit_get(in, i)) {
                bit_set(in, i);
                work.push_back(i);
            }
        };
        for (int i : seed) {
            push(i);
            push(refl[i][i]);  // −v
        }
        std::vector<int> members;
        for (size_t head = 0; head < work.size(); ++head) {
            int b = work[head];
            members.push_back(b);
            for (size_t k = 0; k < members.size(); ++k) {
                int a = members[k];
                for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
                    if (!integral[x][y]) {
                        res.reason = "non-integral pairing";
                        res.missing = reflect(vecs[y], vecs[x]);
                        return res;
                    }
                    int j = refl[x][y];
                    if (j < 0) {
                        res.reason = "missing vector";
                        res.missing = reflect(vecs[y], vecs[x]);
                        return res;
                    }
                    push(j);
                }
            }
        }
        res.ok = true;
        std::sort(work.begin(), work.end());
        for (int i : work) res.roots.push_back(vecs[i]);
        return res;
    }
};

}  // namespace detail

/// Smallest subset of `universe` containing ±seed and closed under mutual
/// reflections; fails when a generated vector escapes the universe or a
/// Cartan pairing inside the closure is non-integral.
[[nodiscard]] inline ClosureResult reflection_closure(const std::vector<Vec>& seed,
                                                      const std::vector<Vec>& universe) {
    detail::UniverseTable table(universe);
    std::vector<int> idx;
    for (const auto& v : seed) {
        int i = table.index_of(v);
        if (i < 0) i = table.index_of(negate(v));
        if (i < 0) throw std::invalid_argument("seed vector outside universe");
        idx.push_back(i);
    }
    return table.close(idx);
}

struct TypeComponent {
    std::string type;  // "A","B","C","D","E","F","G","BC"
    int rank = 0;
    std::vector<Vec> simple;
    std::vector<Vec> roots;  // every input root lying in this component's span
};

struct Recognition {
    std::vector<TypeComponent> components;
    bool reduced = true;
    std::vector<Vec> simple_system;  // concatenation over components
    size_t rank = 0;
};

namespace detail {

inline std::string classify_component(const std::vector<Vec>& simple) {
    size_t n = simple.size();
    if (n == 1) return "A";
    std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
    std::vector<int> deg(n, 0);
    int doubles = 0, triples = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Rational m = cartan(simple[i], simple[j]) * cartan(simple[j], simple[i]);
            if (!m.is_integer()) throw std::logic_error("non-crystallographic simple pair");
            int b = (int)m.num();
            mult[i][j] = mult[j][i] = b;
            if (b > 0) {
                ++deg[i];
                ++deg[j];
                if (b == 2) ++doubles;
                if (b == 3) ++triples;
            }
        }
    int branch = -1;
    for (size_t i = 0; i < n; ++i) {
        if (deg[i] > 3) throw std::logic_error("unmatchable diagram: degree > 3");
        if (deg[i] == 3) {
            if (branch >= 0) throw std::logic_error("unmatchable diagram: two branch nodes");
            branch = (int)i;
        }
    }
    if (triples) {
        if (n == 2) return "G";
        throw std::logic_error("unmatchable diagram: triple bond in rank > 2");
    }
    if (doubles) {
        if (branch >= 0 || doubles > 1)
            throw std::logic_error("unmatchable diagram: bad double bond layout");
        if (n == 2) return "B";
        // interior double bond is F4; otherwise count short simple roots
        size_t di = 0, dj = 0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (mult[i][j] == 2) di = i, dj = j;
        if (deg[di] == 2 && deg[dj] == 2) {
            if (n == 4) return "F";
            throw std::logic_error("unmatchable diagram: interior double bond");
        }
        Rational maxlen(0);
        for (const auto& s : simple) maxlen = std::max(maxlen, norm_sq(s));
        size_t shorts = 0;
        for (const auto& s : simple)
            if (norm_sq(s) != maxlen) ++shorts;
        return shorts == 1 ? "B" : "C";
    }
    if (branch < 0) return "A";
    // simple-laced with one branch node: legs decide D versus E
    std::vector<int> legs;
    std::vector<char> seen(n, 0);
    seen[branch] = 1;
    for (size_t s = 0; s < n; ++s) {
        if (!mult[branch][s]) continue;
        int len = 0, cur = (int)s, prev = branch;
        while (true) {
            ++len;
            seen[cur] = 1;
            int next = -1;
            for (size_t t = 0; t < n; ++t)
                if ((int)t != prev && mult[cur][t]) next = (int)t;
            if (next < 0) break;
            prev = cur;
            cur = next;
        }
        legs.push_back(len);
    }
    std::sort(legs.begin(), legs.end());
    if (legs.size() != 3) throw std::logic_error("unmatchable diagram");
    if (legs[0] == 1 && legs[1] == 1) return "D";
    if (legs[0] == 1 && legs[1] == 2 && legs[2] <= 4) return "E";
    throw std::logic_error("unmatchable diagram: bad leg profile");
}

}  // namespace detail

/// Splits a verified root system into irreducible components and names each
/// one, upgrading to BC where doubled roots are present.
[[nodiscard]] inline Recognition recognize_type(const std::vector<Vec>& roots) {
    std::set<Vec> all(roots.begin(), roots.end());
    Recognition rec;
    std::vector<Vec> core;  // indivisible roots
    for (const auto& r : all) {
        if (all.count(scale(Rational(1, 2), r))) {
            rec.reduced = false;
            continue;
        }
        core.push_back(r);
    }
    std::vector<Vec> positive;
    for (const auto& r : core)
        if (canonical_sign(r) == r) positive.push_back(r);
    std::set<Vec> pos(positive.begin(), positive.end());
    std::vector<Vec> simple;
    for (const auto& p : positive) {
        bool is_sum = false;
        for (const auto& q : positive)
            if (q != p && pos.count(sub(p, q))) is_sum = true;
        if (!is_sum) simple.push_back(p);
    }
    // connected components of the simple system
    size_t n = simple.size();
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<size_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            for (size_t w = 0; w < n; ++w)
                if (comp[w] < 0 && !inner(simple[v], simple[w]).is_zero()) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }
    for (int c = 0; c < ncomp; ++c) {
        TypeComponent tc;
        for (size_t s = 0; s < n; ++s)
            if (comp[s] == c) tc.simple.push_back(simple[s]);
        tc.rank = (int)tc.simple.size();
        tc.type = detail::classify_component(tc.simple);
        for (const auto& r : all) {
            bool in_span = true;
            try {
                (void)coordinates(r, tc.simple);
            } catch (const std::invalid_argument&) {
                in_span = false;
            }
            if (in_span) tc.roots.push_back(r);
        }
        // BC: all shortest roots of a B (or A1) component carry their doubles
        if (tc.type == "B" || (tc.type == "A" && tc.rank == 1)) {
            Rational minlen = norm_sq(tc.roots.front());
            for (const auto& r : tc.roots) minlen = std::min(minlen, norm_sq(r));
            bool all_doubled = true, any = false;
            for (const auto& r : tc.roots)
                if (norm_sq(r) == minlen) {
                    any = true;
                    if (!all.count(scale(Rational(2), r))) all_doubled = false;
                }
            if (any && all_doubled) tc.type = "BC";
        }
        rec.components.push_back(std::move(tc));
    }
    for (const auto& tc : rec.components) {
        rec.rank += tc.rank;
        for (const auto& s : tc.simple) rec.simple_system.push_back(s);
    }
    return rec;
}

struct SubsystemReport {
    std::vector<Vec> roots;  // sorted
    size_t rank = 0;
    std::vector<std::pair<std::string, int>> components;
    bool reduced = true;
    std::vector<Vec> simple_system;
    bool achieves_d = false;
};

/// All irreducible root subsystems of Σ_Θ of the maximal achievable rank
/// (≤ rank_cap), deduplicated by root set. Search grows reflection-closed
/// sets one independent generator at a time, visiting each closed set once,
/// so the result does not depend on enumeration order. Every irreducible
/// subsystem has a basis orderable so that each prefix is connected, so
/// requiring new generators to pair non-trivially with the current closure
/// loses nothing.
namespace detail {

struct SearchNode {
    std::vector<int> members;  // closure, sorted indices
    std::vector<Vec> ortho;    // orthogonalized span basis
};

/// Residual of vecs[rep] against the orthogonalized basis; empty when dependent.
[[nodiscard]] inline std::optional<Vec> span_residual(const UniverseTable& table,
                                                      const std::vector<Vec>& ortho,
                                                      int rep) {
    Vec v = table.vecs[rep];
    for (const auto& o : ortho) {
        Rational c = inner(v, o) / norm_sq(o);
        if (!c.is_zero()) v = sub(v, scale(c, o));
    }
    if (is_zero(v)) return std::nullopt;
    return v;
}

/// Enumerates every reflection-closed irreducible subsystem whose smallest
/// canonical representative is `first`, grouped by rank. Two prunings keep
/// this near-linear in the number of distinct subsystems: branches are
/// disjoint by smallest representative, and after each closure the generator
/// must be the smallest representative newly reachable from the previous
/// closure (every irreducible subsystem admits exactly such a growth chain).
inline void closed_subsystems_from(const UniverseTable& table,
                                   const std::vector<int>& reps, int first,
                                   size_t rank_cap,
                                   std::map<size_t, std::set<std::vector<int>>>& by_rank) {
    auto base_closed = table.close({first});
    if (!base_closed.ok) return;
    SearchNode root;
    for (const auto& r : base_closed.roots) root.members.push_back(table.index_of(r));
    std::sort(root.members.begin(), root.members.end());
    root.ortho.push_back(table.vecs[first]);
    by_rank[1].insert(root.members);
    std::vector<SearchNode> frontier{std::move(root)};
    std::set<std::vector<int>> seen;
    size_t rank = 1;
    while (!frontier.empty() && rank < rank_cap) {
        std::vector<SearchNode> next;
        for (const auto& base : frontier)
            for (int rep : reps) {
                if (rep <= first) continue;
                bool connected = false, integral = true;
                for (int m : base.members) {
                    if (!table.integral[m][rep] || !table.integral[rep][m]) {
                        integral = false;
                        break;
                    }
                    if (!table.orth[m][rep]) connected = true;
                }
                if (!integral || !connected) continue;
                auto residual = span_residual(table, base.ortho, rep);
                if (!residual) continue;
                std::vector<int> seed = base.members;
                seed.push_back(rep);
                auto closed = table.close(seed);
                if (!closed.ok) continue;
                SearchNode node;
                for (const auto& r : closed.roots)
                    node.members.push_back(table.index_of(r));
                std::sort(node.members.begin(), node.members.end());
                // branch discipline: the branch owns only subsystems whose
                // smallest representative is `first`
                bool ours = true;
                for (int m : node.members)
                    if (table.is_rep[m] && m < first) {
                        ours = false;
                        break;
                    }
                if (!ours) continue;
                // canonical chain: rep must be the smallest representative in
                // the new closure that extends the previous one
                bool canonical = true;
                for (int w : node.members) {
                    if (w >= rep) break;
                    if (!table.is_rep[w]) continue;
                    bool conn = false;
                    for (int m : base.members)
                        if (!table.orth[m][w]) {
                            conn = true;
                            break;
                        }
                    if (!conn) continue;
                    if (span_residual(table, base.ortho, w)) {
                        canonical = false;
                        break;
                    }
                }
                if (!canonical) continue;
                if (!seen.insert(node.members).second) continue;
                node.ortho = base.ortho;
                node.ortho.push_back(std::move(*residual));
                by_rank[rank + 1].insert(node.members);
                next.push_back(std::move(node));
            }
        frontier = std::move(next);
        ++rank;
    }
}

}  // namespace detail

[[nodiscard]] inline std::vector<SubsystemReport> max_rank_subsystems(
    const ProjectedSet& ps, size_t rank_cap, unsigned workers = 1) {
    if (rank_cap > ps.d) throw std::invalid_argument("rank_cap exceeds d");
    if (workers == 0) workers = 1;
    detail::UniverseTable table(ps.sigma_theta);
    size_t n = table.vecs.size();
    std::vector<int> reps;
    for (size_t i = 0; i < n; ++i)
        if (table.is_rep[i]) reps.push_back((int)i);

    std::vector<std::map<size_t, std::set<std::vector<int>>>> partial(
        std::max<size_t>(workers, 1));
    auto run = [&](unsigned w) {
        for (size_t i = w; i < reps.size(); i += workers)
            detail::closed_subsystems_from(table, reps, reps[i], rank_cap, partial[w]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& t : pool) t.join();
    }
    std::map<size_t, std::set<std::vector<int>>> by_rank;
    for (auto& p : partial)
        for (auto& [r, sets] : p) by_rank[r].insert(sets.begin(), sets.end());

    std::vector<SubsystemReport> out;
    if (by_rank.empty()) return out;
    size_t max_rank = by_rank.rbegin()->first;
    for (const auto& members : by_rank[max_rank]) {
        SubsystemReport rep;
        for (int i : members) rep.roots.push_back(table.vecs[i]);
        // the closure search only sees reduced systems; re-admit doubled short
        // roots from Σ_Θ, component by component, so BC surfaces
        auto recog = recognize_type(rep.roots);
        std::vector<Vec> doubles;
        for (const auto& tc : recog.components) {
            if (tc.type != "B" && !(tc.type == "A" && tc.rank == 1)) continue;
            Rational minlen = norm_sq(tc.roots.front());
            for (const auto& r : tc.roots) minlen = std::min(minlen, norm_sq(r));
            std::vector<Vec> comp_doubles;
            bool all_doubled = true;
            for (const auto& r : tc.roots)
                if (norm_sq(r) == minlen) {
                    Vec d2 = scale(Rational(2), r);
                    if (table.index_of(d2) >= 0)
                        comp_doubles.push_back(std::move(d2));
                    else
                        all_doubled = false;
                }
            if (all_doubled)
                doubles.insert(doubles.end(), comp_doubles.begin(), comp_doubles.end());
        }
        if (!doubles.empty()) {
            rep.roots.insert(rep.roots.end(), doubles.begin(), doubles.end());
            std::sort(rep.roots.begin(), rep.roots.end());
            rep.roots.erase(std::unique(rep.roots.begin(), rep.roots.end()),
                            rep.roots.end());
            recog = recognize_type(rep.roots);
        }
        rep.rank = recog.rank;
        rep.reduced = recog.reduced;
        rep.simple_system = recog.simple_system;
        for (const auto& tc : recog.components) rep.components.emplace_back(tc.type, tc.rank);
        rep.achieves_d = (recog.rank == ps.d);
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace rootproj
