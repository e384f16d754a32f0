#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rootproj/angle.hpp"
#include "rootproj/subsystems.hpp"

using namespace rootproj;

namespace {

size_t component_count(const std::string& type, int r) {
    if (type == "A") return (size_t)r * (r + 1);
    if (type == "B" || type == "C") return 2 * (size_t)r * r;
    if (type == "BC") return 2 * (size_t)r * r + 2 * (size_t)r;
    if (type == "D") return 2 * (size_t)r * (r - 1);
    if (type == "E") return r == 6 ? 72 : (r == 7 ? 126 : 240);
    if (type == "F") return 48;
    if (type == "G") return 12;
    return 0;
}

void audit(const SubsystemReport& rep) {
    std::set<Vec> rs(rep.roots.begin(), rep.roots.end());
    REQUIRE(rs.size() == rep.roots.size());
    size_t bad = 0;
    for (const auto& r : rs) {
        if (!rs.count(negate(r))) ++bad;
        for (const auto& s : rs) {
            if (!cartan(r, s).is_integer()) ++bad;
            if (!rs.count(reflect(s, r))) ++bad;
        }
    }
    CHECK(bad == 0);
    CHECK(gram_rank(rep.roots) == rep.rank);
    size_t total = 0, rank_total = 0;
    for (const auto& [t, r] : rep.components) {
        total += component_count(t, r);
        rank_total += r;
    }
    CHECK(total == rep.roots.size());
    CHECK(rank_total == rep.rank);
}

}  // namespace

TEST_CASE("reflection_closure basics") {
    SECTION("single vector closes to its pair") {
        Vec v{Rational(1), Rational(0)};
        auto res = reflection_closure({v}, {v, negate(v)});
        REQUIRE(res.ok);
        CHECK(res.roots == std::vector<Vec>{negate(v), v});
    }
    SECTION("A2 closes from its basis") {
        auto sys = build({Family::A, 2});
        auto res = reflection_closure({sys.simple[0], sys.simple[1]}, sys.roots);
        REQUIRE(res.ok);
        CHECK(res.roots.size() == 6);
    }
    SECTION("seed outside universe throws") {
        Vec v{Rational(1), Rational(0)};
        Vec w{Rational(0), Rational(1)};
        CHECK_THROWS_AS(reflection_closure({w}, {v, negate(v)}), std::invalid_argument);
    }
}

TEST_CASE("F4 theta={a3}: B3 closure from the reference seed") {
    auto sys = build({Family::F, 4});
    auto ps = project_system(sys, {2});
    Vec e1{Rational(1), Rational(0), Rational(0), Rational(0)};
    Vec e2{Rational(0), Rational(1), Rational(0), Rational(0)};
    Vec e4{Rational(0), Rational(0), Rational(0), Rational(1)};
    auto res = reflection_closure({sub(e1, e2), sub(e2, e4), e4}, ps.sigma_theta);
    REQUIRE(res.ok);
    CHECK(res.roots.size() == 18);
    std::set<Vec> expect;
    for (const Vec& u : {e1, e2, e4}) {
        expect.insert(u);
        expect.insert(negate(u));
    }
    for (const Vec& u : {e1, e2, e4})
        for (const Vec& w : {e1, e2, e4})
            if (u != w) {
                expect.insert(add(u, w));
                expect.insert(sub(u, w));
                expect.insert(negate(add(u, w)));
            }
    CHECK(std::set<Vec>(res.roots.begin(), res.roots.end()) == expect);
    auto recog = recognize_type(res.roots);
    REQUIRE(recog.components.size() == 1);
    CHECK(recog.components[0].type == "B");
    CHECK(recog.components[0].rank == 3);
}

TEST_CASE("E6 with two A2 blocks removed projects onto a full G2") {
    auto sys = build({Family::E, 6});
    auto ps = project_system(sys, {1, 2, 4, 5});
    Vec a1 = ps.delta_theta[0], a4 = ps.delta_theta[1];
    auto d = angle_data(a1, a4);
    CHECK(*d.c == Rational(4, 3));
    CHECK(d.r == Rational(3));
    // ᾱ1+ᾱ4 is hit by nine roots with mixed signs inside the averaged
    // blocks, e.g. ½[e0+e1+e2−e3+e4−e5−e6−e7]; sign variation confined to
    // whole blocks would miss them and only reach ᾱ1+3ᾱ4
    Vec mid = add(a1, a4);
    REQUIRE(ps.fibers.count(mid));
    CHECK(ps.fibers.at(mid).size() == 9);
    Vec witness{Rational(1, 2),  Rational(1, 2),  Rational(1, 2),  Rational(-1, 2),
                Rational(1, 2),  Rational(-1, 2), Rational(-1, 2), Rational(-1, 2)};
    const auto& fib = ps.fibers.at(mid);
    CHECK(std::find(fib.begin(), fib.end(), witness) != fib.end());
    Vec deep = add(a1, scale(Rational(3), a4));
    CHECK(std::binary_search(ps.sigma_theta.begin(), ps.sigma_theta.end(), deep));
    auto res = reflection_closure({a1, a4}, ps.sigma_theta);
    REQUIRE(res.ok);
    CHECK(res.roots.size() == 12);
    CHECK(res.roots.size() == ps.sigma_theta.size());
    auto recog = recognize_type(res.roots);
    REQUIRE(recog.components.size() == 1);
    CHECK(recog.components[0].type == "G");
    CHECK(recog.components[0].rank == 2);
}

TEST_CASE("recognize_type on whole systems") {
    struct Case {
        SystemLabel label;
        std::string type;
    };
    for (const auto& [label, type] : std::vector<Case>{{{Family::A, 3}, "A"},
                                                       {{Family::B, 3}, "B"},
                                                       {{Family::C, 3}, "C"},
                                                       {{Family::D, 4}, "D"},
                                                       {{Family::F, 4}, "F"},
                                                       {{Family::G, 2}, "G"},
                                                       {{Family::E, 6}, "E"},
                                                       {{Family::E, 7}, "E"},
                                                       {{Family::E, 8}, "E"}}) {
        auto sys = build(label);
        auto recog = recognize_type(sys.roots);
        INFO(label.str());
        REQUIRE(recog.components.size() == 1);
        CHECK(recog.components[0].type == type);
        CHECK(recog.components[0].rank == label.rank);
        CHECK(recog.reduced);
        CHECK(recog.rank == (size_t)label.rank);
    }
}

TEST_CASE("recognize_type details") {
    SECTION("B2 block") {
        Vec e3{Rational(0), Rational(0), Rational(1), Rational(0)};
        Vec e4{Rational(0), Rational(0), Rational(0), Rational(1)};
        std::vector<Vec> roots{e3, negate(e3), e4, negate(e4),
                               add(e3, e4), negate(add(e3, e4)),
                               sub(e3, e4), sub(e4, e3)};
        auto recog = recognize_type(roots);
        REQUIRE(recog.components.size() == 1);
        CHECK(recog.components[0].type == "B");
        CHECK(recog.components[0].rank == 2);
    }
    SECTION("rank-1 pair") {
        Vec v{Rational(1), Rational(2)};
        auto recog = recognize_type({v, negate(v)});
        REQUIRE(recog.components.size() == 1);
        CHECK(recog.components[0].type == "A");
        CHECK(recog.components[0].rank == 1);
    }
    SECTION("BC1") {
        Vec v{Rational(1)};
        Vec w{Rational(2)};
        auto recog = recognize_type({v, negate(v), w, negate(w)});
        REQUIRE(recog.components.size() == 1);
        CHECK(recog.components[0].type == "BC");
        CHECK_FALSE(recog.reduced);
    }
    SECTION("BC2 from full doubled set") {
        std::vector<Vec> roots;
        for (int i = 0; i < 2; ++i)
            for (int s : {1, -1}) {
                Vec v(2, Rational(0));
                v[i] = Rational(s);
                roots.push_back(v);
                roots.push_back(scale(Rational(2), v));
            }
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) roots.push_back({Rational(s1), Rational(s2)});
        auto recog = recognize_type(roots);
        REQUIRE(recog.components.size() == 1);
        CHECK(recog.components[0].type == "BC");
        CHECK(recog.components[0].rank == 2);
        CHECK_FALSE(recog.reduced);
        CHECK(roots.size() == 12);  // 2·2²+2·2
    }
    SECTION("two orthogonal A1 components") {
        Vec a{Rational(1), Rational(0)};
        Vec b{Rational(0), Rational(1)};
        auto recog = recognize_type({a, negate(a), b, negate(b)});
        CHECK(recog.components.size() == 2);
        CHECK(recog.rank == 2);
    }
}

TEST_CASE("max_rank_subsystems") {
    SECTION("full system with empty theta returns itself at top rank") {
        for (const auto& label :
             std::vector<SystemLabel>{{Family::A, 3}, {Family::B, 3}, {Family::C, 3}}) {
            auto sys = build(label);
            auto ps = project_system(sys, {});
            auto reports = max_rank_subsystems(ps, ps.d);
            INFO(label.str());
            REQUIRE(!reports.empty());
            bool whole = false;
            for (const auto& rep : reports) {
                audit(rep);
                CHECK(rep.rank == (size_t)label.rank);
                CHECK(rep.achieves_d);
                if (rep.roots.size() == sys.roots.size()) {
                    whole = true;
                    CHECK(rep.components.size() == 1);
                    CHECK(rep.components[0].first == std::string(1, family_char(label.family)));
                }
            }
            CHECK(whole);
        }
    }
    SECTION("F4 theta={a2,a4}: nothing of rank 2") {
        auto ps = project_system(build({Family::F, 4}), {1, 3});
        auto reports = max_rank_subsystems(ps, 2);
        REQUIRE(!reports.empty());
        for (const auto& rep : reports) {
            CHECK(rep.rank == 1);
            CHECK_FALSE(rep.achieves_d);
        }
    }
    SECTION("F4 theta={a4}: both A2 and B2 at rank 2") {
        auto ps = project_system(build({Family::F, 4}), {3});
        auto reports = max_rank_subsystems(ps, 2);
        std::set<std::string> types;
        for (const auto& rep : reports) {
            audit(rep);
            CHECK(rep.rank == 2);
            for (const auto& [t, r] : rep.components)
                if (r == 2) types.insert(t);
        }
        CHECK(types.count("A"));
        CHECK(types.count("B"));
    }
    SECTION("B4 theta={a1,a3}: BC2 found") {
        auto ps = project_system(build({Family::B, 4}), {0, 2});
        auto reports = max_rank_subsystems(ps, 2);
        bool bc2 = false;
        for (const auto& rep : reports) {
            audit(rep);
            CHECK(rep.rank == 2);
            for (const auto& [t, r] : rep.components)
                if (t == "BC" && r == 2) bc2 = true;
        }
        CHECK(bc2);
    }
    SECTION("rank_cap above d is rejected") {
        auto ps = project_system(build({Family::A, 3}), {0});
        CHECK_THROWS_AS(max_rank_subsystems(ps, 3), std::invalid_argument);
    }
}
