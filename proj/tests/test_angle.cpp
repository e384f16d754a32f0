#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "rootproj/angle.hpp"

using namespace rootproj;

TEST_CASE("angle_data basics") {
    Vec a{Rational(1), Rational(0)};
    Vec b{Rational(0), Rational(1)};
    CHECK(angle_data(a, b).verdict == AngleVerdict::orthogonal);
    CHECK_FALSE(angle_data(a, b).c.has_value());
    CHECK_THROWS_AS(angle_data(a, Vec{Rational(0), Rational(0)}), std::invalid_argument);

    Vec w{Rational(-1, 2), Rational(3, 4)};
    auto d = angle_data(a, w);
    CHECK(d.c.has_value());
    CHECK(d.verdict == AngleVerdict::incompatible);
}

TEST_CASE("A2 pair") {
    auto sys = build({Family::A, 2});
    auto d = angle_data(sys.simple[0], sys.simple[1]);
    CHECK(d.verdict == AngleVerdict::a2);
    CHECK(*d.c == Rational(4));
    CHECK(d.r == Rational(1));
    CHECK(*d.product_cr == Rational(4));
}

TEST_CASE("B2 and G2 pairs") {
    auto b2 = build({Family::B, 2});
    auto db = angle_data(b2.simple[0], b2.simple[1]);
    CHECK(db.verdict == AngleVerdict::b2_like);
    CHECK(*db.c == Rational(2));
    CHECK(db.r == Rational(2));

    auto g2 = build({Family::G, 2});
    auto dg = angle_data(g2.simple[0], g2.simple[1]);
    CHECK(dg.verdict == AngleVerdict::g2_like);
    CHECK(*dg.c == Rational(4, 3));
    CHECK(dg.r == Rational(3));
}

TEST_CASE("symmetry and scaling") {
    Vec a{Rational(1), Rational(-1), Rational(0)};
    Vec b{Rational(0), Rational(1), Rational(-1)};
    auto d1 = angle_data(a, b);
    auto d2 = angle_data(b, a);
    CHECK(d1.c == d2.c);
    CHECK(d1.r == d2.r);
    CHECK(d1.verdict == d2.verdict);
    auto d3 = angle_data(scale(Rational(5, 3), a), b);
    CHECK(d3.c == d1.c);  // C is scale invariant
}

TEST_CASE("proportional vectors flagged") {
    Vec a{Rational(1), Rational(1)};
    auto d = angle_data(a, scale(Rational(2), a));
    CHECK(d.verdict == AngleVerdict::proportional);
    CHECK(*d.c == Rational(1));
}

TEST_CASE("full systems only admit C in {4,2,4/3} with CR=4") {
    for (const auto& label : std::vector<SystemLabel>{{Family::A, 3},
                                                      {Family::B, 3},
                                                      {Family::C, 3},
                                                      {Family::D, 4},
                                                      {Family::F, 4},
                                                      {Family::G, 2}}) {
        auto sys = build(label);
        INFO(label.str());
        size_t bad = 0;
        for (size_t i = 0; i < sys.roots.size(); ++i)
            for (size_t j = i + 1; j < sys.roots.size(); ++j) {
                auto d = angle_data(sys.roots[i], sys.roots[j]);
                if (d.verdict == AngleVerdict::orthogonal ||
                    d.verdict == AngleVerdict::proportional)
                    continue;
                if (!(*d.c == Rational(4) || *d.c == Rational(2) ||
                      *d.c == Rational(4, 3)))
                    ++bad;
                if (*d.product_cr != Rational(4)) ++bad;
            }
        CHECK(bad == 0);
    }
}

TEST_CASE("reference spot values for projected pairs") {
    SECTION("F4 theta={a1,a2}: C=4/3, R=3") {
        auto ps = project_system(build({Family::F, 4}), {0, 1});
        auto d = angle_data(ps.delta_theta[0], ps.delta_theta[1]);
        CHECK(*d.c == Rational(4, 3));
        CHECK(d.r == Rational(3));
        CHECK(d.verdict == AngleVerdict::g2_like);
    }
    SECTION("F4 theta={a2,a4}: C=3/2") {
        // the quoted projections are ᾱ1 = e1−(e2+e3)/2 and
        // ᾱ3 = (e2+e3)/2 − ¼(e1+e2+e3+e4); their exact squared lengths are
        // 3/2 and 1/4, so C = (3/2·1/4)/(1/4) = 3/2
        auto ps = project_system(build({Family::F, 4}), {1, 3});
        CHECK(norm_sq(ps.delta_theta[0]) == Rational(3, 2));
        CHECK(norm_sq(ps.delta_theta[1]) == Rational(1, 4));
        auto d = angle_data(ps.delta_theta[0], ps.delta_theta[1]);
        CHECK(*d.c == Rational(3, 2));
        CHECK(d.verdict == AngleVerdict::incompatible);
    }
    SECTION("F4 theta={a1,a4}: C=9/8") {
        auto ps = project_system(build({Family::F, 4}), {0, 3});
        auto d = angle_data(ps.delta_theta[0], ps.delta_theta[1]);
        CHECK(*d.c == Rational(9, 8));
        CHECK(d.verdict == AngleVerdict::incompatible);
    }
    SECTION("E6 theta={a2,a5}: C=9/4") {
        auto ps = project_system(build({Family::E, 6}), {1, 4});
        auto d = angle_data(ps.delta_theta[1], ps.delta_theta[2]);
        CHECK(*d.c == Rational(9, 4));
        CHECK(d.verdict == AngleVerdict::incompatible);
    }
    SECTION("E7 theta={a4}: C=9 for (a1bar, a3bar)") {
        auto ps = project_system(build({Family::E, 7}), {3});
        auto d = angle_data(ps.delta_theta[0], ps.delta_theta[2]);
        CHECK(*d.c == Rational(9));
        CHECK(d.verdict == AngleVerdict::incompatible);
    }
}

TEST_CASE("incompatibility_screen") {
    SECTION("single pair set") {
        auto ps = project_system(build({Family::F, 4}), {1, 3});
        auto rep = incompatibility_screen(ps);
        CHECK(!rep.pairs.empty());
        std::set<Rational> cs;
        for (const auto& e : rep.offenders) cs.insert(*e.data.c);
        CHECK(cs == std::set<Rational>{Rational(9, 8), Rational(3, 2), Rational(3),
                                       Rational(9)});
    }
    SECTION("rank-1 projection has no pairs") {
        // B2 with theta={a1}: sigma_theta = {±ē, ±2ē}, proportional only
        auto ps = project_system(build({Family::B, 2}), {0});
        auto rep = incompatibility_screen(ps);
        CHECK(rep.pairs.empty());
    }
    SECTION("screen flags admissible types") {
        auto ps = project_system(build({Family::F, 4}), {0, 1});
        auto rep = incompatibility_screen(ps);
        CHECK(rep.admits_g2);
    }
}
