#include "fixtures.hpp"

#include <catch_amalgamated.hpp>
#include <pcgl/cgl.hpp>

using namespace pcgl;

TEST_CASE("split bracket") {
    auto weyl = fixture("weyl");
    auto s = split_bracket(weyl, 2);
    CHECK(s.sigma[0] == weyl.parse("-a"));
    CHECK(s.delta[0] == weyl.parse("1"));

    auto pp = fixture("pplane");
    auto t = split_bracket(pp, 2);
    CHECK(t.sigma[0] == pp.parse("a"));
    CHECK(t.delta[0].is_zero());

    auto bs = fixture("bellsig");
    auto u = split_bracket(bs, 4);
    CHECK(u.sigma[0].is_zero());
    CHECK(u.delta[0] == bs.parse("2*y*z"));
    CHECK(u.delta[1] == bs.parse("x + y^2"));
    CHECK(u.delta[2].is_zero());

    CHECK(split_bracket(weyl, 1).sigma.empty());
    CHECK_THROWS_AS(split_bracket(weyl, 3), DomainError);
}

TEST_CASE("split bracket rejects a top-degree-2 bracket") {
    auto r = Ring::make({"a", "X"});
    BracketTable t(r);
    t.set(1, 0, parse("a*X^2", r));
    PoissonPresentation p(r, t, GradingData::trivial(2));
    CHECK_THROWS_AS(split_bracket(p, 2), DomainError);
    auto rep = verify_cgl(p);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.levels[1].triangular);
    REQUIRE(rep.levels[1].triangularity.size() == 1);
    CHECK(rep.levels[1].triangularity[0].i == 1);
}

TEST_CASE("split reconstructs every bracket on the fixtures") {
    for (const char* name : {"weyl", "pplane", "bellsig", "m2"}) {
        auto p = fixture(name);
        for (std::size_t k = 1; k <= p.size(); ++k) {
            auto s = split_bracket(p, k);
            for (std::size_t j = 0; j + 1 < k; ++j) {
                CHECK(s.sigma[j] * p.var(k - 1) + s.delta[j] == bracket(p.table(), p.var(k - 1), p.var(j)));
                CHECK(s.sigma[j].degree_in(k - 1) == 0);
                CHECK(s.delta[j].degree_in(k - 1) == 0);
            }
        }
    }
}

TEST_CASE("verify weyl, pplane and m2") {
    for (const char* name : {"weyl", "pplane", "m2"}) {
        INFO(name);
        auto p = fixture(name);
        auto rep = verify_cgl(p);
        CHECK(rep.pass());
        CHECK(rep.failing_levels().empty());
        for (std::size_t k = 1; k <= p.size(); ++k) {
            LevelData L = level_data(p, k);
            REQUIRE(L.h);
            CHECK(L.lambda != 0);
            CHECK(lie_act(p.grading().prefix(k), *L.h, L.X()) == L.lambda * L.X());
            for (std::size_t j = 0; j + 1 < k; ++j)
                CHECK(lie_act(L.grading, *L.h, Polynomial::variable(L.ring, j)) == *L.sigma.image(j));
            CHECK(check_delta_condition(L.table, L.sigma, L.delta, k - 1).pass);
        }
    }
    auto weyl = verify_cgl(fixture("weyl"));
    CHECK(weyl.levels[1].lambda == 1);
    REQUIRE(weyl.levels[1].nilpotency.size() == 1);
    CHECK(weyl.levels[1].nilpotency[0].index == 2);
    auto pp = verify_cgl(fixture("pplane"));
    CHECK(pp.levels[1].nilpotency[0].index == 1);
}

TEST_CASE("m2 level data") {
    auto m2 = fixture("m2");
    LevelData L = level_data(m2, 4);
    CHECK(L.sigma_eigenvalues == std::vector<Rational>{0, -1, -1});
    CHECK(*L.delta.image(0) == m2.parse("-2*b*c"));
    CHECK(L.lambda == -2);
    CHECK(delta_shifts_weight(L));
}

TEST_CASE("bellsig fails at level 4") {
    auto bs = fixture("bellsig");
    auto rep = verify_cgl(bs);
    CHECK_FALSE(rep.pass());
    CHECK(rep.jacobi.pass);
    auto failing = rep.failing_levels();
    CHECK(std::find(failing.begin(), failing.end(), 4u) != failing.end());
    const auto& l4 = rep.levels[3];
    CHECK_FALSE(l4.nilpotent);
    CHECK_FALSE(l4.h.has_value());
    CHECK_FALSE(l4.h_valid);
    // delta_4(y) = x + y^2 grows in degree, delta_4(z) = 0.
    CHECK_FALSE(l4.nilpotency[1].index.has_value());
    CHECK(l4.nilpotency[1].likely_not_nilpotent);
    CHECK(l4.nilpotency[2].index == 1);
}

TEST_CASE("supplied lie vectors are validated") {
    auto weyl = fixture("weyl");
    PoissonPresentation good(weyl.ring(), weyl.table(), weyl.grading(), std::vector<LieVector>{{Rational(-1)}, {Rational(1)}});
    CHECK(verify_cgl(good).pass());
    CHECK(verify_cgl(good).levels[1].h_supplied);
    PoissonPresentation bad(weyl.ring(), weyl.table(), weyl.grading(), std::vector<LieVector>{{Rational(1)}, {Rational(2)}});
    auto rep = verify_cgl(bad);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.levels[1].h_valid);
    CHECK(rep.levels[0].h_valid);
    CHECK_THROWS_AS(PoissonPresentation(weyl.ring(), weyl.table(), weyl.grading(), std::vector<LieVector>{{Rational(1)}}),
                    InputError);
}

TEST_CASE("restriction") {
    auto weyl = fixture("weyl");
    auto r1 = restrict(weyl, 1);
    CHECK(r1.size() == 1);
    CHECK(r1.table().is_abelian());
    CHECK(r1.grading().weights[0] == Weight{-1});
    auto r0 = restrict(weyl, 0);
    CHECK(r0.size() == 0);
    CHECK(verify_cgl(r0).pass());
    auto r2 = restrict(weyl, 2);
    CHECK(r2.table().entry(1, 0).str() == weyl.table().entry(1, 0).str());
    CHECK_THROWS_AS(restrict(weyl, 3), DomainError);

    auto m2 = fixture("m2");
    auto full = verify_cgl(m2);
    for (std::size_t k = 0; k <= 4; ++k) {
        auto rk = verify_cgl(restrict(m2, k));
        REQUIRE(rk.levels.size() == k);
        for (std::size_t i = 0; i < k; ++i) CHECK(rk.levels[i].pass() == full.levels[i].pass());
    }
}

TEST_CASE("non-diagonal sigma is reported") {
    auto r = Ring::make({"a", "b", "X"});
    BracketTable t(r);
    t.set(2, 0, parse("b*X", r));
    PoissonPresentation p(r, t, GradingData::trivial(3));
    auto rep = verify_level(p, 3);
    CHECK_FALSE(rep.sigma_diagonal);
    CHECK_FALSE(rep.pass());
}
