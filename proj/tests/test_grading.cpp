#include "fixtures.hpp"

#include <catch_amalgamated.hpp>
#include <pcgl/grading.hpp>

using namespace pcgl;

TEST_CASE("homogeneous components") {
    auto weyl = fixture("weyl");
    auto comps = homogeneous_components(weyl.grading(), weyl.parse("a*X - 1"));
    REQUIRE(comps.size() == 1);
    CHECK(comps.begin()->first == Weight{0});

    auto split = homogeneous_components(weyl.grading(), weyl.parse("a + X^2 + 3"));
    CHECK(split.size() == 3);
    CHECK(split.at(Weight{-1}) == weyl.parse("a"));
    CHECK(split.at(Weight{2}) == weyl.parse("X^2"));
    CHECK(split.at(Weight{0}) == weyl.parse("3"));

    auto bs = fixture("bellsig");
    CHECK(homogeneous_components(bs.grading(), bs.parse("x + y*z + w^3")).size() == 1);

    auto r = Ring::make({"x", "y", "z"});
    GradingData adhoc(1, {{2}, {1}, {1}});
    auto c = homogeneous_components(adhoc, parse("x + y*z", r));
    REQUIRE(c.size() == 1);
    CHECK(c.begin()->first == Weight{2});
    CHECK(is_homogeneous(adhoc, Polynomial(r)));
    CHECK_FALSE(weight_of(adhoc, Polynomial(r)).has_value());
}

TEST_CASE("lie action") {
    auto weyl = fixture("weyl");
    LieVector h{Rational(1)};
    CHECK(lie_act(weyl.grading(), h, weyl.parse("X")) == weyl.parse("X"));
    CHECK(lie_act(weyl.grading(), h, weyl.parse("a")) == weyl.parse("-a"));
    CHECK(lie_act(weyl.grading(), h, weyl.parse("7")).is_zero());
    CHECK(lie_act(weyl.grading(), h, weyl.parse("a*X - 1")).is_zero());
    CHECK(lie_act(weyl.grading(), h, weyl.parse("a^2 + X")) == weyl.parse("-2*a^2 + X"));
}

TEST_CASE("graded bracket check") {
    CHECK(check_graded_bracket(fixture("weyl").grading(), fixture("weyl").table()).pass);
    CHECK(check_graded_bracket(fixture("pplane").grading(), fixture("pplane").table()).pass);
    CHECK(check_graded_bracket(fixture("m2").grading(), fixture("m2").table()).pass);
    CHECK(check_graded_bracket(fixture("bellsig").grading(), fixture("bellsig").table()).pass);

    // deg a = 0 leaves -aX + 1 with terms of weights 1 and 0.
    auto weyl = fixture("weyl");
    GradingData bad = GradingData::from_rows({{0, 1}}, 2);
    auto rep = check_graded_bracket(bad, weyl.table());
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.failures.size() == 1);
    CHECK(rep.failures[0] == std::pair<std::size_t, std::size_t>{1, 0});

    auto rep3 = check_graded_bracket(GradingData::from_rows({{1, 1}, {0, 0}}, 2), weyl.table());
    CHECK_FALSE(rep3.pass);
}

TEST_CASE("solving for lie vectors") {
    auto weyl = fixture("weyl");
    auto h2 = solve_h(weyl.grading(), 2, {Rational(-1)});
    REQUIRE(h2);
    CHECK(*h2 == LieVector{Rational(1)});
    CHECK(pairing(*h2, weyl.grading().weights[1]) == 1);

    auto h1 = solve_h(weyl.grading(), 1, {});
    REQUIRE(h1);
    CHECK(pairing(*h1, weyl.grading().weights[0]) != 0);
    CHECK(*h1 == LieVector{Rational(1)});

    CHECK_FALSE(solve_h(fixture("bellsig").grading(), 4, {0, 0, 0}).has_value());

    // deg a = deg X: eigenvalue 0 on a forces eigenvalue 0 on X.
    GradingData g = GradingData::from_rows({{1, 1}}, 2);
    CHECK_FALSE(solve_h(g, 2, {Rational(0)}).has_value());
    CHECK(*solve_h(g, 2, {Rational(3)}) == LieVector{Rational(3)});
}

TEST_CASE("solve_h meets its constraints on m2") {
    auto m2 = fixture("m2");
    std::vector<std::vector<Rational>> mus{{}, {Rational(-1)}, {Rational(-1), Rational(0)}, {Rational(0), Rational(-1), Rational(-1)}};
    for (std::size_t k = 1; k <= 4; ++k) {
        auto h = solve_h(m2.grading(), k, mus[k - 1]);
        REQUIRE(h);
        for (std::size_t j = 0; j + 1 < k; ++j) CHECK(pairing(*h, m2.grading().weights[j]) == mus[k - 1][j]);
        CHECK(pairing(*h, m2.grading().weights[k - 1]) != 0);
    }
}
