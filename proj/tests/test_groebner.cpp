#include "oracles.hpp"

#include <catch_amalgamated.hpp>
#include <pcgl/groebner.hpp>
#include <pcgl/linalg.hpp>

using namespace pcgl;

namespace {

Ideal ideal(const RingPtr& r, std::initializer_list<const char*> gens) {
    std::vector<Polynomial> g;
    for (auto s : gens) g.push_back(parse(s, r));
    return Ideal(r, g);
}


}  // namespace

TEST_CASE("groebner golden cases") {
    auto r = Ring::make({"x", "y"});
    CHECK(ideal(r, {"x - y", "x + y"}).strings() == std::vector<std::string>{"y", "x"});
    CHECK(ideal(r, {"1"}).strings() == std::vector<std::string>{"1"});
    CHECK(ideal(r, {"2*x*y + 4"}).is_unit() == false);
    auto r3 = Ring::make({"x", "y", "z"});
    CHECK(ideal(r3, {"x", "y*z"}).strings() == std::vector<std::string>{"x", "y*z"});
    CHECK(ideal(r3, {"x", "y*z"}) == ideal(r3, {"y*z + x", "x*z + x"}).with({parse("x", r3)}));
}

TEST_CASE("membership") {
    auto r = Ring::make({"x", "y"});
    auto m = member(ideal(r, {"x - y"}), parse("x^2 - y^2", r));
    CHECK(m.member);
    auto n = member(ideal(r, {"x", "y"}), Polynomial(r, 1));
    CHECK_FALSE(n.member);
    CHECK(n.normal_form == Polynomial(r, 1));
}

TEST_CASE("saturation") {
    auto r = Ring::make({"a", "X"});
    auto I = ideal(r, {"a*X - 1"});
    CHECK(saturate(I, parse("a", r)) == I);
    auto s = Ring::make({"x", "y"});
    auto sat = saturate(ideal(s, {"x*y"}), parse("x", s));
    CHECK(sat == ideal(s, {"y"}));
    CHECK(saturate(sat, parse("x", s)) == sat);
    CHECK(saturate(I, Polynomial(r, 1)) == I);
    auto J = ideal(s, {"x^2*y - x*y^2", "x^3"});
    CHECK(saturate(saturate(J, parse("x", s)), parse("x", s)) == saturate(J, parse("x", s)));
}

TEST_CASE("elimination") {
    auto r = Ring::make({"a", "X"});
    CHECK(eliminate(ideal(r, {"a*X - 1"}), {0}).is_zero());
    CHECK(eliminate(ideal(r, {"a", "X"}), {0}) == ideal(r, {"a"}));
    auto r3 = Ring::make({"x", "y", "z"});
    CHECK(eliminate(ideal(r3, {"x", "y*z"}), {1, 2}) == ideal(r3, {"y*z"}));
    auto r2 = Ring::make({"x", "y", "t"});
    CHECK(eliminate(ideal(r2, {"x - t^2", "y - t^3"}), {0, 1}) == ideal(r2, {"x^3 - y^2"}));
}

TEST_CASE("intersection") {
    auto r = Ring::make({"x", "y"});
    CHECK(intersect(ideal(r, {"x"}), ideal(r, {"y"})) == ideal(r, {"x*y"}));
}

TEST_CASE("dimension") {
    auto r = Ring::make({"x", "y", "z", "w"});
    CHECK(dimension(ideal(r, {"x", "y"})) == 2);
    CHECK(dimension(Ideal::zero(r)) == 4);
    CHECK(dimension(ideal(Ring::make({"a", "X"}), {"a*X - 1"})) == 1);
    CHECK_THROWS_AS(dimension(ideal(r, {"1"})), DomainError);
    for (unsigned s = 0; s < 16; ++s) {
        std::vector<Polynomial> g;
        for (std::size_t i = 0; i < 4; ++i)
            if ((s >> i) & 1) g.push_back(Polynomial::variable(r, i));
        CHECK(dimension(Ideal(r, g)) == 4 - static_cast<int>(g.size()));
    }
}

TEST_CASE("basis properties on random ideals") {
    auto r = Ring::make({"x", "y", "z"});
    std::mt19937_64 rng(5);
    auto vars = first_indices(3);
    for (int t = 0; t < 15; ++t) {
        std::vector<Polynomial> g;
        for (int k = 0; k < 3; ++k) g.push_back(random_polynomial(r, vars, 2, 3, rng));
        Ideal I(r, g);
        CHECK(oracle::s_pairs_reduce(I.basis()));
        for (const auto& p : g) CHECK(I.contains(p));
        auto f = random_polynomial(r, vars, 3, 4, rng);
        CHECK(I.normal_form(I.normal_form(f)) == I.normal_form(f));
    }
}

TEST_CASE("lift gives cofactors") {
    auto r = Ring::make({"x", "y", "z"});
    std::vector<Polynomial> g{parse("x*y - z", r), parse("y^2 - x", r)};
    auto f = parse("x + 1", r) * g[0] + parse("y*z", r) * g[1];
    auto cof = lift(r, g, f);
    REQUIRE(cof);
    CHECK((*cof)[0] * g[0] + (*cof)[1] * g[1] == f);
    CHECK_FALSE(lift(r, g, parse("z", r)));
}

TEST_CASE("step budget") {
    auto r = Ring::make({"x", "y", "z"});
    std::vector<Polynomial> g{parse("x^3 - y*z^2 + 1", r), parse("y^3 - x*z + 2", r), parse("z^3 - x*y^2 - 3", r)};
    GroebnerOptions tight{10};
    CHECK_THROWS_AS(Ideal(r, g, tight), GroebnerBudgetExceeded);
}

TEST_CASE("integer kernel and Hermite form") {
    RationalMatrix m{{0, -1, 1}, {1, 0, 0}, {-1, 0, 0}};
    auto k = integer_kernel(m, 3);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == IntegerVector{0, 1, 1});
    RationalMatrix skew{{0, -1}, {1, 0}};
    CHECK(integer_kernel(skew, 2).empty());
    CHECK(integer_kernel(RationalMatrix{{0, 0}, {0, 0}}, 2) == IntegerMatrix{{1, 0}, {0, 1}});
    RationalMatrix half{{Rational(1, 2), Rational(-1, 3)}};
    CHECK(integer_kernel(half, 2) == IntegerMatrix{{2, 3}});
    CHECK(hermite_normal_form({{4, 6}, {2, 2}}) == IntegerMatrix{{2, 0}, {0, 2}});
}
