#include "oracles.hpp"

#include <catch_amalgamated.hpp>
#include <pcgl/qpoly.hpp>

using namespace pcgl;

namespace {

RingPtr xyzw() { return Ring::make({"x", "y", "z", "w"}); }

Derivation bellsig_delta(const RingPtr& r) {
    Derivation d(r);
    d.set(0, parse("2*y*z", r));
    d.set(1, parse("x + y^2", r));
    d.set(2, Polynomial(r));
    d.set(3, Polynomial(r));
    return d;
}

}  // namespace

TEST_CASE("rationals are kept in lowest terms") {
    Rational q = parse_rational("-6/4");
    CHECK(to_string(q) == "-3/2");
    CHECK(to_string(parse_rational("0/7")) == "0");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
}

TEST_CASE("parse") {
    auto r = xyzw();
    auto p = parse("2*y*z", r);
    CHECK(p.size() == 1);
    CHECK(p.coefficient(Monomial({0, 1, 1, 0})) == 2);
    CHECK(parse("0", r).terms().empty());

    auto q = parse("(x+y)*(x-y)", r);
    CHECK(q.str() == "x^2 - y^2");
    CHECK(oracle::agree_at_points(q, parse("x^2 - y^2", r), 20));
    CHECK(parse("1/2*x - 3/4", r).str() == "1/2*x - 3/4");
    CHECK(parse("-(x - y)^3", r) == parse("-x^3 + 3*x^2*y - 3*x*y^2 + y^3", r));
}

TEST_CASE("parse errors") {
    auto r = xyzw();
    try {
        parse("x + * y", r);
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK_THROWS_AS(parse("x + q", r), InputError);
    CHECK_THROWS_AS(parse("x^-1", r), InputError);
    CHECK_THROWS_AS(parse("(x + y", r), ParseError);
    auto lr = Ring::make({"a", "X"}, {false, true});
    CHECK(parse("X^-2*a", lr).str() == "a*X^-2");
}

TEST_CASE("arithmetic") {
    auto lr = Ring::make({"a", "X"}, {false, true});
    auto X = Polynomial::variable(lr, "X");
    CHECK(parse("X^-1", lr) * X == Polynomial(lr, 1));
    auto r = xyzw();
    CHECK((parse("x+y", r) + parse("-x-y", r)).is_zero());
    auto f = parse("a*X - 1", lr) * X;
    CHECK(f.str() == "a*X^2 - X");
    CHECK(oracle::agree_at_points(f, parse("a*X^2 - X", lr), 10));
    CHECK_THROWS_AS(parse("x", r) + parse("a", lr), ContextMismatch);
    CHECK_THROWS_AS(parse("x", r).pow(-1), DomainError);
}

TEST_CASE("printing of Laurent polynomials") {
    auto lr = Ring::make({"a", "X"}, {false, true});
    CHECK(parse("a - X^-1", lr).str() == "a - X^-1");
    CHECK(parse("-a", lr).str() == "-a");
    CHECK(Polynomial(lr).str() == "0");
    CHECK(parse("a^2 - 2*a*X^-1 + X^-2", lr).str() == "a^2 - 2*a*X^-1 + X^-2");
}

TEST_CASE("apply derivation") {
    auto r = xyzw();
    auto d = bellsig_delta(r);
    CHECK(d(parse("x", r)) == parse("2*y*z", r));
    CHECK(d(Polynomial(r, 5)).is_zero());
    CHECK(d(parse("y^2", r)) == parse("2*x*y + 2*y^3", r));

    Derivation partial(r);
    partial.set(0, Polynomial(r, 1));
    CHECK_THROWS_AS(partial(parse("x*y", r)), DomainError);
    CHECK(partial(parse("x^3", r)) == parse("3*x^2", r));
}

TEST_CASE("iterate derivation") {
    auto r = Ring::make({"a"});
    Derivation d(r);
    d.set(0, Polynomial(r, 1));
    auto it = iterate_derivation(d, parse("a", r), 25);
    REQUIRE(it.nilpotency_index);
    CHECK(*it.nilpotency_index == 2);
    CHECK(it.powers.size() == 3);
    CHECK(it.powers[1] == Polynomial(r, 1));

    auto z = iterate_derivation(d, Polynomial(r), 5);
    CHECK(z.nilpotency_index == 0);
    CHECK(z.powers.size() == 1);

    auto b = xyzw();
    auto y = iterate_derivation(bellsig_delta(b), parse("y", b), 6);
    CHECK_FALSE(y.within_bound());
    CHECK(y.powers.size() == 7);
    CHECK(y.powers[2] == parse("2*y*z + 2*y*(x + y^2)", b));
    for (std::size_t m = 3; m < y.powers.size(); ++m) CHECK(y.powers[m].total_degree() > y.powers[m - 1].total_degree());
    CHECK(y.degree_growth);
}

TEST_CASE("random ring axioms and canonical form") {
    auto r = xyzw();
    std::mt19937_64 rng(11);
    auto vars = first_indices(4);
    auto d = bellsig_delta(r);
    for (int t = 0; t < 200; ++t) {
        auto f = random_polynomial(r, vars, 3, 4, rng);
        auto g = random_polynomial(r, vars, 3, 4, rng);
        auto h = random_polynomial(r, vars, 2, 3, rng);
        CHECK(((f - g).is_zero()) == (f.terms() == g.terms()));
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK(f * g == g * f);
        CHECK(f + g == g + f);
        CHECK(d(f * g) == d(f) * g + f * d(g));
        CHECK(parse(f.str(), r) == f);
        auto pt = oracle::random_point(4, rng);
        CHECK(oracle::eval(f * g, pt) == oracle::eval(f, pt) * oracle::eval(g, pt));
    }
}

TEST_CASE("exact division") {
    auto r = xyzw();
    auto f = parse("x^2 - y^2", r);
    auto q = divide_exact(f, parse("x - y", r));
    REQUIRE(q);
    CHECK(*q == parse("x + y", r));
    CHECK_FALSE(divide_exact(parse("2*y*z", r), parse("x", r)));
    auto lr = Ring::make({"a", "X"}, {false, true});
    auto lq = divide_exact(parse("a*X - 1", lr), parse("a - X^-1", lr));
    REQUIRE(lq);
    CHECK(*lq == parse("X", lr));
}

TEST_CASE("substitute and rebase") {
    auto r = xyzw();
    auto f = parse("x*y + z", r);
    std::vector<Polynomial> imgs{parse("y", r), parse("x", r), parse("w^2", r), parse("w", r)};
    CHECK(substitute(f, imgs) == parse("x*y + w^2", r));
    auto r2 = Ring::make({"z", "y", "x", "w"});
    CHECK(rebase(f, r2).str() == "y*x + z");
}
