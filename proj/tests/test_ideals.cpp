#include "fixtures.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>
#include <pcgl/ideals.hpp>

using namespace pcgl;

TEST_CASE("poisson closure on bellsig") {
    auto bs = fixture("bellsig");
    auto c = poisson_closure(bs.table(), ideal_of(bs, {"x"}));
    CHECK(c.ideal == ideal_of(bs, {"x", "y*z"}));
    CHECK(c.ideal.strings() == std::vector<std::string>{"x", "y*z"});
    CHECK(is_poisson_ideal(bs.table(), c.ideal));
    CHECK(c.ideal.contains(ideal_of(bs, {"x"})));

    auto xy = poisson_closure(bs.table(), ideal_of(bs, {"x", "y"}));
    CHECK(xy.ideal == ideal_of(bs, {"x", "y"}));
    CHECK(xy.adjoined.empty());
    auto z = poisson_closure(bs.table(), ideal_of(bs, {"z"}));
    CHECK(z.ideal == ideal_of(bs, {"z"}));
    CHECK(z.adjoined.empty());
}

TEST_CASE("poisson closure is a minimal fixpoint") {
    auto bs = fixture("bellsig");
    for (auto gens : {std::vector<const char*>{"x"}, {"y"}, {"x + z"}, {"y^2 + x"}}) {
        std::vector<Polynomial> g;
        for (auto s : gens) g.push_back(bs.parse(s));
        Ideal I(bs.ring(), g);
        auto c = poisson_closure(bs.table(), I);
        CHECK(is_poisson_ideal(bs.table(), c.ideal));
        CHECK(poisson_closure(bs.table(), c.ideal).ideal == c.ideal);
        if (!c.adjoined.empty()) {
            // Dropping the last adjoined element loses Poisson-stability.
            std::vector<Polynomial> fewer = g;
            fewer.insert(fewer.end(), c.adjoined.begin(), c.adjoined.end() - 1);
            CHECK_FALSE(is_poisson_ideal(bs.table(), Ideal(bs.ring(), fewer)));
        }
    }
    // <y>: {w,y} = x + y^2 brings in x, then {w,x} = 2yz lies in <x,y>.
    CHECK(poisson_closure(bs.table(), ideal_of(bs, {"y"})).ideal == ideal_of(bs, {"x", "y"}));
}

TEST_CASE("h-core") {
    auto weyl = fixture("weyl");
    auto det = ideal_of(weyl, {"a*X - 1"});
    CHECK(h_core(weyl.grading(), det) == det);
    CHECK(h_core(weyl.grading(), ideal_of(weyl, {"a + X^2"})).is_zero());
    CHECK(h_core(weyl.grading(), ideal_of(weyl, {"a", "X + 1"})) == ideal_of(weyl, {"a"}));
    auto bs = fixture("bellsig");
    auto any = ideal_of(bs, {"x + 1", "y*z - w"});
    CHECK(h_core(bs.grading(), any) == any);
    auto m2 = fixture("m2");
    CHECK(h_core(m2.grading(), ideal_of(m2, {"a*d - b*c - 1"})).is_zero());
    // a, b and d have independent weights, so modulo c a homogeneous element
    // is a monomial and never vanishes under b -> -a.
    CHECK(h_core(m2.grading(), ideal_of(m2, {"a + b", "c"})) == ideal_of(m2, {"c"}));
}

TEST_CASE("h-core agrees with the torus-orbit oracle") {
    std::mt19937_64 rng(21);
    auto check = [&](const PoissonPresentation& p, const Ideal& I) {
        Ideal core = h_core(p.grading(), I);
        INFO(I.str() << " -> " << core.str());
        CHECK(is_h_stable(p.grading(), core));
        CHECK(I.contains(core));
        CHECK(h_core(p.grading(), core) == core);
        // Every core element stays in I under five random torus elements.
        for (int t = 0; t < 5; ++t) {
            auto pt = oracle::random_point(p.grading().rank, rng);
            for (const auto& g : core.basis_polynomials())
                CHECK(I.contains(oracle::torus_act(g, p.grading().weights, pt)));
        }
        // Homogeneous elements of I lie in the core: components of multiples
        // of the basis that happen to lie in I.
        for (const auto& g : I.basis_polynomials())
            for (int m = 0; m < 3; ++m) {
                auto f = g * random_polynomial(p.ring(), first_indices(p.size()), 2, 2, rng);
                for (const auto& [w, c] : homogeneous_components(p.grading(), f))
                    if (I.contains(c)) CHECK(core.contains(c));
            }
    };
    auto weyl = fixture("weyl");
    for (auto gens : {std::vector<const char*>{"a + X^2"}, {"a", "X + 1"}, {"a*X - 1"}, {"a*X + a^2*X^2", "X^3"}})
        check(weyl, [&] {
            std::vector<Polynomial> g;
            for (auto s : gens) g.push_back(weyl.parse(s));
            return Ideal(weyl.ring(), g);
        }());
    auto m2 = fixture("m2");
    for (auto gens : {std::vector<const char*>{"a + b", "c"}, {"a*d - b*c - 1"}, {"b - c", "d"}})
        check(m2, [&] {
            std::vector<Polynomial> g;
            for (auto s : gens) g.push_back(m2.parse(s));
            return Ideal(m2.ring(), g);
        }());
}

TEST_CASE("primality tags") {
    auto bs = fixture("bellsig");
    CHECK(primality_tag(Ideal::zero(bs.ring())) == Primality::verified);
    CHECK(primality_tag(ideal_of(bs, {"x", "z"})) == Primality::verified);
    CHECK(primality_tag(ideal_of(bs, {"x", "y*z"})) == Primality::asserted);
    CHECK(primality_tag(ideal_of(bs, {"x*w - y"})) == Primality::verified);
    CHECK(primality_tag(ideal_of(bs, {"x*w - x*y"})) == Primality::asserted);
    CHECK(primality_tag(ideal_of(bs, {"y^2 - x^2"})) == Primality::asserted);
    CHECK(std::string(to_string(Primality::asserted)) == "asserted");
}

TEST_CASE("chain reports for the non-catenary example") {
    auto bs = fixture("bellsig");
    auto shortc = chain_report(bs, {Ideal::zero(bs.ring()), ideal_of(bs, {"x", "y"}), ideal_of(bs, {"x", "y", "z"})});
    CHECK(shortc.length() == 2);
    CHECK(shortc.all_poisson());
    CHECK(shortc.all_prime_verified());
    CHECK(shortc.drops == std::vector<int>{2, 1});
    CHECK_FALSE(shortc.saturated_in_spec());
    CHECK(shortc.entries[0].dimension == 4);
    CHECK(shortc.entries[1].dimension == 2);
    CHECK(shortc.entries[2].dimension == 1);

    auto longc = chain_report(bs, {Ideal::zero(bs.ring()), ideal_of(bs, {"z"}), ideal_of(bs, {"x", "z"}),
                                   ideal_of(bs, {"x", "y", "z"})});
    CHECK(longc.length() == 3);
    CHECK(longc.all_poisson());
    CHECK(longc.all_prime_verified());
    CHECK(longc.drops == std::vector<int>{1, 1, 1});
    CHECK(longc.saturated_in_spec());

    auto one = chain_report(bs, {ideal_of(bs, {"z"})});
    CHECK(one.length() == 0);
    CHECK(one.saturated_in_spec());

    CHECK_THROWS_AS(chain_report(bs, {ideal_of(bs, {"x"}), ideal_of(bs, {"z"})}), InputError);
    CHECK_THROWS_AS(chain_report(bs, {ideal_of(bs, {"x"}), ideal_of(bs, {"x"})}), InputError);
    CHECK_THROWS_AS(chain_report(bs, {}), InputError);
    CHECK_THROWS_AS(chain_report(bs, {ideal_of(bs, {"x"}), ideal_of(bs, {"1"})}), InputError);

    // <x> is not Poisson: {w, x} = 2yz.
    auto notp = chain_report(bs, {Ideal::zero(bs.ring()), ideal_of(bs, {"x"})});
    CHECK_FALSE(notp.all_poisson());
}
