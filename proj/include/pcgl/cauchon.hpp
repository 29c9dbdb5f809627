#pragma once

// The Poisson Cauchon map theta, Poisson-normal elements built from it,
// d-elements, second lifts, H-prime enumeration up a tower, separating normal
// elements and iterated deletion.

#include "cgl.hpp"
#include "grading.hpp"
#include "groebner.hpp"
#include "ideals.hpp"
#include "linalg.hpp"
#include "pbracket.hpp"
#include "qpoly.hpp"

#include <bit>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace pcgl {

class NotWithinBound : public DomainError {
public:
    using DomainError::DomainError;
};

namespace detail {

inline void require_base_element(const LevelData& L, const Polynomial& a) {
    if (!same_ring(a.ring(), L.ring)) throw ContextMismatch();
    if (!a.involves_only_first(L.k - 1)) throw DomainError("element does not lie in R_" + std::to_string(L.k - 1));
}

inline const Ideal* nonzero(const Ideal* I) { return I && !I->is_zero() ? I : nullptr; }

inline Polynomial reduce(const Polynomial& f, const Ideal* I) { return I ? I->normal_form(f) : f; }

/// Ideal of L.ring generated by the generators of I (I may live on A's ring).
inline Ideal lift_to(const LevelData& L, const Ideal& I) {
    return same_ring(I.ring(), L.ring) ? I : I.rebased(L.ring);
}

}  // namespace detail

/// Nonzero reductions of a, delta(a), delta^2(a), ... modulo I (if given).
inline std::vector<Polynomial> delta_iterates(const LevelData& L, const Polynomial& a, const Ideal* modulo = nullptr) {
    detail::require_base_element(L, a);
    std::vector<Polynomial> out;
    Polynomial cur = detail::reduce(a, modulo);
    while (!cur.is_zero()) {
        if (static_cast<int>(out.size()) > L.bounds.nilpotency)
            throw NotWithinBound("delta iterates do not vanish within " + std::to_string(L.bounds.nilpotency) + " steps");
        out.push_back(cur);
        cur = detail::reduce(L.delta(cur), modulo);
    }
    return out;
}

/// theta(a) = sum_l (1/l!) (-1/lambda)^l delta^l(a) X^{-l}, in the Laurent ring.
inline Polynomial theta(const LevelData& L, const Polynomial& a, const Ideal* modulo = nullptr) {
    L.require_lambda();
    auto it = delta_iterates(L, a, modulo);
    Polynomial out(L.laurent_ring);
    const Rational step = Rational(-1) / L.lambda;
    Rational coef = 1;
    for (std::size_t l = 0; l < it.size(); ++l) {
        if (l > 0) coef *= step / Rational(static_cast<long>(l));
        Monomial xl(L.laurent_ring->size());
        xl.set(L.top(), -static_cast<int>(l));
        out += rebase(it[l], L.laurent_ring).shift(xl) * coef;
    }
    return out;
}

/// max{l : delta^l(a) != 0}.
inline int s_max(const LevelData& L, const Polynomial& a, const Ideal* modulo = nullptr) {
    auto it = delta_iterates(L, a, modulo);
    if (it.empty()) throw DomainError("s_max of the zero element");
    return static_cast<int>(it.size()) - 1;
}

/// p * X^e in the Laurent ring.
inline Polynomial times_x_power(const LevelData& L, const Polynomial& p, int e) {
    Monomial m(L.laurent_ring->size());
    m.set(L.top(), e);
    return rebase(p, L.laurent_ring).shift(m);
}

struct ThetaReport {
    int samples = 0;
    int multiplicative_failures = 0;
    int bracket_failures = 0;
    int twist_failures = 0;
    std::optional<std::string> first_failure;
    bool pass() const { return multiplicative_failures == 0 && bracket_failures == 0 && twist_failures == 0; }
};

/// theta(ab) = theta(a)theta(b), theta({a,b}) = {theta a, theta b} and
/// {X, theta(a)} = theta(sigma(a)) X on random pairs from A.
inline ThetaReport check_theta(const LevelData& L, int samples, std::uint64_t seed = 1) {
    ThetaReport rep;
    BracketTable hat = L.table.rebase(L.laurent_ring);
    Polynomial X = Polynomial::variable(L.laurent_ring, L.top());
    std::mt19937_64 rng(seed);
    auto vars = L.base_generators();
    for (int t = 0; t < samples; ++t) {
        Polynomial a = random_polynomial(L.ring, vars, 2, 3, rng);
        Polynomial b = random_polynomial(L.ring, vars, 2, 3, rng);
        Polynomial ta = theta(L, a), tb = theta(L, b);
        ++rep.samples;
        auto note = [&](const char* what) {
            if (!rep.first_failure) rep.first_failure = std::string(what) + " fails for a = " + a.str() + ", b = " + b.str();
        };
        if (theta(L, a * b) != ta * tb) {
            ++rep.multiplicative_failures;
            note("theta(ab) = theta(a)theta(b)");
        }
        if (theta(L, bracket(L.table, a, b)) != bracket(hat, ta, tb)) {
            ++rep.bracket_failures;
            note("theta({a,b}) = {theta(a),theta(b)}");
        }
        if (bracket(hat, X, ta) != theta(L, L.sigma(a)) * X) {
            ++rep.twist_failures;
            note("{X,theta(a)} = theta(sigma(a))X");
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Poisson-normal elements

struct NormalElement {
    Polynomial x;
    int s = 0;
    Rational eta = 0;
    NormalityResult certificate;
    bool eta_identity = false;  // {x, X} = -eta x X
};

inline Rational eigenvalue(const LevelData& L, const Polynomial& a) {
    auto w = weight_of(L.grading, a);
    if (!w) throw DomainError("element is not homogeneous: " + a.str());
    return pairing(*L.h, *w);
}

/// x = theta(a) X^s for a homogeneous Poisson-normal a in A, with s = s_max(a).
inline NormalElement normal_element(const LevelData& L, const Polynomial& a) {
    detail::require_base_element(L, a);
    L.require_lambda();
    if (a.is_zero()) throw DomainError("normal element of zero");
    if (!is_homogeneous(L.grading, a)) throw DomainError("element is not homogeneous: " + a.str());
    auto inA = is_poisson_normal(L.table, a, L.base_generators());
    if (!inA.normal)
        throw DomainError(a.str() + " is not Poisson-normal in R_" + std::to_string(L.k - 1) + " (fails against " +
                          L.ring->name(*inA.failing_generator) + ")");
    NormalElement out{Polynomial(L.ring), s_max(L, a), eigenvalue(L, a), {}, false};
    out.x = rebase(times_x_power(L, theta(L, a), out.s), L.ring);
    out.certificate = is_poisson_normal(L.table, out.x);
    Polynomial X = L.X();
    out.eta_identity = bracket(L.table, out.x, X) == -out.eta * out.x * X;
    return out;
}

// ---------------------------------------------------------------------------
// d-elements

/// A fraction b/c of elements of A, normalized: common monomial content
/// removed, exact quotients taken, c with leading coefficient 1.
class DElement {
public:
    DElement(Polynomial b, Polynomial c) : b_(std::move(b)), c_(std::move(c)) {
        if (c_.is_zero()) throw DomainError("zero denominator");
        if (!same_ring(b_.ring(), c_.ring())) throw ContextMismatch();
        normalize();
    }
    const Polynomial& numerator() const { return b_; }
    const Polynomial& denominator() const { return c_; }
    bool is_zero() const { return b_.is_zero(); }

    std::string str() const {
        if (c_.is_constant()) return b_.str();
        return wrap(b_, false) + "/" + wrap(c_, true);
    }

private:
    // Denominators are bracketed unless they are a single variable power.
    static std::string wrap(const Polynomial& p, bool denominator) {
        bool simple = p.size() == 1 && p.terms().begin()->second.get_den() == 1;
        if (simple && denominator) {
            const auto& [m, c] = *p.terms().begin();
            simple = c == 1 && std::popcount(m.support()) == 1;
        }
        return simple ? p.str() : "(" + p.str() + ")";
    }
    void normalize() {
        const RingPtr& r = c_.ring();
        if (b_.is_zero()) {
            c_ = Polynomial(r, 1);
            return;
        }
        std::optional<Monomial> g;
        for (const auto* p : {&b_, &c_})
            for (const auto& [m, c] : p->terms()) g = g ? gcd(*g, m) : m;
        if (!g->is_one()) {
            Monomial inv(r->size());
            for (std::size_t i = 0; i < inv.size(); ++i) inv.set(i, -(*g)[i]);
            b_ = b_.shift(inv);
            c_ = c_.shift(inv);
        }
        if (!c_.is_constant())
            if (auto q = divide_exact(b_, c_)) {
                b_ = *q;
                c_ = Polynomial(r, 1);
            }
        Rational lc = c_.leading_coefficient();
        b_ *= Rational(1) / lc;
        c_ *= Rational(1) / lc;
    }

    Polynomial b_, c_;
};

/// b1/c1 = b2/c2 (modulo I when given).
inline bool same_fraction(const DElement& d1, const DElement& d2, const Ideal* modulo = nullptr) {
    Polynomial diff = d1.numerator() * d2.denominator() - d2.numerator() * d1.denominator();
    return detail::reduce(diff, modulo).is_zero();
}

struct DIdentities {
    bool sigma = false;    // sigma(d) = lambda d
    bool delta = false;    // delta(d) = -lambda d^2
    bool bracket = false;  // {d, g} = sigma(g) d + delta(g) for generators g of A
    bool pass() const { return sigma && delta && bracket; }
};

/// The identities of a d-element, cross-multiplied into polynomial identities
/// (reduced modulo I when given).
inline DIdentities check_d_identities(const LevelData& L, const DElement& d, const Ideal* modulo = nullptr) {
    modulo = detail::nonzero(modulo);
    const Polynomial& b = d.numerator();
    const Polynomial& c = d.denominator();
    auto zero = [&](const Polynomial& p) { return detail::reduce(p, modulo).is_zero(); };
    DIdentities out;
    out.sigma = zero(L.sigma(b) * c - b * L.sigma(c) - L.lambda * b * c);
    out.delta = zero(L.delta(b) * c - b * L.delta(c) + L.lambda * b * b);
    out.bracket = true;
    for (std::size_t g : L.base_generators()) {
        Polynomial x = Polynomial::variable(L.ring, g);
        Polynomial e = bracket(L.table, b, x) * c - b * bracket(L.table, c, x) - *L.sigma.image(g) * b * c -
                       *L.delta.image(g) * c * c;
        if (!zero(e)) {
            out.bracket = false;
            break;
        }
    }
    return out;
}

struct DFromNormal {
    DElement d;
    DIdentities identities;
};

/// d = delta(a) / (lambda s a).
inline DFromNormal d_element_from_normal(const LevelData& L, const Polynomial& a, int s) {
    detail::require_base_element(L, a);
    L.require_lambda();
    if (s <= 0) throw DomainError("no d-element from an element with s = 0");
    if (s != s_max(L, a)) throw DomainError("s does not equal s_max(a)");
    if (!is_homogeneous(L.grading, a) || !is_poisson_normal(L.table, a, L.base_generators()).normal)
        throw DomainError(a.str() + " is not a homogeneous Poisson-normal element of A");
    DElement d(L.delta(a), L.lambda * Rational(s) * a);
    return {d, check_d_identities(L, d)};
}

struct DSearch {
    std::optional<DElement> d;
    DIdentities identities;
    bool unique = true;  // the linear system had a single solution for the accepted denominator
    std::size_t denominators_tried = 0;
};

namespace detail {

inline void monomials_up_to(std::size_t nvars, std::size_t used, int budget, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
    if (used == nvars) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= budget; ++e) {
        cur[used] = e;
        monomials_up_to(nvars, used + 1, budget - e, cur, out);
    }
    cur[used] = 0;
}

/// Monomials of A of the given weight and total degree <= max_degree that are
/// standard for the grevlex basis of I.
inline std::vector<Monomial> standard_monomials(const LevelData& L, const Weight& w, int max_degree, const Ideal* I) {
    std::vector<std::vector<int>> raw;
    std::vector<int> cur(L.k - 1, 0);
    monomials_up_to(L.k - 1, 0, max_degree, cur, raw);
    std::vector<Monomial> leads;
    if (I) leads = I->basis().leading_monomials();
    std::vector<Monomial> out;
    for (auto& e : raw) {
        e.resize(L.ring->size(), 0);
        Monomial m(e);
        if (L.grading.weight_of(m) != w) continue;
        if (std::any_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); })) continue;
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace detail

/// Search for d = b/c over A/Q: denominators c are products of at most
/// `degree_bound` normal homogeneous elements (generators of A that are
/// Poisson-normal modulo Q, plus `extra_normals`); for each c the conditions
/// {b,g}c - b{c,g} = sigma(g)bc + delta(g)c^2 and sigma(b)c - b sigma(c) = lambda bc
/// (mod Q) are solved as a linear system in the coefficients of b.
inline DSearch d_element_search(const LevelData& L, const Ideal& modulo_in, int degree_bound,
                                const std::vector<Polynomial>& extra_normals = {}) {
    L.require_lambda();
    Ideal modulo = detail::lift_to(L, modulo_in);
    const Ideal* Q = detail::nonzero(&modulo);
    auto gens = L.base_generators();
    DSearch out;
    if (modulo.is_unit()) return out;

    std::vector<Polynomial> atoms;
    for (std::size_t j : gens) {
        Polynomial x = Polynomial::variable(L.ring, j);
        if (Q && Q->contains(x)) continue;
        if (is_poisson_normal(L.table, x, gens, Q).normal) atoms.push_back(x);
    }
    for (const auto& e : extra_normals) {
        Polynomial p = rebase(e, L.ring);
        detail::require_base_element(L, p);
        if (!p.is_constant() && is_homogeneous(L.grading, p) && !(Q && Q->contains(p))) atoms.push_back(p);
    }

    // Denominators by number of factors, each product listed once.
    std::vector<Polynomial> dens{Polynomial(L.ring, 1)};
    std::vector<std::vector<std::size_t>> frontier{{}};
    for (int f = 1; f <= degree_bound; ++f) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& seq : frontier)
            for (std::size_t i = seq.empty() ? 0 : seq.back(); i < atoms.size(); ++i) {
                auto s = seq;
                s.push_back(i);
                next.push_back(std::move(s));
            }
        for (const auto& seq : next) {
            Polynomial c(L.ring, 1);
            for (auto i : seq) c *= atoms[i];
            if (std::find(dens.begin(), dens.end(), c) == dens.end()) dens.push_back(std::move(c));
        }
        frontier = std::move(next);
    }

    const Weight wx = L.grading.weights[L.top()];
    for (const auto& c : dens) {
        if (Q && Q->contains(c)) continue;
        ++out.denominators_tried;
        auto wc = weight_of(L.grading, c);
        if (!wc) continue;
        auto basis = detail::standard_monomials(L, wx + *wc, c.total_degree() + degree_bound, Q);

        // Each constraint is an affine polynomial identity; its coefficients
        // on the standard monomials give linear equations.
        std::vector<std::map<Monomial, RationalVector>> blocks;
        std::vector<std::map<Monomial, Rational>> rhs;
        auto add_constraint = [&](auto&& image_of, const Polynomial& constant) {
            std::map<Monomial, RationalVector> rows;
            for (std::size_t u = 0; u < basis.size(); ++u) {
                Polynomial img = detail::reduce(image_of(Polynomial(L.ring, basis[u], 1)), Q);
                for (const auto& [m, coef] : img.terms()) {
                    auto& row = rows[m];
                    if (row.empty()) row.assign(basis.size(), Rational(0));
                    row[u] = coef;
                }
            }
            std::map<Monomial, Rational> r;
            const Polynomial reduced = detail::reduce(constant, Q);
            for (const auto& [m, coef] : reduced.terms()) {
                r[m] = coef;
                if (!rows.count(m)) rows[m].assign(basis.size(), Rational(0));
            }
            blocks.push_back(std::move(rows));
            rhs.push_back(std::move(r));
        };
        for (std::size_t g : gens) {
            Polynomial x = Polynomial::variable(L.ring, g);
            Polynomial cg = bracket(L.table, c, x);
            const Polynomial& sg = *L.sigma.image(g);
            add_constraint([&](const Polynomial& m) { return bracket(L.table, m, x) * c - m * cg - sg * m * c; },
                           *L.delta.image(g) * c * c);
        }
        Polynomial sc = L.sigma(c);
        add_constraint([&](const Polynomial& m) { return L.sigma(m) * c - m * sc - L.lambda * m * c; }, Polynomial(L.ring));

        RationalMatrix A;
        RationalVector bvec;
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (auto& [m, row] : blocks[i]) {
                A.push_back(row);
                auto it = rhs[i].find(m);
                bvec.push_back(it == rhs[i].end() ? Rational(0) : it->second);
            }
        auto sol = solve_affine(A, bvec, basis.size());
        if (!sol) continue;
        Polynomial b(L.ring);
        for (std::size_t u = 0; u < basis.size(); ++u)
            if (sol->particular[u] != 0) b += Polynomial(L.ring, basis[u], sol->particular[u]);
        DElement d(b, c);
        DIdentities ids = check_d_identities(L, d, Q);
        if (!ids.pass()) continue;
        out.d = d;
        out.identities = ids;
        out.unique = sol->kernel.empty();
        return out;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Lifts of H-primes

struct LiftChecks {
    bool poisson = false;
    bool h_stable = false;
    bool contracts = false;
    bool pass() const { return poisson && h_stable && contracts; }
};

inline LiftChecks check_lift(const LevelData& L, const Ideal& I, const Ideal& base) {
    LiftChecks c;
    c.poisson = is_poisson_ideal(L.table, I);
    c.h_stable = is_h_stable(L.grading, I);
    c.contracts = eliminate(I, L.base_generators()) == detail::lift_to(L, base);
    return c;
}

struct SecondLift {
    Ideal ideal;
    LiftChecks checks;
};

/// (<cX - b> + P0 R) : c^infinity.
inline SecondLift second_lift(const LevelData& L, const Ideal& P0, const DElement& d) {
    Ideal base = detail::lift_to(L, P0);
    const Polynomial& b = d.numerator();
    const Polynomial& c = d.denominator();
    if (!base.is_zero() && base.contains(c)) throw DomainError("denominator of d lies in the base ideal");
    Ideal I = base.with({c * L.X() - b});
    if (!c.is_constant()) I = saturate(I, c);
    if (I.is_unit()) throw DomainError("saturation produced the unit ideal; d is not valid over this base");
    return {I, check_lift(L, I, base)};
}

enum class Branch { root, induced, second };

inline const char* to_string(Branch b) {
    switch (b) {
    case Branch::root: return "root";
    case Branch::induced: return "induced";
    case Branch::second: return "second";
    }
    return "";
}

struct HPrimeNode {
    std::size_t level = 0;
    Ideal ideal;
    std::optional<std::size_t> parent;  // index in the previous level
    Branch branch = Branch::root;
    std::optional<DElement> d;
    LiftChecks checks;
    Primality primality = Primality::verified;
    bool possibly_missing_branch = false;  // d-search for this base came back empty
};

struct HPrimeTree {
    std::vector<std::vector<HPrimeNode>> levels;  // levels[k]: Poisson H-primes of R_k

    const std::vector<HPrimeNode>& top() const { return levels.back(); }
    bool complete() const {
        for (const auto& lv : levels)
            for (const auto& n : lv)
                if (n.possibly_missing_branch) return false;
        return true;
    }
    bool all_checks_pass() const {
        for (std::size_t k = 1; k < levels.size(); ++k)
            for (const auto& n : levels[k])
                if (!n.checks.pass()) return false;
        return true;
    }
};

inline bool is_delta_stable(const LevelData& L, const Ideal& base) {
    Ideal lifted = detail::lift_to(L, base);
    for (const auto& g : base.basis_polynomials())
        if (!lifted.contains(L.delta(rebase(g, L.ring)))) return false;
    return true;
}

/// Level-by-level recursion from the zero ideal of K: every delta_k-stable
/// node Q of R_{k-1} lifts to R_k Q, and to a second ideal when a d-element
/// over A/Q is found.
inline HPrimeTree enumerate_hprimes(const PoissonPresentation& p, int degree_bound) {
    HPrimeTree tree;
    RingPtr r0 = p.ring()->prefix(0);
    HPrimeNode root{0, Ideal::zero(r0, p.groebner_options()), std::nullopt, Branch::root, std::nullopt, {true, true, true},
                    Primality::verified, false};
    tree.levels.push_back({root});
    for (std::size_t k = 1; k <= p.size(); ++k) {
        LevelData L = level_data(p, k);
        L.require_lambda();
        std::vector<HPrimeNode> next;
        const auto& prev = tree.levels.back();
        for (std::size_t i = 0; i < prev.size(); ++i) {
            const Ideal& base = prev[i].ideal;
            if (!is_delta_stable(L, base)) continue;
            Ideal induced = detail::lift_to(L, base);
            HPrimeNode in{k, induced, i, Branch::induced, std::nullopt, check_lift(L, induced, base), primality_tag(induced), false};
            auto search = d_element_search(L, induced, degree_bound);
            if (!search.d) {
                in.possibly_missing_branch = true;
                next.push_back(std::move(in));
                continue;
            }
            auto lift = second_lift(L, induced, *search.d);
            next.push_back(std::move(in));
            next.push_back({k, lift.ideal, i, Branch::second, search.d, lift.checks, primality_tag(lift.ideal), false});
        }
        tree.levels.push_back(std::move(next));
    }
    return tree;
}

/// Immediate-inclusion edges (i, j) meaning I_i < I_j with nothing in between.
inline std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<HPrimeNode>& nodes) {
    const std::size_t n = nodes.size();
    std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && nodes[j].ideal.contains(nodes[i].ideal) && !nodes[i].ideal.contains(nodes[j].ideal)) lt[i][j] = true;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!lt[i][j]) continue;
            bool cover = true;
            for (std::size_t m = 0; m < n && cover; ++m) cover = !(lt[i][m] && lt[m][j]);
            if (cover) edges.emplace_back(i, j);
        }
    return edges;
}

// ---------------------------------------------------------------------------
// Separation

struct Separation {
    std::optional<Polynomial> u;  // nullopt: inconclusive
    std::string route;
    std::optional<NormalityResult> certificate;
};

/// {a in A : aX + e in I for some e in A}, read from a basis of I for an
/// order with X in its own leading block.
inline Ideal j_ideal(const LevelData& L, const Ideal& I) {
    auto gb = groebner(L.ring, I.generators(), MonomialOrder::elimination(L.ring->size(), {L.top()}), I.options());
    std::vector<Polynomial> gens;
    for (const auto& g : gb.polynomials()) {
        int deg = g.degree_in(L.top());
        if (deg == 0) {
            gens.push_back(g);
        } else if (deg == 1) {
            Polynomial a(L.ring);
            for (const auto& [m, c] : g.terms())
                if (m[L.top()] == 1) {
                    Monomial q = m;
                    q.set(L.top(), 0);
                    a += Polynomial(L.ring, q, c);
                }
            gens.push_back(a);
        }
    }
    return Ideal(L.ring, gens, I.options());
}

/// A Poisson-normal homogeneous u of R/P lying in Q/P, for Poisson H-primes
/// P < Q of the top level, following the case split on P and Q meeting A.
inline Separation separating_normal(const PoissonPresentation& p, const Ideal& P, const Ideal& Q, int degree_bound) {
    if (!same_ring(P.ring(), p.ring()) || !same_ring(Q.ring(), p.ring())) throw ContextMismatch();
    if (!Q.contains(P) || P.contains(Q)) throw DomainError("separation needs a strict inclusion P < Q");
    if (p.size() == 0) throw DomainError("no generators");
    LevelData L = level_data(p, p.size());
    L.require_lambda();
    auto base = L.base_generators();
    Ideal P0 = eliminate(P, base);
    Ideal Q0 = eliminate(Q, base);
    const Ideal* mod0 = detail::nonzero(&P0);

    auto normal_mod_p0 = [&](const Polynomial& a) {
        if (a.is_zero() || P0.contains(a) || !is_homogeneous(L.grading, a)) return false;
        if (a.is_constant()) return true;
        return is_poisson_normal(L.table, a, base, mod0).normal;
    };
    // Products of normal atoms that land in I but not in P0.
    auto find_in = [&](const Ideal& I) -> std::optional<Polynomial> {
        if (I.is_unit()) return Polynomial(L.ring, 1);
        std::vector<Polynomial> atoms;
        auto consider = [&](const Polynomial& a) {
            if (std::find(atoms.begin(), atoms.end(), a) == atoms.end() && normal_mod_p0(a)) atoms.push_back(a);
        };
        for (const auto& g : I.basis_polynomials()) consider(g);
        for (std::size_t j : base) consider(Polynomial::variable(L.ring, j));
        for (const auto& g : Q0.basis_polynomials()) consider(g);
        std::vector<std::pair<Polynomial, std::size_t>> layer{{Polynomial(L.ring, 1), 0}};
        for (int f = 1; f <= std::max(1, degree_bound); ++f) {
            std::vector<std::pair<Polynomial, std::size_t>> next;
            for (const auto& [prod, from] : layer)
                for (std::size_t i = from; i < atoms.size(); ++i) {
                    Polynomial c = prod * atoms[i];
                    if (I.contains(c) && !P0.contains(c)) return c;
                    next.emplace_back(std::move(c), i);
                }
            layer = std::move(next);
        }
        return std::nullopt;
    };
    auto theta_lift = [&](const Polynomial& a) {
        int s = s_max(L, a, mod0);
        return rebase(times_x_power(L, theta(L, a, mod0), s), L.ring);
    };

    Separation out;
    std::optional<Polynomial> u;
    if (P == P0) {
        if (!(Q0 == P0)) {
            if (auto a = find_in(Q0)) {
                u = theta_lift(*a);
                out.route = "theta-lift of a normal element of Q meeting A";
            }
        } else if (auto a = find_in(j_ideal(L, Q))) {
            if (s_max(L, *a, mod0) > 0) {
                u = theta_lift(*a);
                out.route = "theta-lift of a normal leading coefficient of Q";
            } else {
                u = L.X();
                out.route = "top generator";
            }
        }
    } else if (auto a = find_in(intersect(j_ideal(L, P), Q0))) {
        u = *a;
        out.route = "normal leading coefficient of P inside Q";
    }
    if (!u) {
        out.route = "inconclusive: no candidate within the search bound";
        return out;
    }
    const Ideal* modP = detail::nonzero(&P);
    if (!Q.contains(*u) || P.contains(*u) || !is_homogeneous(L.grading, *u)) {
        out.route = "inconclusive: candidate " + u->str() + " failed validation";
        return out;
    }
    auto cert = is_poisson_normal(L.table, *u, modP);
    if (!cert.normal) {
        out.route = "inconclusive: candidate " + u->str() + " is not Poisson-normal modulo P";
        return out;
    }
    out.u = u;
    out.certificate = std::move(cert);
    return out;
}

// ---------------------------------------------------------------------------
// Iterated deletion

struct DeletionStep {
    std::size_t k;
    std::vector<Rational> eigenvalues;
    ThetaReport theta;
};

struct Deletion {
    PoissonPresentation result;
    std::vector<DeletionStep> steps;
    bool pass() const {
        return std::all_of(steps.begin(), steps.end(), [](const DeletionStep& s) { return s.theta.pass(); });
    }
};

/// Deleting derivations from the top level down: the result has
/// {x_k, x_j} = mu_kj x_j x_k, mu_kj the sigma_k-eigenvalue of x_j; each
/// step's theta identities are checked on `samples` random pairs.
inline Deletion delete_all(const PoissonPresentation& p, int samples = 20, std::uint64_t seed = 1) {
    BracketTable t(p.ring());
    std::vector<DeletionStep> steps;
    for (std::size_t k = p.size(); k >= 2; --k) {
        LevelData L = level_data(p, k);
        if (!L.sigma_diagonal) throw DomainError("sigma_" + std::to_string(k) + " is not diagonal");
        L.require_lambda();
        steps.push_back({k, L.sigma_eigenvalues, check_theta(L, samples, seed + k)});
        for (std::size_t j = 0; j + 1 < k; ++j)
            if (L.sigma_eigenvalues[j] != 0) t.set(k - 1, j, L.sigma_eigenvalues[j] * p.var(j) * p.var(k - 1));
    }
    return {PoissonPresentation(p.ring(), std::move(t), p.grading(), p.h(), p.bounds()), std::move(steps)};
}

}  // namespace pcgl
