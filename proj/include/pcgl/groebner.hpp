#pragma once

// Buchberger's algorithm over Q (sugar selection, Gebauer-Moeller pair
// criteria) and the ideal operations built on it.

#include "qpoly.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pcgl {

/// Block order: blocks compared in sequence, each by grevlex on its own
/// variables listed from most to least significant. Single-variable blocks
/// give lex.
class MonomialOrder {
public:
    MonomialOrder() = default;
    explicit MonomialOrder(std::vector<std::vector<std::size_t>> blocks) : blocks_(std::move(blocks)) {}

    static MonomialOrder grevlex(std::size_t n) { return MonomialOrder({first_indices(n)}); }
    static MonomialOrder lex(std::size_t n) { return lex(first_indices(n)); }
    static MonomialOrder lex(const std::vector<std::size_t>& priority) {
        std::vector<std::vector<std::size_t>> b;
        for (std::size_t v : priority) b.push_back({v});
        return MonomialOrder(std::move(b));
    }
    /// Variables in `eliminate` dominate all others; grevlex inside each block.
    static MonomialOrder elimination(std::size_t n, const std::vector<std::size_t>& eliminate) {
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < n; ++i)
            if (std::find(eliminate.begin(), eliminate.end(), i) == eliminate.end()) rest.push_back(i);
        std::vector<std::vector<std::size_t>> b;
        if (!eliminate.empty()) b.push_back(eliminate);
        if (!rest.empty()) b.push_back(rest);
        return MonomialOrder(std::move(b));
    }

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
        for (const auto& block : blocks_) {
            int da = 0, db = 0;
            for (std::size_t v : block) {
                da += a[v];
                db += b[v];
            }
            if (da != db) return da <=> db;
            for (std::size_t k = block.size(); k-- > 0;) {
                std::size_t v = block[k];
                if (a[v] != b[v]) return b[v] <=> a[v];
            }
        }
        return std::strong_ordering::equal;
    }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    bool operator==(const MonomialOrder&) const = default;

private:
    std::vector<std::vector<std::size_t>> blocks_;
};

class GroebnerBudgetExceeded : public Error {
public:
    explicit GroebnerBudgetExceeded(long steps)
        : Error("Groebner computation exceeded its budget of " + std::to_string(steps) +
                " reduction steps; rerun with a larger budget") {}
};

struct GroebnerOptions {
    long max_steps = 1'000'000;
};

namespace detail {

struct Term {
    Monomial mono;
    Rational coef;
};
using TermVec = std::vector<Term>;  // sorted descending in the active order

inline TermVec to_termvec(const Polynomial& p, const MonomialOrder& ord) {
    TermVec v;
    v.reserve(p.size());
    for (const auto& [m, c] : p.terms()) v.push_back({m, c});
    std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return ord.greater(a.mono, b.mono); });
    return v;
}

inline Polynomial to_polynomial(const TermVec& v, const RingPtr& ring) {
    Polynomial::TermMap m;
    for (const auto& t : v) m.emplace(t.mono, t.coef);
    return Polynomial::from_terms(ring, std::move(m));
}

/// f[from:] - c * x^m * g, merged in order.
inline TermVec sub_mul(const TermVec& f, std::size_t from, const Rational& c, const Monomial& m, const TermVec& g,
                       const MonomialOrder& ord) {
    TermVec out;
    out.reserve(f.size() - from + g.size());
    std::size_t i = from, j = 0;
    while (i < f.size() || j < g.size()) {
        if (j == g.size()) {
            out.push_back(f[i++]);
            continue;
        }
        Monomial gm = g[j].mono * m;
        if (i == f.size()) {
            out.push_back({std::move(gm), -c * g[j].coef});
            ++j;
            continue;
        }
        auto cmp = ord.compare(f[i].mono, gm);
        if (cmp > 0) {
            out.push_back(f[i++]);
        } else if (cmp < 0) {
            out.push_back({std::move(gm), -c * g[j].coef});
            ++j;
        } else {
            Rational v = f[i].coef - c * g[j].coef;
            if (v != 0) out.push_back({std::move(gm), std::move(v)});
            ++i;
            ++j;
        }
    }
    return out;
}

inline void scale(TermVec& f, const Rational& c) {
    for (auto& t : f) t.coef *= c;
}

inline TermVec mul_term(const TermVec& f, const Rational& c, const Monomial& m) {
    TermVec out;
    out.reserve(f.size());
    for (const auto& t : f) out.push_back({t.mono * m, t.coef * c});
    return out;
}

struct GbElement {
    TermVec poly;
    int sugar = 0;
    std::vector<TermVec> cofactors;  // empty unless tracking
};

struct Pair {
    std::size_t i, j;
    Monomial lcm;
    int sugar;
};

class Engine {
public:
    Engine(const MonomialOrder& ord, std::size_t nvars, std::size_t ngens, bool track, long budget)
        : ord_(ord), nvars_(nvars), ngens_(ngens), track_(track), budget_(budget) {}

    /// Full reduction of `e` by the active basis; records quotients in the
    /// cofactors when tracking.
    void reduce(GbElement& e) {
        TermVec rem;
        TermVec p = std::move(e.poly);
        std::size_t head = 0;
        while (head < p.size()) {
            const Term& lt = p[head];
            const GbElement* div = nullptr;
            for (std::size_t k : active_) {
                if (elems_[k].poly.front().mono.divides(lt.mono)) {
                    div = &elems_[k];
                    break;
                }
            }
            if (!div) {
                rem.push_back(lt);
                ++head;
                continue;
            }
            if (++steps_ > budget_) throw GroebnerBudgetExceeded(budget_);
            Rational c = lt.coef / div->poly.front().coef;
            Monomial m = lt.mono / div->poly.front().mono;
            if (track_)
                for (std::size_t g = 0; g < ngens_; ++g)
                    e.cofactors[g] = sub_mul(e.cofactors[g], 0, c, m, div->cofactors[g], ord_);
            e.sugar = std::max(e.sugar, div->sugar + m.degree());
            p = sub_mul(p, head, c, m, div->poly, ord_);
            head = 0;
        }
        e.poly = std::move(rem);
    }

    void make_monic(GbElement& e) {
        if (e.poly.empty()) return;
        Rational inv = 1 / e.poly.front().coef;
        scale(e.poly, inv);
        for (auto& cf : e.cofactors) scale(cf, inv);
    }

    void add_generator(const TermVec& f, std::size_t index) {
        GbElement e;
        e.poly = f;
        e.sugar = 0;
        for (const auto& t : f) e.sugar = std::max(e.sugar, t.mono.degree());
        if (track_) {
            e.cofactors.assign(ngens_, TermVec{});
            e.cofactors[index].push_back({Monomial(nvars_), Rational(1)});
        }
        reduce(e);
        if (e.poly.empty()) return;
        make_monic(e);
        insert(std::move(e));
    }

    void run() {
        while (!pairs_.empty()) {
            auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
                if (a.sugar != b.sugar) return a.sugar < b.sugar;
                return ord_.compare(a.lcm, b.lcm) < 0;
            });
            Pair p = *best;
            pairs_.erase(best);
            GbElement s = spoly(p);
            reduce(s);
            if (s.poly.empty()) continue;
            make_monic(s);
            insert(std::move(s));
        }
    }

    /// Reduced basis (monic, tails interreduced), sorted by ascending leading
    /// monomial.
    std::vector<GbElement> reduced_basis() {
        std::vector<std::size_t> idx = active_;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return ord_.compare(elems_[a].poly.front().mono, elems_[b].poly.front().mono) < 0;
        });
        std::vector<GbElement> out;
        for (std::size_t k : idx) {
            const GbElement& e = elems_[k];
            // Leading terms of a minimal basis are pairwise non-divisible, so
            // only the tail needs reducing.
            GbElement tail;
            tail.poly.assign(e.poly.begin() + 1, e.poly.end());
            tail.sugar = e.sugar;
            tail.cofactors = e.cofactors;
            reduce(tail);
            GbElement r;
            r.sugar = e.sugar;
            r.poly.push_back(e.poly.front());
            r.poly.insert(r.poly.end(), tail.poly.begin(), tail.poly.end());
            r.cofactors = std::move(tail.cofactors);
            out.push_back(std::move(r));
        }
        return out;
    }

    long steps() const { return steps_; }

private:
    GbElement spoly(const Pair& p) {
        // Basis elements are monic, so the leading terms cancel exactly.
        const GbElement& a = elems_[p.i];
        const GbElement& b = elems_[p.j];
        Monomial ma = p.lcm / a.poly.front().mono;
        Monomial mb = p.lcm / b.poly.front().mono;
        static const Rational one(1);
        GbElement s;
        s.sugar = p.sugar;
        s.poly = sub_mul(mul_term(a.poly, one, ma), 0, one, mb, b.poly, ord_);
        if (track_) {
            s.cofactors.resize(ngens_);
            for (std::size_t g = 0; g < ngens_; ++g)
                s.cofactors[g] = sub_mul(mul_term(a.cofactors[g], one, ma), 0, one, mb, b.cofactors[g], ord_);
        }
        return s;
    }

    void insert(GbElement h) {
        const std::size_t hi = elems_.size();
        const Monomial hm = h.poly.front().mono;
        elems_.push_back(std::move(h));
        const int hs = elems_[hi].sugar;
        auto pair_sugar = [&](std::size_t g, const Monomial& l) {
            return std::max(elems_[g].sugar + (l / elems_[g].poly.front().mono).degree(), hs + (l / hm).degree());
        };
        // Gebauer-Moeller update.
        std::vector<Pair> c;
        for (std::size_t g : active_) {
            Monomial l = lcm(elems_[g].poly.front().mono, hm);
            c.push_back({g, hi, l, pair_sugar(g, l)});
        }
        std::vector<Pair> d;
        for (std::size_t k = 0; k < c.size(); ++k) {
            const Pair& p = c[k];
            bool copr = elems_[p.i].poly.front().mono.coprime(hm);
            bool dominated = false;
            if (!copr) {
                for (std::size_t q = k + 1; q < c.size() && !dominated; ++q)
                    if (c[q].lcm.divides(p.lcm)) dominated = true;
                for (const auto& q : d)
                    if (!dominated && q.lcm.divides(p.lcm)) dominated = true;
            }
            if (copr || !dominated) d.push_back(p);
        }
        std::vector<Pair> e;
        for (const auto& p : d)
            if (!elems_[p.i].poly.front().mono.coprime(hm)) e.push_back(p);
        std::vector<Pair> kept;
        for (const auto& p : pairs_) {
            bool drop = hm.divides(p.lcm) && lcm(elems_[p.i].poly.front().mono, hm) != p.lcm &&
                        lcm(elems_[p.j].poly.front().mono, hm) != p.lcm;
            if (!drop) kept.push_back(p);
        }
        for (auto& p : e) kept.push_back(std::move(p));
        pairs_ = std::move(kept);
        std::vector<std::size_t> act;
        for (std::size_t g : active_)
            if (!hm.divides(elems_[g].poly.front().mono)) act.push_back(g);
        act.push_back(hi);
        active_ = std::move(act);
    }

    MonomialOrder ord_;
    std::size_t nvars_, ngens_;
    bool track_;
    long budget_;
    long steps_ = 0;
    std::vector<GbElement> elems_;
    std::vector<std::size_t> active_;
    std::vector<Pair> pairs_;
};

}  // namespace detail

/// Reduced Groebner basis of an ideal for a fixed order.
class GroebnerBasis {
public:
    GroebnerBasis() = default;
    GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<detail::TermVec> elems)
        : ring_(std::move(ring)), order_(std::move(order)), elems_(std::move(elems)) {}

    const RingPtr& ring() const { return ring_; }
    const MonomialOrder& order() const { return order_; }
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const std::vector<detail::TermVec>& raw() const { return elems_; }

    std::vector<Polynomial> polynomials() const {
        std::vector<Polynomial> v;
        for (const auto& e : elems_) v.push_back(detail::to_polynomial(e, ring_));
        return v;
    }
    std::vector<Monomial> leading_monomials() const {
        std::vector<Monomial> v;
        for (const auto& e : elems_) v.push_back(e.front().mono);
        return v;
    }
    bool is_unit() const { return elems_.size() == 1 && elems_.front().front().mono.is_one(); }

    Polynomial normal_form(const Polynomial& f) const {
        if (!same_ring(f.ring(), ring_)) throw ContextMismatch();
        if (f.has_negative_exponents()) throw DomainError("normal form of a Laurent polynomial");
        detail::TermVec p = detail::to_termvec(f, order_);
        detail::TermVec rem;
        std::size_t head = 0;
        while (head < p.size()) {
            const detail::Term& lt = p[head];
            const detail::TermVec* div = nullptr;
            for (const auto& g : elems_)
                if (g.front().mono.divides(lt.mono)) {
                    div = &g;
                    break;
                }
            if (!div) {
                rem.push_back(lt);
                ++head;
                continue;
            }
            Rational c = lt.coef / div->front().coef;
            Monomial m = lt.mono / div->front().mono;
            p = detail::sub_mul(p, head, c, m, *div, order_);
            head = 0;
        }
        return detail::to_polynomial(rem, ring_);
    }

    bool operator==(const GroebnerBasis& o) const {
        if (!same_ring(ring_, o.ring_) || !(order_ == o.order_) || elems_.size() != o.elems_.size()) return false;
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (elems_[i].size() != o.elems_[i].size()) return false;
            for (std::size_t j = 0; j < elems_[i].size(); ++j)
                if (elems_[i][j].mono != o.elems_[i][j].mono || elems_[i][j].coef != o.elems_[i][j].coef) return false;
        }
        return true;
    }

private:
    RingPtr ring_;
    MonomialOrder order_;
    std::vector<detail::TermVec> elems_;
};

inline void require_polynomial_ring(std::span<const Polynomial> gens) {
    for (const auto& g : gens)
        if (g.has_negative_exponents()) throw DomainError("Groebner bases require polynomial (non-Laurent) input");
}

inline GroebnerBasis groebner(const RingPtr& ring, std::span<const Polynomial> gens, const MonomialOrder& order,
                              const GroebnerOptions& opts = {}) {
    require_polynomial_ring(gens);
    detail::Engine eng(order, ring->size(), gens.size(), false, opts.max_steps);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!same_ring(gens[i].ring(), ring)) throw ContextMismatch();
        if (gens[i].is_zero()) continue;
        eng.add_generator(detail::to_termvec(gens[i], order), i);
    }
    eng.run();
    std::vector<detail::TermVec> elems;
    for (auto& e : eng.reduced_basis()) elems.push_back(std::move(e.poly));
    return GroebnerBasis(ring, order, std::move(elems));
}

/// Cofactors q_i with f = sum q_i gens_i, or nullopt if f is not in the ideal.
inline std::optional<std::vector<Polynomial>> lift(const RingPtr& ring, std::span<const Polynomial> gens,
                                                   const Polynomial& f, const GroebnerOptions& opts = {}) {
    require_polynomial_ring(gens);
    const MonomialOrder order = MonomialOrder::grevlex(ring->size());
    detail::Engine eng(order, ring->size(), gens.size(), true, opts.max_steps);
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!gens[i].is_zero()) eng.add_generator(detail::to_termvec(gens[i], order), i);
    eng.run();
    detail::GbElement e;
    e.poly = detail::to_termvec(f, order);
    e.cofactors.assign(gens.size(), detail::TermVec{});
    eng.reduce(e);
    if (!e.poly.empty()) return std::nullopt;
    // reduce() accumulated -sum q_g * cof(g); negate.
    std::vector<Polynomial> out;
    for (auto& cf : e.cofactors) out.push_back(-detail::to_polynomial(cf, ring));
    return out;
}

// ---------------------------------------------------------------------------
// Ideals

class Ideal {
public:
    Ideal(RingPtr ring, std::vector<Polynomial> gens, GroebnerOptions opts = {})
        : ring_(std::move(ring)), opts_(opts) {
        for (auto& g : gens) {
            if (!same_ring(g.ring(), ring_)) throw ContextMismatch();
            if (!g.is_zero()) gens_.push_back(std::move(g));
        }
        basis_ = groebner(ring_, gens_, MonomialOrder::grevlex(ring_->size()), opts_);
    }
    static Ideal zero(const RingPtr& ring, GroebnerOptions opts = {}) { return Ideal(ring, {}, opts); }

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    const GroebnerBasis& basis() const { return basis_; }
    const GroebnerOptions& options() const { return opts_; }
    std::vector<Polynomial> basis_polynomials() const { return basis_.polynomials(); }

    bool is_zero() const { return basis_.empty(); }
    bool is_unit() const { return basis_.is_unit(); }
    Polynomial normal_form(const Polynomial& f) const { return basis_.normal_form(f); }
    bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
    bool contains(const Ideal& o) const {
        return std::all_of(o.gens_.begin(), o.gens_.end(), [&](const Polynomial& g) { return contains(g); });
    }
    bool operator==(const Ideal& o) const { return basis_ == o.basis_; }

    Ideal with(const std::vector<Polynomial>& extra) const {
        auto g = gens_;
        g.insert(g.end(), extra.begin(), extra.end());
        return Ideal(ring_, std::move(g), opts_);
    }
    Ideal rebased(const RingPtr& target) const {
        std::vector<Polynomial> g;
        for (const auto& p : gens_) g.push_back(rebase(p, target));
        return Ideal(target, std::move(g), opts_);
    }

    /// Reduced grevlex basis as canonical strings.
    std::vector<std::string> strings() const {
        std::vector<std::string> v;
        for (const auto& p : basis_.polynomials()) v.push_back(p.str());
        return v;
    }
    std::string str() const {
        auto v = strings();
        if (v.empty()) return "<0>";
        std::string s = "<";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
        return s + ">";
    }

private:
    RingPtr ring_;
    std::vector<Polynomial> gens_;
    GroebnerOptions opts_;
    GroebnerBasis basis_;
};

struct Membership {
    bool member;
    Polynomial normal_form;
};

inline Membership member(const Ideal& I, const Polynomial& f) {
    Polynomial nf = I.normal_form(f);
    bool z = nf.is_zero();
    return {z, std::move(nf)};
}

/// I ∩ K[keep], computed with an elimination order.
inline Ideal eliminate(const Ideal& I, const std::vector<std::size_t>& keep) {
    const std::size_t n = I.ring()->size();
    std::vector<std::size_t> elim;
    std::uint64_t keep_mask = 0;
    for (std::size_t k : keep) keep_mask |= std::uint64_t{1} << k;
    for (std::size_t i = 0; i < n; ++i)
        if (!((keep_mask >> i) & 1)) elim.push_back(i);
    GroebnerBasis gb = groebner(I.ring(), I.generators(), MonomialOrder::elimination(n, elim), I.options());
    std::vector<Polynomial> out;
    for (auto& p : gb.polynomials())
        if ((p.support() & ~keep_mask) == 0) out.push_back(std::move(p));
    return Ideal(I.ring(), std::move(out), I.options());
}

/// (I : f^∞) via 1 - t f and elimination of t.
inline Ideal saturate(const Ideal& I, const Polynomial& f) {
    if (f.is_zero()) throw DomainError("saturation by zero");
    if (f.is_constant()) return I;
    const RingPtr& ring = I.ring();
    RingPtr ext = ring->extended({ring->fresh_name("t_sat")});
    const std::size_t t = ring->size();
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(rebase(g, ext));
    Polynomial one(ext, Rational(1));
    gens.push_back(one - Polynomial::variable(ext, t) * rebase(f, ext));
    GroebnerBasis gb = groebner(ext, gens, MonomialOrder::elimination(ext->size(), {t}), I.options());
    std::vector<Polynomial> out;
    for (const auto& p : gb.polynomials())
        if (p.degree_in(t) == 0) out.push_back(rebase(p, ring));
    return Ideal(ring, std::move(out), I.options());
}

/// I ∩ J via t I + (1 - t) J.
inline Ideal intersect(const Ideal& I, const Ideal& J) {
    if (!same_ring(I.ring(), J.ring())) throw ContextMismatch();
    const RingPtr& ring = I.ring();
    RingPtr ext = ring->extended({ring->fresh_name("t_int")});
    const std::size_t t = ring->size();
    Polynomial tv = Polynomial::variable(ext, t);
    Polynomial one_minus_t = Polynomial(ext, Rational(1)) - tv;
    std::vector<Polynomial> gens;
    for (const auto& g : I.generators()) gens.push_back(tv * rebase(g, ext));
    for (const auto& g : J.generators()) gens.push_back(one_minus_t * rebase(g, ext));
    GroebnerBasis gb = groebner(ext, gens, MonomialOrder::elimination(ext->size(), {t}), I.options());
    std::vector<Polynomial> out;
    for (const auto& p : gb.polynomials())
        if (p.degree_in(t) == 0) out.push_back(rebase(p, ring));
    return Ideal(ring, std::move(out), I.options());
}

/// Krull dimension of R/I: the largest set of variables containing the
/// support of no leading monomial.
inline int dimension(const Ideal& I) {
    if (I.is_unit()) throw DomainError("dimension of the unit ideal");
    const std::size_t n = I.ring()->size();
    std::vector<std::uint64_t> leads;
    for (const auto& m : I.basis().leading_monomials()) leads.push_back(m.support());
    int best = 0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        int card = __builtin_popcountll(s);
        if (card <= best) continue;
        bool indep = std::none_of(leads.begin(), leads.end(), [s](std::uint64_t l) { return (l & ~s) == 0; });
        if (indep) best = card;
    }
    return best;
}

/// True iff the reduced basis consists of variables only.
inline bool is_variable_generated(const Ideal& I) {
    for (const auto& p : I.basis_polynomials())
        if (!(p.is_monomial() && p.total_degree() == 1 && p.terms().begin()->second == 1)) return false;
    return true;
}

}  // namespace pcgl
