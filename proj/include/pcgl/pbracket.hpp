#pragma once

// Poisson brackets determined by a generator table, and the axiom checks
// (Jacobi, Poisson derivations, the sigma-derivation condition, normality).

#include "groebner.hpp"
#include "qpoly.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace pcgl {

/// {x_i, x_j} for i > j; the remaining entries follow from antisymmetry.
class BracketTable {
public:
    explicit BracketTable(RingPtr ring) : ring_(std::move(ring)) {}

    const RingPtr& ring() const { return ring_; }
    const std::map<std::pair<std::size_t, std::size_t>, Polynomial>& entries() const { return entries_; }

    void set(std::size_t i, std::size_t j, const Polynomial& value) {
        if (!same_ring(value.ring(), ring_)) throw ContextMismatch();
        if (i >= ring_->size() || j >= ring_->size()) throw InputError("bracket index out of range");
        if (i == j) {
            if (!value.is_zero()) throw InputError("{x,x} must vanish");
            return;
        }
        auto key = i > j ? std::pair{i, j} : std::pair{j, i};
        Polynomial v = i > j ? value : -value;
        if (v.is_zero()) {
            entries_.erase(key);
        } else {
            entries_.insert_or_assign(key, std::move(v));
        }
    }

    Polynomial entry(std::size_t i, std::size_t j) const {
        if (i == j) return Polynomial(ring_);
        auto it = entries_.find(i > j ? std::pair{i, j} : std::pair{j, i});
        if (it == entries_.end()) return Polynomial(ring_);
        return i > j ? it->second : -it->second;
    }

    bool is_abelian() const { return entries_.empty(); }

    BracketTable rebase(const RingPtr& target) const {
        BracketTable t(target);
        for (const auto& [k, v] : entries_) {
            auto i = target->index_of(ring_->name(k.first));
            auto j = target->index_of(ring_->name(k.second));
            if (!i || !j) throw DomainError("bracket variable missing from target ring");
            t.set(*i, *j, pcgl::rebase(v, target));
        }
        return t;
    }

private:
    RingPtr ring_;
    std::map<std::pair<std::size_t, std::size_t>, Polynomial> entries_;
};

/// {f, g} = sum_{i>j} {x_i,x_j} (d_i f d_j g - d_j f d_i g).
inline Polynomial bracket(const BracketTable& b, const Polynomial& f, const Polynomial& g) {
    if (!same_ring(f.ring(), b.ring()) || !same_ring(g.ring(), b.ring())) throw ContextMismatch();
    Polynomial r(b.ring());
    if (f.is_constant() || g.is_constant()) return r;
    const std::size_t n = b.ring()->size();
    std::vector<std::optional<Polynomial>> df(n), dg(n);
    auto part = [](std::vector<std::optional<Polynomial>>& cache, const Polynomial& p, std::size_t i) -> const Polynomial& {
        if (!cache[i]) cache[i] = diff(p, i);
        return *cache[i];
    };
    const std::uint64_t sf = f.support(), sg = g.support();
    for (const auto& [key, val] : b.entries()) {
        auto [i, j] = key;
        bool fi = (sf >> i) & 1, fj = (sf >> j) & 1, gi = (sg >> i) & 1, gj = (sg >> j) & 1;
        Polynomial term(b.ring());
        if (fi && gj) term += part(df, f, i) * part(dg, g, j);
        if (fj && gi) term -= part(df, f, j) * part(dg, g, i);
        if (!term.is_zero()) r += val * term;
    }
    return r;
}

struct TripleResidual {
    std::size_t i, j, k;
    Polynomial residual;
};

struct JacobiReport {
    bool pass = true;
    std::vector<TripleResidual> failures;
};

/// Jacobiator on generator triples i > j > k among the first `upto` generators.
inline JacobiReport check_jacobi(const BracketTable& b, std::optional<std::size_t> upto = std::nullopt) {
    const std::size_t n = upto.value_or(b.ring()->size());
    JacobiReport rep;
    std::vector<Polynomial> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(Polynomial::variable(b.ring(), i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (std::size_t k = 0; k < j; ++k) {
                Polynomial jac = bracket(b, x[i], b.entry(j, k)) + bracket(b, x[j], b.entry(k, i)) +
                                 bracket(b, x[k], b.entry(i, j));
                if (!jac.is_zero()) {
                    rep.pass = false;
                    rep.failures.push_back({i, j, k, std::move(jac)});
                }
            }
    return rep;
}

struct PairResidual {
    std::size_t i, j;
    Polynomial residual;
};

struct IdentityReport {
    bool pass = true;
    std::vector<PairResidual> failures;
};

/// sigma({x_i,x_j}) = {sigma x_i, x_j} + {x_i, sigma x_j} on generator pairs.
inline IdentityReport check_poisson_derivation(const BracketTable& b, const Derivation& s,
                                               std::optional<std::size_t> upto = std::nullopt) {
    const std::size_t n = upto.value_or(b.ring()->size());
    IdentityReport rep;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Polynomial xi = Polynomial::variable(b.ring(), i), xj = Polynomial::variable(b.ring(), j);
            Polynomial res = s(b.entry(i, j)) - bracket(b, s(xi), xj) - bracket(b, xi, s(xj));
            if (!res.is_zero()) {
                rep.pass = false;
                rep.failures.push_back({i, j, std::move(res)});
            }
        }
    return rep;
}

/// delta({a,b}) = {delta a, b} + {a, delta b} + sigma(a) delta(b) - delta(a) sigma(b)
/// on generator pairs of the subalgebra on the first `upto` generators.
inline IdentityReport check_delta_condition(const BracketTable& b, const Derivation& sigma, const Derivation& delta,
                                            std::optional<std::size_t> upto = std::nullopt) {
    const std::size_t n = upto.value_or(b.ring()->size());
    IdentityReport rep;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            Polynomial xi = Polynomial::variable(b.ring(), i), xj = Polynomial::variable(b.ring(), j);
            Polynomial di = delta(xi), dj = delta(xj);
            Polynomial res = delta(b.entry(i, j)) - bracket(b, di, xj) - bracket(b, xi, dj) - sigma(xi) * dj + di * sigma(xj);
            if (!res.is_zero()) {
                rep.pass = false;
                rep.failures.push_back({i, j, std::move(res)});
            }
        }
    return rep;
}

struct NormalityResult {
    bool normal = true;
    /// quotients[i]: s_i with {c, x_i} = s_i c (mod the ideal, if any), for
    /// each tested generator in order.
    std::vector<std::optional<Polynomial>> quotients;
    std::optional<std::size_t> failing_generator;
};

/// Poisson-normality of c, tested against the listed generators, optionally in
/// the quotient by `modulo`.
inline NormalityResult is_poisson_normal(const BracketTable& b, const Polynomial& c, const std::vector<std::size_t>& gens,
                                         const Ideal* modulo = nullptr) {
    if (c.is_zero()) throw DomainError("Poisson-normality of the zero element");
    if (modulo && modulo->contains(c)) throw DomainError("element lies in the ideal it is tested modulo");
    NormalityResult out;
    std::vector<Polynomial> lift_gens;
    if (modulo) {
        lift_gens.push_back(c);
        for (const auto& g : modulo->generators()) lift_gens.push_back(g);
    }
    for (std::size_t i : gens) {
        Polynomial br = bracket(b, c, Polynomial::variable(b.ring(), i));
        std::optional<Polynomial> q;
        if (!modulo) {
            q = divide_exact(br, c);
        } else if (auto cof = lift(b.ring(), lift_gens, br, modulo->options())) {
            q = modulo->normal_form((*cof)[0]);
        }
        if (!q) {
            out.normal = false;
            if (!out.failing_generator) out.failing_generator = i;
        }
        out.quotients.push_back(std::move(q));
    }
    return out;
}

inline NormalityResult is_poisson_normal(const BracketTable& b, const Polynomial& c, const Ideal* modulo = nullptr) {
    return is_poisson_normal(b, c, first_indices(b.ring()->size()), modulo);
}

/// True iff {x_i, g} lies in I for every tested generator and every basis
/// element g of I.
inline bool is_poisson_ideal(const BracketTable& b, const Ideal& I, std::optional<std::size_t> upto = std::nullopt) {
    const std::size_t n = upto.value_or(b.ring()->size());
    for (const auto& g : I.basis_polynomials())
        for (std::size_t i = 0; i < n; ++i)
            if (!I.contains(bracket(b, Polynomial::variable(b.ring(), i), g))) return false;
    return true;
}

}  // namespace pcgl
