#pragma once

// Ideal operations that use the Poisson or torus structure: Poisson closure,
// H-cores, primality tags and chain reports.

#include "cgl.hpp"
#include "grading.hpp"
#include "groebner.hpp"
#include "pbracket.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace pcgl {

inline bool is_h_stable(const GradingData& g, const Ideal& I) {
    for (const auto& p : I.basis_polynomials())
        if (!is_homogeneous(g, p)) return false;
    return true;
}

struct ClosureResult {
    Ideal ideal;
    std::vector<Polynomial> adjoined;  // in the order they were added
    int rounds = 0;
};

/// Smallest Poisson ideal containing I: adjoin nonzero normal forms of
/// {x_i, g} for basis elements g until nothing new appears.
inline ClosureResult poisson_closure(const BracketTable& b, const Ideal& I) {
    if (!same_ring(b.ring(), I.ring())) throw ContextMismatch();
    ClosureResult out{I, {}, 0};
    const std::size_t n = b.ring()->size();
    for (;;) {
        ++out.rounds;
        std::vector<Polynomial> fresh;
        Ideal cur = out.ideal;
        for (const auto& g : cur.basis_polynomials())
            for (std::size_t i = 0; i < n; ++i) {
                Polynomial nf = cur.normal_form(bracket(b, Polynomial::variable(b.ring(), i), g));
                if (nf.is_zero()) continue;
                cur = cur.with({nf});
                fresh.push_back(nf);
            }
        if (fresh.empty()) return out;
        out.adjoined.insert(out.adjoined.end(), fresh.begin(), fresh.end());
        out.ideal = cur;
    }
}

/// Largest graded ideal inside I: substitute x_i -> t^{deg x_i} x_i, clear
/// the t-denominators, saturate at t_1...t_r and eliminate the t's.
inline Ideal h_core(const GradingData& g, const Ideal& I) {
    const RingPtr& ring = I.ring();
    if (g.size() != ring->size()) throw DomainError("grading does not match the ideal's ring");
    if (g.rank == 0 || I.is_zero() || I.is_unit()) return I;
    std::vector<std::string> tnames;
    RingPtr ext = ring;
    for (std::size_t c = 0; c < g.rank; ++c) {
        tnames.push_back(ext->fresh_name("t" + std::to_string(c + 1)));
        ext = ext->extended({tnames.back()});
    }
    const std::size_t n = ring->size();
    std::vector<Polynomial> gens;
    for (const auto& f : I.generators()) {
        Weight lo;
        for (const auto& [m, c] : f.terms()) {
            Weight w = g.weight_of(m);
            if (lo.empty()) lo = w;
            for (std::size_t i = 0; i < g.rank; ++i) lo[i] = std::min(lo[i], w[i]);
        }
        Polynomial h(ext);
        for (const auto& [m, c] : f.terms()) {
            Weight w = g.weight_of(m) - lo;
            std::vector<int> e(m.exponents());
            for (std::size_t i = 0; i < g.rank; ++i) e.push_back(static_cast<int>(w[i]));
            h += Polynomial(ext, Monomial(e), c);
        }
        gens.push_back(std::move(h));
    }
    Polynomial tprod(ext, 1);
    for (std::size_t i = 0; i < g.rank; ++i) tprod *= Polynomial::variable(ext, n + i);
    Ideal sat = saturate(Ideal(ext, gens, I.options()), tprod);
    Ideal core = eliminate(sat, first_indices(n));
    std::vector<Polynomial> back;
    for (const auto& p : core.generators()) back.push_back(rebase(p, ring));
    return Ideal(ring, std::move(back), I.options());
}

enum class Primality { verified, asserted };

inline const char* to_string(Primality p) { return p == Primality::verified ? "verified" : "asserted"; }

/// Verified for ideals generated by variables (including 0) and for principal
/// ideals <q v + r> with v a variable absent from q and r, where q is a
/// nonzero constant or a monomial whose variables do not all divide r.
inline Primality primality_tag(const Ideal& I) {
    if (I.is_unit()) return Primality::asserted;
    if (I.is_zero() || is_variable_generated(I)) return Primality::verified;
    auto basis = I.basis_polynomials();
    if (basis.size() != 1) return Primality::asserted;
    const Polynomial& p = basis.front();
    const RingPtr& ring = p.ring();
    for (std::size_t v = 0; v < ring->size(); ++v) {
        if (p.degree_in(v) != 1 || p.min_degree_in(v) < 0) continue;
        Polynomial q(ring), r(ring);
        for (const auto& [m, c] : p.terms()) {
            if (m[v] == 1) {
                Monomial mm = m;
                mm.set(v, 0);
                q += Polynomial(ring, mm, c);
            } else {
                r += Polynomial(ring, m, c);
            }
        }
        if (q.is_constant()) return Primality::verified;
        if (!q.is_monomial() || r.is_zero()) continue;
        // A common factor of q and r would be a product of variables of q
        // dividing every term of r.
        const Monomial& qm = q.terms().begin()->first;
        bool shares = false;
        for (std::size_t i = 0; i < ring->size() && !shares; ++i) {
            if (qm[i] == 0) continue;
            shares = std::all_of(r.terms().begin(), r.terms().end(), [i](const auto& t) { return t.first[i] > 0; });
        }
        if (!shares) return Primality::verified;
    }
    return Primality::asserted;
}

struct ChainEntry {
    Ideal ideal;
    bool poisson = false;
    bool h_stable = false;
    int dimension = 0;
    Primality primality = Primality::asserted;
};

struct ChainReport {
    std::vector<ChainEntry> entries;
    std::vector<int> drops;  // dim(I_i) - dim(I_{i+1})
    std::size_t length() const { return drops.size(); }
    bool all_poisson() const {
        return std::all_of(entries.begin(), entries.end(), [](const ChainEntry& e) { return e.poisson; });
    }
    bool all_h_stable() const {
        return std::all_of(entries.begin(), entries.end(), [](const ChainEntry& e) { return e.h_stable; });
    }
    bool all_prime_verified() const {
        return std::all_of(entries.begin(), entries.end(), [](const ChainEntry& e) { return e.primality == Primality::verified; });
    }
    /// All dimension drops equal 1: no room for a prime strictly in between.
    bool saturated_in_spec() const {
        return std::all_of(drops.begin(), drops.end(), [](int d) { return d == 1; });
    }
};

inline ChainReport chain_report(const PoissonPresentation& p, const std::vector<Ideal>& chain) {
    if (chain.empty()) throw InputError("empty chain");
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        if (!chain[i + 1].contains(chain[i]) || chain[i].contains(chain[i + 1]))
            throw InputError("chain is not strictly increasing at position " + std::to_string(i + 1));
    }
    ChainReport rep;
    for (const auto& I : chain) {
        if (!same_ring(I.ring(), p.ring())) throw ContextMismatch();
        if (I.is_unit()) throw InputError("chain contains the unit ideal");
        rep.entries.push_back({I, is_poisson_ideal(p.table(), I), is_h_stable(p.grading(), I), dimension(I), primality_tag(I)});
    }
    for (std::size_t i = 0; i + 1 < rep.entries.size(); ++i) rep.drops.push_back(rep.entries[i].dimension - rep.entries[i + 1].dimension);
    return rep;
}

}  // namespace pcgl
