#pragma once

// Iterated Poisson-Ore towers: presentations, the per-level split
// {x_k, a} = sigma_k(a) x_k + delta_k(a), and verification of the tower axioms.

#include "grading.hpp"
#include "groebner.hpp"
#include "pbracket.hpp"
#include "qpoly.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pcgl {

struct Bounds {
    int nilpotency = 25;
    int degree = 4;
    std::size_t groebner_steps = 1'000'000;
};

/// Generators x_1..x_N (0-based internally), bracket table, torus grading and
/// optional Lie vectors h_1..h_N. Construction checks shapes only; the
/// mathematical axioms are reported by verify_cgl.
class PoissonPresentation {
public:
    PoissonPresentation(RingPtr ring, BracketTable table, GradingData grading,
                        std::optional<std::vector<LieVector>> h = std::nullopt, Bounds bounds = {})
        : ring_(std::move(ring)), table_(std::move(table)), grading_(std::move(grading)), h_(std::move(h)),
          bounds_(bounds) {
        if (!same_ring(table_.ring(), ring_)) throw ContextMismatch();
        for (std::size_t i = 0; i < ring_->size(); ++i)
            if (ring_->is_laurent(i)) throw InputError("presentation generators must be polynomial variables");
        if (grading_.size() != ring_->size()) throw InputError("grading must give one weight per generator");
        if (h_) {
            if (h_->size() != ring_->size()) throw InputError("need one Lie vector per generator");
            for (const auto& v : *h_)
                if (v.size() != grading_.rank) throw InputError("Lie vector length differs from grading rank");
        }
        if (bounds_.nilpotency < 1 || bounds_.degree < 0 || bounds_.groebner_steps == 0)
            throw InputError("bounds must be positive");
    }

    const RingPtr& ring() const { return ring_; }
    const BracketTable& table() const { return table_; }
    const GradingData& grading() const { return grading_; }
    const std::optional<std::vector<LieVector>>& h() const { return h_; }
    const Bounds& bounds() const { return bounds_; }
    std::size_t size() const { return ring_->size(); }
    GroebnerOptions groebner_options() const { return {static_cast<long>(bounds_.groebner_steps)}; }

    Polynomial var(std::size_t i) const { return Polynomial::variable(ring_, i); }
    Polynomial parse(std::string_view s) const { return pcgl::parse(s, ring_); }

private:
    RingPtr ring_;
    BracketTable table_;
    GradingData grading_;
    std::optional<std::vector<LieVector>> h_;
    Bounds bounds_;
};

/// The truncated presentation of R_k = K[x_1..x_k].
inline PoissonPresentation restrict(const PoissonPresentation& p, std::size_t k) {
    if (k > p.size()) throw DomainError("restriction level out of range");
    RingPtr r = p.ring()->prefix(k);
    BracketTable t(r);
    for (const auto& [key, val] : p.table().entries()) {
        if (key.first >= k) continue;
        if (!val.involves_only_first(k)) throw DomainError("bracket of early generators leaves R_" + std::to_string(k));
        t.set(key.first, key.second, rebase(val, r));
    }
    std::optional<std::vector<LieVector>> h;
    if (p.h()) h = std::vector<LieVector>(p.h()->begin(), p.h()->begin() + static_cast<std::ptrdiff_t>(k));
    return PoissonPresentation(r, std::move(t), p.grading().prefix(k), std::move(h), p.bounds());
}

struct TriangularityIssue {
    std::size_t i, j;  // 0-based generator indices, i > j
    std::string reason;
};

/// Triangularity of {x_i, x_j} (i > j): only x_1..x_i occur, x_i to degree <= 1.
inline std::optional<TriangularityIssue> triangularity_issue(const BracketTable& b, std::size_t i, std::size_t j) {
    Polynomial e = b.entry(i, j);
    if (!e.involves_only_first(i + 1)) return TriangularityIssue{i, j, "involves a later generator"};
    if (e.degree_in(i) > 1) return TriangularityIssue{i, j, "degree in the top generator exceeds 1"};
    return std::nullopt;
}

struct SplitBracket {
    std::vector<Polynomial> sigma;  // sigma_k(x_j), j < k
    std::vector<Polynomial> delta;  // delta_k(x_j), j < k
};

/// {x_k, x_j} = sigma_k(x_j) x_k + delta_k(x_j) with both parts free of x_k (k 1-based).
inline SplitBracket split_bracket(const PoissonPresentation& p, std::size_t k) {
    if (k < 1 || k > p.size()) throw DomainError("level out of range");
    const std::size_t top = k - 1;
    SplitBracket out;
    for (std::size_t j = 0; j < top; ++j) {
        if (auto issue = triangularity_issue(p.table(), top, j))
            throw DomainError("bracket {" + p.ring()->name(top) + "," + p.ring()->name(j) + "} " + issue->reason);
        Polynomial s(p.ring()), d(p.ring());
        const Polynomial e = p.table().entry(top, j);
        for (const auto& [m, c] : e.terms()) {
            if (m[top] == 1) {
                Monomial q = m;
                q.set(top, 0);
                s += Polynomial(p.ring(), q, c);
            } else {
                d += Polynomial(p.ring(), m, c);
            }
        }
        out.sigma.push_back(std::move(s));
        out.delta.push_back(std::move(d));
    }
    return out;
}

/// Data of R_k = A[X; sigma, delta]_p with A = R_{k-1}, all living in the ring
/// of R_k. `laurent_ring` inverts X = x_k.
struct LevelData {
    std::size_t k = 0;
    RingPtr ring;
    RingPtr laurent_ring;
    BracketTable table;
    GradingData grading;
    Derivation sigma;
    Derivation delta;
    bool sigma_diagonal = true;
    std::vector<Rational> sigma_eigenvalues;
    std::optional<LieVector> h;
    bool h_supplied = false;
    Rational lambda = 0;
    Bounds bounds;

    std::size_t top() const { return k - 1; }
    Polynomial X() const { return Polynomial::variable(ring, top()); }
    /// Generators of A.
    std::vector<std::size_t> base_generators() const { return first_indices(k - 1); }
    GroebnerOptions groebner_options() const { return {static_cast<long>(bounds.groebner_steps)}; }
    void require_lambda() const {
        if (lambda == 0) throw DomainError("level " + std::to_string(k) + " has no Lie vector with nonzero eigenvalue on x_k");
    }
};

inline LevelData level_data(const PoissonPresentation& p, std::size_t k) {
    if (k < 1 || k > p.size()) throw DomainError("level out of range");
    PoissonPresentation rk = restrict(p, k);
    auto split = split_bracket(rk, k);
    const std::size_t top = k - 1;
    LevelData L{k,
                rk.ring(),
                rk.ring()->with_laurent(top),
                rk.table(),
                rk.grading(),
                Derivation(rk.ring()),
                Derivation(rk.ring()),
                true,
                {},
                std::nullopt,
                false,
                0,
                p.bounds()};
    for (std::size_t j = 0; j < top; ++j) {
        L.sigma.set(j, split.sigma[j]);
        L.delta.set(j, split.delta[j]);
        Polynomial xj = rk.var(j);
        const Polynomial& s = split.sigma[j];
        Rational mu = 0;
        if (!s.is_zero()) {
            if (s.is_monomial() && s.terms().begin()->first == xj.terms().begin()->first) {
                mu = s.terms().begin()->second;
            } else {
                L.sigma_diagonal = false;
            }
        }
        L.sigma_eigenvalues.push_back(mu);
    }
    if (p.h()) {
        L.h = (*p.h())[top];
        L.h_supplied = true;
    } else if (L.sigma_diagonal) {
        L.h = solve_h(rk.grading(), k, L.sigma_eigenvalues);
    }
    if (L.h) L.lambda = pairing(*L.h, rk.grading().weights[top]);
    return L;
}

// ---------------------------------------------------------------------------
// Verification

struct NilpotencyWitness {
    std::size_t generator;
    std::optional<int> index;
    bool likely_not_nilpotent = false;
};

struct LevelReport {
    std::size_t k = 0;
    bool triangular = true;
    std::vector<TriangularityIssue> triangularity;
    bool eigenvectors = true;
    bool nilpotent = true;
    std::vector<NilpotencyWitness> nilpotency;
    bool sigma_diagonal = true;
    std::vector<Rational> sigma_eigenvalues;
    std::optional<LieVector> h;
    bool h_supplied = false;
    bool h_valid = false;
    Rational lambda = 0;
    bool delta_condition = true;
    bool sigma_poisson_derivation = true;
    bool delta_shifts_weight = true;

    bool pass() const {
        return triangular && eigenvectors && nilpotent && sigma_diagonal && h_valid && delta_condition &&
               sigma_poisson_derivation && delta_shifts_weight;
    }
};

struct CGLReport {
    JacobiReport jacobi;
    GradedBracketReport graded;
    std::vector<LevelReport> levels;

    bool pass() const {
        if (!jacobi.pass || !graded.pass) return false;
        for (const auto& l : levels)
            if (!l.pass()) return false;
        return true;
    }
    std::vector<std::size_t> failing_levels() const {
        std::vector<std::size_t> v;
        for (const auto& l : levels)
            if (!l.pass()) v.push_back(l.k);
        return v;
    }
};

/// delta_k maps weight w to weight w + deg x_k, tested on generators.
inline bool delta_shifts_weight(const LevelData& L) {
    const Weight& wx = L.grading.weights[L.top()];
    for (std::size_t j = 0; j < L.top(); ++j) {
        const Weight target = L.grading.weights[j] + wx;
        for (const auto& [m, c] : L.delta.image(j)->terms())
            if (L.grading.weight_of(m) != target) return false;
    }
    return true;
}

inline LevelReport verify_level(const PoissonPresentation& p, std::size_t k) {
    LevelReport rep;
    rep.k = k;
    const std::size_t top = k - 1;
    for (std::size_t j = 0; j < top; ++j)
        if (auto issue = triangularity_issue(p.table(), top, j)) rep.triangularity.push_back(*issue);
    // Brackets among earlier generators must also stay inside R_k.
    for (std::size_t j = 0; j < top; ++j)
        for (std::size_t i = j + 1; i < top; ++i)
            if (!p.table().entry(i, j).involves_only_first(k)) rep.triangularity.push_back({i, j, "involves a later generator"});
    rep.triangular = rep.triangularity.empty();
    if (!rep.triangular) {
        rep.nilpotent = rep.sigma_diagonal = rep.delta_condition = rep.sigma_poisson_derivation = false;
        return rep;
    }

    LevelData L = level_data(p, k);
    for (std::size_t j = 0; j < top; ++j) {
        auto it = iterate_derivation(L.delta, Polynomial::variable(L.ring, j), p.bounds().nilpotency);
        NilpotencyWitness w{j, it.nilpotency_index, !it.within_bound() && it.degree_growth};
        if (!it.within_bound()) rep.nilpotent = false;
        rep.nilpotency.push_back(w);
    }
    rep.sigma_diagonal = L.sigma_diagonal;
    rep.sigma_eigenvalues = L.sigma_eigenvalues;
    rep.h = L.h;
    rep.h_supplied = L.h_supplied;
    rep.lambda = L.lambda;
    if (L.h) {
        bool ok = L.lambda != 0;
        for (std::size_t j = 0; j < top && ok; ++j) {
            Polynomial xj = Polynomial::variable(L.ring, j);
            ok = lie_act(L.grading, *L.h, xj) == *L.sigma.image(j);
        }
        rep.h_valid = ok;
    }
    rep.delta_condition = check_delta_condition(L.table, L.sigma, L.delta, top).pass;
    rep.sigma_poisson_derivation = check_poisson_derivation(L.table, L.sigma, top).pass;
    rep.delta_shifts_weight = delta_shifts_weight(L);
    return rep;
}

inline CGLReport verify_cgl(const PoissonPresentation& p) {
    CGLReport rep;
    rep.jacobi = check_jacobi(p.table());
    rep.graded = check_graded_bracket(p.grading(), p.table());
    for (std::size_t k = 1; k <= p.size(); ++k) rep.levels.push_back(verify_level(p, k));
    return rep;
}

}  // namespace pcgl
