#pragma once

// Torus actions encoded as Z^r-gradings: weights, homogeneous components, the
// induced Lie-algebra action, and solving for Lie vectors with prescribed
// eigenvalues.

#include "linalg.hpp"
#include "pbracket.hpp"
#include "qpoly.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace pcgl {

using Weight = std::vector<long long>;
using LieVector = std::vector<Rational>;

/// Weight vector of each generator, in generator order.
struct GradingData {
    std::size_t rank = 0;
    std::vector<Weight> weights;

    GradingData() = default;
    GradingData(std::size_t r, std::vector<Weight> w) : rank(r), weights(std::move(w)) {
        for (const auto& v : weights)
            if (v.size() != rank) throw InputError("weight vector length differs from grading rank");
    }

    /// From an r x N row matrix (row i holds the i-th coordinate of every generator).
    static GradingData from_rows(const std::vector<std::vector<long long>>& rows, std::size_t ngens) {
        std::vector<Weight> w(ngens, Weight(rows.size(), 0));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != ngens) throw InputError("grading row length differs from generator count");
            for (std::size_t j = 0; j < ngens; ++j) w[j][i] = rows[i][j];
        }
        return GradingData(rows.size(), std::move(w));
    }
    static GradingData trivial(std::size_t ngens) { return GradingData(0, std::vector<Weight>(ngens)); }

    std::vector<std::vector<long long>> rows() const {
        std::vector<std::vector<long long>> out(rank, std::vector<long long>(weights.size(), 0));
        for (std::size_t j = 0; j < weights.size(); ++j)
            for (std::size_t i = 0; i < rank; ++i) out[i][j] = weights[j][i];
        return out;
    }

    std::size_t size() const { return weights.size(); }
    GradingData prefix(std::size_t k) const {
        return GradingData(rank, std::vector<Weight>(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(k)));
    }

    Weight zero() const { return Weight(rank, 0); }

    Weight weight_of(const Monomial& m) const {
        if (m.size() > weights.size()) throw DomainError("monomial has more variables than the grading");
        Weight w = zero();
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0)
                for (std::size_t c = 0; c < rank; ++c) w[c] += static_cast<long long>(m[i]) * weights[i][c];
        return w;
    }
};

inline Weight operator+(Weight a, const Weight& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b.at(i);
    return a;
}
inline Weight operator-(Weight a, const Weight& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b.at(i);
    return a;
}

inline std::string weight_string(const Weight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

inline std::map<Weight, Polynomial> homogeneous_components(const GradingData& g, const Polynomial& f) {
    std::map<Weight, Polynomial> out;
    for (const auto& [m, c] : f.terms()) {
        auto it = out.try_emplace(g.weight_of(m), f.ring()).first;
        it->second += Polynomial(f.ring(), m, c);
    }
    return out;
}

/// Zero counts as homogeneous of every weight; its weight is reported as nullopt.
inline bool is_homogeneous(const GradingData& g, const Polynomial& f) { return homogeneous_components(g, f).size() <= 1; }

inline std::optional<Weight> weight_of(const GradingData& g, const Polynomial& f) {
    auto comps = homogeneous_components(g, f);
    if (comps.size() != 1) return std::nullopt;
    return comps.begin()->first;
}

inline Rational pairing(const LieVector& h, const Weight& w) {
    if (h.size() != w.size()) throw DomainError("Lie vector length differs from grading rank");
    Rational s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += h[i] * Rational(static_cast<long>(w[i]));
    return s;
}

/// The derivation by which h acts: multiplication by <h, w> on weight-w elements.
inline Polynomial lie_act(const GradingData& g, const LieVector& h, const Polynomial& f) {
    Polynomial out(f.ring());
    for (const auto& [m, c] : f.terms()) {
        Rational e = pairing(h, g.weight_of(m));
        if (e != 0) out += Polynomial(f.ring(), m, c * e);
    }
    return out;
}

struct GradedBracketReport {
    bool pass = true;
    std::vector<std::pair<std::size_t, std::size_t>> failures;
};

/// Every {x_i, x_j} must be homogeneous of weight deg x_i + deg x_j.
inline GradedBracketReport check_graded_bracket(const GradingData& g, const BracketTable& b) {
    GradedBracketReport rep;
    for (const auto& [key, val] : b.entries()) {
        Weight expect = g.weights.at(key.first) + g.weights.at(key.second);
        for (const auto& [m, c] : val.terms())
            if (g.weight_of(m) != expect) {
                rep.pass = false;
                rep.failures.push_back(key);
                break;
            }
    }
    return rep;
}

/// h with <h, deg x_j> = mu_j for j < k and <h, deg x_k> != 0 (k is 1-based).
/// Canonical choice: the particular solution with free coordinates zero,
/// otherwise shifted by the first kernel basis vector not orthogonal to
/// deg x_k; with all mu_j = 0 the result is scaled to a primitive integer vector.
inline std::optional<LieVector> solve_h(const GradingData& g, std::size_t k, const std::vector<Rational>& mu) {
    if (k < 1 || k > g.size()) throw DomainError("level out of range");
    if (mu.size() != k - 1) throw DomainError("need one eigenvalue per earlier generator");
    const std::size_t r = g.rank;
    if (r == 0) return std::nullopt;
    RationalMatrix a;
    for (std::size_t j = 0; j + 1 < k; ++j) {
        RationalVector row;
        for (auto w : g.weights[j]) row.emplace_back(static_cast<long>(w));
        a.push_back(std::move(row));
    }
    auto sol = solve_affine(a, mu, r);
    if (!sol) return std::nullopt;
    const Weight& wk = g.weights[k - 1];
    LieVector h = sol->particular;
    if (pairing(h, wk) == 0) {
        bool fixed = false;
        for (const auto& v : sol->kernel)
            if (pairing(v, wk) != 0) {
                for (std::size_t i = 0; i < r; ++i) h[i] += v[i];
                fixed = true;
                break;
            }
        if (!fixed) return std::nullopt;
    }
    bool homogeneous_system = std::all_of(mu.begin(), mu.end(), [](const Rational& q) { return q == 0; });
    if (homogeneous_system) {
        Integer l = 1, gc = 0;
        for (const auto& x : h) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        for (auto& x : h) {
            x *= l;
            mpz_gcd(gc.get_mpz_t(), gc.get_mpz_t(), x.get_num_mpz_t());
        }
        if (gc > 1)
            for (auto& x : h) x /= gc;
    }
    return h;
}

inline std::string lie_vector_string(const LieVector& h) {
    std::string s = "(";
    for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + to_string(h[i]);
    return s + ")";
}

}  // namespace pcgl
