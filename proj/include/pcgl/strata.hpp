#pragma once

// Poisson affine spaces {x_i, x_j} = lambda_ij x_i x_j: log-bracket matrices,
// Poisson centers of the associated tori, and per-stratum summaries.

#include "cgl.hpp"
#include "groebner.hpp"
#include "linalg.hpp"
#include "pbracket.hpp"
#include "qpoly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pcgl {

/// entries[i][j] = lambda_ij, skew-symmetric.
struct LogBracketMatrix {
    std::vector<std::vector<Rational>> entries;

    std::size_t size() const { return entries.size(); }
    static LogBracketMatrix zero(std::size_t n) { return {std::vector<std::vector<Rational>>(n, std::vector<Rational>(n, Rational(0)))}; }
    void set(std::size_t i, std::size_t j, const Rational& v) {
        if (i == j) throw DomainError("diagonal of a log-bracket matrix is zero");
        entries.at(i).at(j) = v;
        entries.at(j).at(i) = -v;
    }
    bool operator==(const LogBracketMatrix&) const = default;
};

class NotAPoissonAffineSpace : public DomainError {
public:
    NotAPoissonAffineSpace(std::size_t i, std::size_t j, const std::string& what)
        : DomainError(what), pair_(i, j) {}
    /// 0-based generator indices, first > second.
    std::pair<std::size_t, std::size_t> pair() const { return pair_; }

private:
    std::pair<std::size_t, std::size_t> pair_;
};

inline LogBracketMatrix extract_log_matrix(const BracketTable& b) {
    const RingPtr& r = b.ring();
    LogBracketMatrix m = LogBracketMatrix::zero(r->size());
    for (const auto& [key, val] : b.entries()) {
        auto [i, j] = key;
        Polynomial xixj = Polynomial::variable(r, i) * Polynomial::variable(r, j);
        const Monomial& target = xixj.terms().begin()->first;
        if (val.size() != 1 || val.terms().begin()->first != target)
            throw NotAPoissonAffineSpace(i, j, "{" + r->name(i) + "," + r->name(j) + "} = " + val.str() +
                                                   " is not a scalar multiple of " + xixj.str());
        m.set(i, j, val.terms().begin()->second);
    }
    return m;
}

inline LogBracketMatrix extract_log_matrix(const PoissonPresentation& p) { return extract_log_matrix(p.table()); }

/// Bracket table of the Poisson affine space with log matrix m on `ring`.
inline BracketTable table_from_log_matrix(const RingPtr& ring, const LogBracketMatrix& m) {
    if (m.size() != ring->size()) throw DomainError("log matrix size differs from the number of variables");
    BracketTable t(ring);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if (m.entries[i][j] != -m.entries[j][i]) throw DomainError("log matrix is not skew-symmetric");
            if (m.entries[i][j] != 0)
                t.set(i, j, m.entries[i][j] * Polynomial::variable(ring, i) * Polynomial::variable(ring, j));
        }
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.entries[i][i] != 0) throw DomainError("log matrix has a nonzero diagonal entry");
    return t;
}

/// Presentation with one torus coordinate per generator.
inline PoissonPresentation presentation_from_log_matrix(const RingPtr& ring, const LogBracketMatrix& m) {
    std::vector<Weight> w(ring->size(), Weight(ring->size(), 0));
    for (std::size_t i = 0; i < ring->size(); ++i) w[i][i] = 1;
    return PoissonPresentation(ring, table_from_log_matrix(ring, m), GradingData(ring->size(), std::move(w)));
}

struct TorusCenter {
    IntegerMatrix kernel;  // rows m with M m = 0, Hermite normal form
    std::size_t rank() const { return kernel.size(); }
    bool trivial() const { return kernel.empty(); }
};

/// The Poisson center of K[x_1^{+-1}..x_N^{+-1}] is spanned by x^m with M m = 0.
inline TorusCenter poisson_center_torus(const LogBracketMatrix& m) {
    RationalMatrix a(m.entries.begin(), m.entries.end());
    return {integer_kernel(a, m.size())};
}

/// x^m in the all-Laurent version of `ring`.
inline Polynomial center_monomial(const RingPtr& laurent, const IntegerVector& m) {
    std::vector<int> e;
    for (const auto& x : m) e.push_back(static_cast<int>(x.get_si()));
    return Polynomial(laurent, Monomial(std::move(e)), 1);
}

/// Center generators as Laurent monomial strings; {"QQ"} when the center is K.
inline std::vector<std::string> center_strings(const RingPtr& ring, const TorusCenter& c) {
    if (c.trivial()) return {"QQ"};
    RingPtr laurent = ring->all_laurent();
    std::vector<std::string> out;
    for (const auto& row : c.kernel) out.push_back(center_monomial(laurent, row).str());
    return out;
}

/// Every center monomial brackets to zero with every generator of the Laurent ring.
inline bool center_commutes(const RingPtr& ring, const LogBracketMatrix& m, const TorusCenter& c) {
    RingPtr laurent = ring->all_laurent();
    BracketTable t = table_from_log_matrix(laurent, m);
    for (const auto& row : c.kernel) {
        Polynomial z = center_monomial(laurent, row);
        for (std::size_t i = 0; i < laurent->size(); ++i)
            if (!bracket(t, z, Polynomial::variable(laurent, i)).is_zero()) return false;
    }
    return true;
}

struct StratumSummary {
    std::vector<std::size_t> surviving;  // generator indices not in the ideal
    RingPtr quotient_ring;               // ring on the surviving generators
    LogBracketMatrix matrix;
    TorusCenter center;
    std::size_t dimension() const { return center.rank(); }
    std::vector<std::string> center_generators() const { return center_strings(quotient_ring, center); }
};

/// For an ideal generated by generators of a Poisson affine space: the
/// smaller affine space on the surviving generators and the center of its
/// torus, whose spectrum the stratum is homeomorphic to.
inline StratumSummary stratum_summary(const PoissonPresentation& p, const Ideal& ideal) {
    if (!same_ring(ideal.ring(), p.ring())) throw ContextMismatch();
    if (!is_variable_generated(ideal)) throw DomainError("stratum summaries need an ideal generated by generators");
    LogBracketMatrix full = extract_log_matrix(p);
    StratumSummary s;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (!ideal.contains(p.var(i))) {
            s.surviving.push_back(i);
            names.push_back(p.ring()->name(i));
        }
    s.quotient_ring = Ring::make(names);
    s.matrix = LogBracketMatrix::zero(s.surviving.size());
    for (std::size_t a = 0; a < s.surviving.size(); ++a)
        for (std::size_t b = 0; b < s.surviving.size(); ++b) s.matrix.entries[a][b] = full.entries[s.surviving[a]][s.surviving[b]];
    s.center = poisson_center_torus(s.matrix);
    return s;
}

}  // namespace pcgl
