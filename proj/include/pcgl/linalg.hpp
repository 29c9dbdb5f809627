#pragma once

// Exact linear algebra over Q and Z: row reduction, affine solves, saturated
// integer kernels in Hermite normal form.

#include "qpoly.hpp"

#include <optional>
#include <vector>

namespace pcgl {

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;
using IntegerVector = std::vector<Integer>;
using IntegerMatrix = std::vector<IntegerVector>;

struct RowEchelon {
    RationalMatrix rows;             // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

/// Reduced row echelon form of an m x n matrix.
inline RowEchelon rref(RationalMatrix a, std::size_t ncols) {
    RowEchelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < a[i].size(); ++j) a[i][j] -= f * a[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    a.resize(r);
    out.rows = std::move(a);
    return out;
}

struct AffineSolution {
    RationalVector particular;     // free variables set to zero
    RationalMatrix kernel;         // basis of the homogeneous solution space
};

/// Solve A x = b over Q; nullopt when inconsistent.
inline std::optional<AffineSolution> solve_affine(const RationalMatrix& a, const RationalVector& b, std::size_t n) {
    RationalMatrix aug;
    aug.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        RationalVector row = a[i];
        row.resize(n);
        row.push_back(b.at(i));
        aug.push_back(std::move(row));
    }
    RowEchelon e = rref(std::move(aug), n + 1);
    for (std::size_t p : e.pivots)
        if (p == n) return std::nullopt;
    AffineSolution s;
    s.particular.assign(n, Rational(0));
    std::vector<bool> is_pivot(n, false);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        s.particular[e.pivots[i]] = e.rows[i][n];
        is_pivot[e.pivots[i]] = true;
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(n, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
        s.kernel.push_back(std::move(v));
    }
    return s;
}

inline RationalMatrix rational_kernel(const RationalMatrix& a, std::size_t n) {
    return solve_affine(a, RationalVector(a.size(), Rational(0)), n)->kernel;
}

/// Row-style Hermite normal form of the lattice spanned by `rows` (zero rows
/// dropped): pivots positive, entries above each pivot reduced into [0, pivot).
inline IntegerMatrix hermite_normal_form(IntegerMatrix rows) {
    if (rows.empty()) return rows;
    const std::size_t n = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        // Euclid on column c among rows r..end.
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

/// Basis of ker(M) ∩ Z^n (saturated lattice), returned in Hermite normal form.
inline IntegerMatrix integer_kernel(const RationalMatrix& m, std::size_t n) {
    // Clear denominators row by row.
    IntegerMatrix im;
    for (const auto& row : m) {
        Integer l = 1;
        for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
        IntegerVector v;
        for (const auto& x : row) v.push_back(Integer(x * l));
        im.push_back(std::move(v));
    }
    // Unimodular row operations on [M^T | I]; rows whose M^T part vanishes
    // carry a basis of the integer kernel.
    const std::size_t mrows = im.size();
    IntegerMatrix aug(n, IntegerVector(mrows + n, Integer(0)));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < mrows; ++i) aug[j][i] = im[i][j];
        aug[j][mrows + j] = 1;
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < mrows && r < n; ++c) {
        for (;;) {
            std::size_t best = n;
            for (std::size_t i = r; i < n; ++i)
                if (aug[i][c] != 0 && (best == n || abs(aug[i][c]) < abs(aug[best][c]))) best = i;
            if (best == n) break;
            std::swap(aug[r], aug[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < n; ++i) {
                if (aug[i][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), aug[i][c].get_mpz_t(), aug[r][c].get_mpz_t());
                for (std::size_t j = 0; j < aug[i].size(); ++j) aug[i][j] -= q * aug[r][j];
                if (aug[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (aug[r][c] != 0) ++r;
    }
    IntegerMatrix basis;
    for (std::size_t i = r; i < n; ++i) basis.emplace_back(aug[i].begin() + static_cast<std::ptrdiff_t>(mrows), aug[i].end());
    return hermite_normal_form(std::move(basis));
}

}  // namespace pcgl
