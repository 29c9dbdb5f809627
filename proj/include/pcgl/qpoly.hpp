#pragma once

// Exact rational arithmetic and sparse multivariate Laurent polynomials over Q.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pcgl {

using Rational = mpq_class;
using Integer = mpz_class;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input (expression text, presentation files).
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : InputError("parse error at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

class ContextMismatch : public Error {
public:
    ContextMismatch() : Error("polynomials belong to different variable tables") {}
};

/// A mathematical precondition of an operation does not hold.
class DomainError : public Error {
public:
    using Error::Error;
};

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    auto valid_int = [](std::string_view t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw InputError("invalid rational literal '" + s + "'");
    Integer n(num), d(den);
    if (d == 0) throw InputError("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

// ---------------------------------------------------------------------------
// Variable tables

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Ordered variable names with per-variable Laurent flags. Declared order is
/// the variable order x_1 > x_2 > ... used by every monomial order.
class Ring {
public:
    explicit Ring(std::vector<std::string> names, std::vector<bool> laurent = {})
        : names_(std::move(names)), laurent_(std::move(laurent)) {
        if (laurent_.empty()) laurent_.assign(names_.size(), false);
        if (laurent_.size() != names_.size())
            throw InputError("laurent flag count does not match variable count");
        if (names_.size() >= 64) throw InputError("at most 63 variables are supported");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (!valid_name(names_[i])) throw InputError("invalid variable name '" + names_[i] + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw InputError("duplicate variable '" + names_[i] + "'");
        }
    }

    static RingPtr make(std::vector<std::string> names, std::vector<bool> laurent = {}) {
        return std::make_shared<const Ring>(std::move(names), std::move(laurent));
    }

    static bool valid_name(std::string_view s) {
        if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
        return std::all_of(s.begin(), s.end(),
                           [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    bool is_laurent(std::size_t i) const { return laurent_.at(i); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    RingPtr with_laurent(std::size_t i, bool flag = true) const {
        auto l = laurent_;
        l.at(i) = flag;
        return make(names_, std::move(l));
    }
    RingPtr all_laurent() const { return make(names_, std::vector<bool>(names_.size(), true)); }
    RingPtr without_laurent() const { return make(names_); }
    RingPtr prefix(std::size_t k) const {
        return make({names_.begin(), names_.begin() + static_cast<std::ptrdiff_t>(k)},
                    {laurent_.begin(), laurent_.begin() + static_cast<std::ptrdiff_t>(k)});
    }
    RingPtr extended(const std::vector<std::string>& extra) const {
        auto n = names_;
        auto l = laurent_;
        for (const auto& e : extra) {
            n.push_back(e);
            l.push_back(false);
        }
        return make(std::move(n), std::move(l));
    }

    /// A variable name not already in use, derived from `stem`.
    std::string fresh_name(const std::string& stem) const {
        std::string cand = stem;
        for (int i = 0; index_of(cand); ++i) cand = stem + std::to_string(i);
        return cand;
    }

    bool operator==(const Ring&) const = default;

private:
    std::vector<std::string> names_;
    std::vector<bool> laurent_;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------------------
// Monomials

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {}

    static Monomial variable(std::size_t nvars, std::size_t i, int e = 1) {
        Monomial m(nvars);
        m.exps_.at(i) = e;
        return m;
    }

    std::size_t size() const { return exps_.size(); }
    int operator[](std::size_t i) const { return exps_[i]; }
    void set(std::size_t i, int e) { exps_.at(i) = e; }
    const std::vector<int>& exponents() const { return exps_; }

    int degree() const {
        int d = 0;
        for (int e : exps_) d += e;
        return d;
    }
    bool is_one() const {
        return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
    }
    bool has_negative() const {
        return std::any_of(exps_.begin(), exps_.end(), [](int e) { return e < 0; });
    }
    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }
    bool coprime(const Monomial& other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > 0 && other.exps_[i] > 0) return false;
        return true;
    }
    /// Bitmask of variables with nonzero exponent (rings have < 64 variables).
    std::uint64_t support() const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] != 0) s |= std::uint64_t{1} << i;
        return s;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = a.exps_[i] + b.exps_[i];
        return r;
    }
    /// Exponent subtraction; callers check divisibility when it matters.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = a.exps_[i] - b.exps_[i];
        return r;
    }
    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
        return r;
    }
    friend Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
        return r;
    }

    // Storage order only (lexicographic on exponent vectors); see MonomialOrder
    // for term orders.
    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

private:
    std::vector<int> exps_;
};

/// Graded reverse lexicographic comparison with x_1 > x_2 > ... > x_n.
inline std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da <=> db;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return b[i] <=> a[i];
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Polynomials

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational>;

    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
    Polynomial(RingPtr ring, const Rational& c) : ring_(std::move(ring)) {
        if (c != 0) terms_.emplace(Monomial(ring_->size()), c);
    }
    Polynomial(RingPtr ring, const Monomial& m, const Rational& c) : ring_(std::move(ring)) {
        check_monomial(m);
        if (c != 0) terms_.emplace(m, c);
    }

    static Polynomial variable(const RingPtr& ring, std::size_t i) {
        return Polynomial(ring, Monomial::variable(ring->size(), i), Rational(1));
    }
    static Polynomial variable(const RingPtr& ring, std::string_view name) {
        auto i = ring->index_of(name);
        if (!i) throw InputError("unknown variable '" + std::string(name) + "'");
        return variable(ring, *i);
    }
    static Polynomial from_terms(RingPtr ring, TermMap terms) {
        Polynomial p(std::move(ring));
        for (auto& [m, c] : terms) {
            p.check_monomial(m);
            if (c != 0) p.terms_.emplace(m, c);
        }
        return p;
    }

    const RingPtr& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
    bool is_monomial() const { return terms_.size() == 1; }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(Monomial(ring_->size())); }

    /// Maximum total degree over terms; -1 for the zero polynomial (can be
    /// negative for Laurent polynomials, in which case the sentinel is ambiguous).
    int total_degree() const {
        int d = -1;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            d = first ? m.degree() : std::max(d, m.degree());
            first = false;
        }
        return d;
    }
    int degree_in(std::size_t var) const {
        int d = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            d = first ? m[var] : std::max(d, m[var]);
            first = false;
        }
        return d;
    }
    int min_degree_in(std::size_t var) const {
        int d = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            d = first ? m[var] : std::min(d, m[var]);
            first = false;
        }
        return d;
    }
    bool has_negative_exponents() const {
        return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.has_negative(); });
    }
    std::uint64_t support() const {
        std::uint64_t s = 0;
        for (const auto& [m, c] : terms_) s |= m.support();
        return s;
    }
    /// True iff only variables with index < k occur.
    bool involves_only_first(std::size_t k) const {
        return k >= 64 || (support() >> k) == 0;
    }

    /// Terms sorted by descending grevlex.
    std::vector<std::pair<Monomial, Rational>> sorted_terms() const {
        std::vector<std::pair<Monomial, Rational>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return grevlex_compare(a.first, b.first) > 0; });
        return v;
    }
    Monomial leading_monomial() const {
        if (is_zero()) throw DomainError("leading monomial of zero");
        return sorted_terms().front().first;
    }
    Rational leading_coefficient() const {
        if (is_zero()) return Rational(0);
        return sorted_terms().front().second;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [m, c] : terms_) c *= s;
        }
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial r(a.ring_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    /// Multiply by a monomial (exponents may be negative on Laurent variables).
    Polynomial shift(const Monomial& m) const {
        if (m.size() != ring_->size()) throw DomainError("monomial arity does not match ring");
        Polynomial r(ring_);
        for (const auto& [t, c] : terms_) {
            Monomial mt = t * m;
            check_monomial(mt);
            r.terms_.emplace(std::move(mt), c);
        }
        return r;
    }

    Polynomial pow(int e) const {
        if (e < 0) {
            if (!is_monomial()) throw DomainError("negative power of a non-monomial");
            const auto& [m, c] = *terms_.begin();
            Monomial inv(ring_->size());
            for (std::size_t i = 0; i < m.size(); ++i) inv.set(i, m[i] * e);
            Rational ci = 1;
            Rational base = 1 / c;
            for (int i = 0; i < -e; ++i) ci *= base;
            return Polynomial(ring_, inv, ci);
        }
        Polynomial r(ring_, Rational(1)), b = *this;
        while (e > 0) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const { return same_ring(ring_, o.ring_) && terms_ == o.terms_; }

    std::string str() const;

private:
    void check(const Polynomial& o) const {
        if (!same_ring(ring_, o.ring_)) throw ContextMismatch();
    }
    void check_monomial(const Monomial& m) const {
        if (m.size() != ring_->size()) throw DomainError("monomial arity does not match ring");
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] < 0 && !ring_->is_laurent(i))
                throw DomainError("negative exponent on non-Laurent variable '" + ring_->name(i) + "'");
    }
    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    RingPtr ring_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Printing

inline std::string monomial_string(const Ring& ring, const Monomial& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += ring.name(i);
        if (m[i] != 1) s += '^' + std::to_string(m[i]);
    }
    return s;
}

inline std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : sorted_terms()) {
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out += '-';
        } else {
            out += neg ? " - " : " + ";
        }
        first = false;
        std::string ms = monomial_string(*ring_, m);
        if (ms.empty()) {
            out += to_string(a);
        } else if (a == 1) {
            out += ms;
        } else {
            out += to_string(a) + '*' + ms;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
public:
    Parser(std::string_view text, RingPtr ring) : s_(text), ring_(std::move(ring)) {}

    Polynomial run() {
        skip();
        if (pos_ == s_.size()) fail("empty expression");
        Polynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::string(s_.substr(start, pos_ - start));
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }
    Polynomial term() {
        Polynomial acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }
    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }
    Polynomial power() {
        std::size_t base_pos = pos_;
        Polynomial base = primary();
        if (!accept('^')) return base;
        skip();
        bool paren = accept('(');
        skip();
        bool neg = false;
        if (accept('-')) neg = true;
        skip();
        std::size_t epos = pos_;
        std::string d = digits();
        if (paren && !accept(')')) fail("expected ')'");
        if (d.size() > 6) {
            pos_ = epos;
            fail("exponent too large");
        }
        int e = std::stoi(d) * (neg ? -1 : 1);
        if (e < 0) {
            if (!base.is_monomial()) {
                pos_ = base_pos;
                fail("negative exponent on a non-monomial");
            }
            const Monomial& m = base.terms().begin()->first;
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] != 0 && !ring_->is_laurent(i)) {
                    pos_ = base_pos;
                    fail("negative exponent on non-Laurent variable '" + ring_->name(i) + "'");
                }
        }
        return base.pow(e);
    }
    Polynomial primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            std::string den = "1";
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                den = digits();
                if (Integer(den) == 0) fail("zero denominator");
            }
            Rational q{Integer(num), Integer(den)};
            q.canonicalize();
            return Polynomial(ring_, q);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            auto idx = ring_->index_of(name);
            if (!idx) {
                pos_ = start;
                fail("unknown variable '" + name + "'");
            }
            return Polynomial::variable(ring_, *idx);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view s_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse(std::string_view text, const RingPtr& ring) { return detail::Parser(text, ring).run(); }

// ---------------------------------------------------------------------------
// Calculus and ring changes

inline Polynomial diff(const Polynomial& f, std::size_t var) {
    Polynomial::TermMap out;
    for (const auto& [m, c] : f.terms()) {
        int e = m[var];
        if (e == 0) continue;
        Monomial d = m;
        d.set(var, e - 1);
        out.emplace(std::move(d), c * e);
    }
    return Polynomial::from_terms(f.ring(), std::move(out));
}

/// Re-express f over `target`, matching variables by name.
inline Polynomial rebase(const Polynomial& f, const RingPtr& target) {
    if (same_ring(f.ring(), target)) return f;
    const Ring& src = *f.ring();
    std::vector<std::optional<std::size_t>> map(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) map[i] = target->index_of(src.name(i));
    Polynomial::TermMap out;
    for (const auto& [m, c] : f.terms()) {
        Monomial t(target->size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!map[i]) throw DomainError("variable '" + src.name(i) + "' is not in the target ring");
            t.set(*map[i], m[i]);
        }
        out.emplace(std::move(t), c);
    }
    return Polynomial::from_terms(target, std::move(out));
}

/// Ring homomorphism x_i -> images[i]; images live in a common target ring.
/// Negative exponents require invertible (monomial) images.
inline Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images) {
    if (images.size() != f.ring()->size()) throw DomainError("substitution arity mismatch");
    if (images.empty()) return f;
    const RingPtr& target = images.front().ring();
    Polynomial r(target);
    for (const auto& [m, c] : f.terms()) {
        Polynomial t(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) t *= images[i].pow(m[i]);
        r += t;
    }
    return r;
}

/// Exact quotient f / g if g divides f (in the Laurent sense for Laurent
/// variables), otherwise nullopt.
inline std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
    if (!same_ring(f.ring(), g.ring())) throw ContextMismatch();
    if (g.is_zero()) throw DomainError("division by zero polynomial");
    if (f.is_zero()) return Polynomial(f.ring());
    const std::size_t n = f.ring()->size();
    // Strip monomial content so both sides are honest polynomials.
    auto content = [n](const Polynomial& p) {
        Monomial m(n);
        bool first = true;
        for (const auto& [t, c] : p.terms()) {
            m = first ? t : gcd(m, t);
            first = false;
        }
        return m;
    };
    Monomial mf = content(f), mg = content(g);
    auto strip = [](const Polynomial& p, const Monomial& m) {
        std::vector<std::pair<Monomial, Rational>> v;
        for (const auto& [t, c] : p.terms()) v.emplace_back(t / m, c);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return grevlex_compare(a.first, b.first) > 0; });
        return v;
    };
    auto rf = strip(f, mf);
    auto rg = strip(g, mg);
    // Division by a single polynomial: {g} is a Groebner basis of <g>.
    std::map<Monomial, Rational> rem;
    for (auto& [m, c] : rf) rem.emplace(m, c);
    auto lead = [&]() {
        auto best = rem.begin();
        for (auto it = rem.begin(); it != rem.end(); ++it)
            if (grevlex_compare(it->first, best->first) > 0) best = it;
        return best;
    };
    std::map<Monomial, Rational> quot;
    const auto& [lg, lc] = rg.front();
    while (!rem.empty()) {
        auto lt = lead();
        if (!lg.divides(lt->first)) return std::nullopt;
        Monomial q = lt->first / lg;
        Rational qc = lt->second / lc;
        quot.emplace(q, qc);
        for (const auto& [m, c] : rg) {
            Monomial t = m * q;
            auto [it, ins] = rem.try_emplace(t, -qc * c);
            if (!ins) {
                it->second -= qc * c;
                if (it->second == 0) rem.erase(it);
            }
        }
    }
    Monomial shift = mf / mg;
    Polynomial::TermMap out;
    for (auto& [m, c] : quot) {
        Monomial t = m * shift;
        for (std::size_t i = 0; i < n; ++i)
            if (t[i] < 0 && !f.ring()->is_laurent(i)) return std::nullopt;
        out.emplace(std::move(t), c);
    }
    return Polynomial::from_terms(f.ring(), std::move(out));
}

// ---------------------------------------------------------------------------
// Derivations

/// A derivation given by its images on generators; variables without an
/// image are outside the derivation's domain.
class Derivation {
public:
    explicit Derivation(RingPtr ring) : ring_(std::move(ring)), images_(ring_->size()) {}

    static Derivation zero_on(const RingPtr& ring, std::size_t count) {
        Derivation d(ring);
        for (std::size_t i = 0; i < count; ++i) d.set(i, Polynomial(ring));
        return d;
    }

    const RingPtr& ring() const { return ring_; }
    void set(std::size_t i, Polynomial image) {
        if (!same_ring(image.ring(), ring_)) throw ContextMismatch();
        images_.at(i) = std::move(image);
    }
    const std::optional<Polynomial>& image(std::size_t i) const { return images_.at(i); }

    Polynomial operator()(const Polynomial& f) const {
        if (!same_ring(f.ring(), ring_)) throw ContextMismatch();
        Polynomial r(ring_);
        const std::uint64_t sup = f.support();
        for (std::size_t i = 0; i < ring_->size(); ++i) {
            if (!((sup >> i) & 1)) continue;
            if (!images_[i]) throw DomainError("derivation has no image for generator '" + ring_->name(i) + "'");
            if (images_[i]->is_zero()) continue;
            r += *images_[i] * diff(f, i);
        }
        return r;
    }

    Derivation rebase(const RingPtr& target) const {
        Derivation d(target);
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (!images_[i]) continue;
            auto j = target->index_of(ring_->name(i));
            if (!j) throw DomainError("variable '" + ring_->name(i) + "' is not in the target ring");
            d.set(*j, pcgl::rebase(*images_[i], target));
        }
        return d;
    }

private:
    RingPtr ring_;
    std::vector<std::optional<Polynomial>> images_;
};

struct DerivationPowers {
    /// D^0(f), D^1(f), ...; ends with 0 when nilpotent within the bound.
    std::vector<Polynomial> powers;
    /// Minimal m with D^m(f) = 0, or nullopt (NotWithinBound).
    std::optional<int> nilpotency_index;
    /// Total degree strictly increased over the last three iterations.
    bool degree_growth = false;

    bool within_bound() const { return nilpotency_index.has_value(); }
};

inline DerivationPowers iterate_derivation(const Derivation& d, const Polynomial& f, int bound) {
    if (bound < 1) throw DomainError("iteration bound must be positive");
    DerivationPowers out;
    out.powers.push_back(f);
    if (f.is_zero()) {
        out.nilpotency_index = 0;
        return out;
    }
    int growth = 0;
    for (int m = 1; m <= bound; ++m) {
        Polynomial next = d(out.powers.back());
        if (next.is_zero()) {
            out.powers.push_back(std::move(next));
            out.nilpotency_index = m;
            return out;
        }
        growth = next.total_degree() > out.powers.back().total_degree() ? growth + 1 : 0;
        out.powers.push_back(std::move(next));
    }
    out.degree_growth = growth >= 3;
    return out;
}

// ---------------------------------------------------------------------------
// Random sampling (property checks)

/// Random polynomial in the variables `vars` with small integer/half-integer
/// coefficients and nonnegative exponents.
inline Polynomial random_polynomial(const RingPtr& ring, std::span<const std::size_t> vars, int max_degree,
                                    int max_terms, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> coef(-5, 5);
    std::uniform_int_distribution<int> den(1, 2);
    std::uniform_int_distribution<int> degd(0, max_degree);
    Polynomial p(ring);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        Monomial m(ring->size());
        int budget = degd(rng);
        if (!vars.empty()) {
            std::uniform_int_distribution<std::size_t> pick(0, vars.size() - 1);
            for (int b = 0; b < budget; ++b) {
                std::size_t v = vars[pick(rng)];
                m.set(v, m[v] + 1);
            }
        }
        Rational c(coef(rng), den(rng));
        c.canonicalize();
        p += Polynomial(ring, m, c);
    }
    return p;
}

inline std::vector<std::size_t> first_indices(std::size_t k) {
    std::vector<std::size_t> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = i;
    return v;
}

}  // namespace pcgl
