#pragma once

// Canonical sparse multivariate polynomials over Q(sqrt3).
//
// Terms live in an ordered map keyed by Monomial, so iteration order is
// lex order by variable index and two polynomials are equal iff their term
// maps are equal.  Zero coefficients are never stored.

#include "rgfp/exact_scalar.hpp"
#include "rgfp/monomial.hpp"

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rgfp {

/// Full assignment of doubles to the variable namespace.
using DoublePoint = std::array<double, kNumVars>;

/// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class SparsePoly {
public:
    using TermMap = std::map<Monomial, ExactScalar>;

    SparsePoly() = default;
    SparsePoly(const ExactScalar& c) {  // NOLINT(google-explicit-constructor)
        if (!c.is_zero()) terms_.emplace(Monomial{}, c);
    }
    SparsePoly(int c) : SparsePoly(ExactScalar(c)) {}  // NOLINT(google-explicit-constructor)

    static SparsePoly var(Var v, unsigned e = 1) { return term(ExactScalar(1), Monomial::of(v, e)); }
    static SparsePoly term(const ExactScalar& c, const Monomial& m) {
        SparsePoly p;
        if (!c.is_zero()) p.terms_.emplace(m, c);
        return p;
    }

    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    ExactScalar coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ExactScalar(0) : it->second;
    }

    /// Adds c*m, erasing the entry if it cancels.
    void add_term(const Monomial& m, const ExactScalar& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SparsePoly operator-() const {
        SparsePoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }
    SparsePoly& operator+=(const SparsePoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        const SparsePoly& big = a.size() >= b.size() ? a : b;
        const SparsePoly& small = a.size() >= b.size() ? b : a;
        std::unordered_map<Monomial, ExactScalar, MonomialHash> acc;
        acc.reserve(big.size() * small.size());
        ExactScalar tmp;
        for (const auto& [ms, cs] : small.terms_) {
            for (const auto& [mb, cb] : big.terms_) {
                tmp = cs;
                tmp *= cb;
                auto [it, inserted] = acc.try_emplace(ms * mb, tmp);
                if (!inserted) it->second += tmp;
            }
        }
        SparsePoly r;
        for (auto& [m, c] : acc)
            if (!c.is_zero()) r.terms_.emplace(m, std::move(c));
        return r;
    }

    SparsePoly scaled(const ExactScalar& k) const {
        if (k.is_zero()) return {};
        SparsePoly r = *this;
        for (auto& [m, c] : r.terms_) c *= k;
        return r;
    }

    SparsePoly times_monomial(const Monomial& mono) const {
        SparsePoly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m * mono, c);
        return r;
    }

    SparsePoly pow(unsigned n) const {
        SparsePoly result(1);
        SparsePoly base = *this;
        while (n != 0) {
            if (n & 1U) result = result * base;
            n >>= 1U;
            if (n != 0) base = base * base;
        }
        return result;
    }

    SparsePoly partial_derivative(Var v) const {
        SparsePoly r;
        for (const auto& [m, c] : terms_) {
            const unsigned e = m.exp(v);
            if (e == 0) continue;
            Monomial dm = m;
            dm.set(v, e - 1);
            r.add_term(dm, c * ExactScalar(static_cast<long>(e)));
        }
        return r;
    }

    /// Replaces every occurrence of `v` by `replacement` and expands.
    SparsePoly substitute(Var v, const SparsePoly& replacement) const {
        std::map<unsigned, SparsePoly> by_power;
        for (const auto& [m, c] : terms_) by_power[m.exp(v)].add_term(m.without(v), c);
        SparsePoly r;
        SparsePoly power(1);
        unsigned current = 0;
        for (const auto& [e, rest] : by_power) {
            while (current < e) {
                power = power * replacement;
                ++current;
            }
            r += rest * power;
        }
        return r;
    }

    /// Substitutes exact values for a subset of variables (cheaper than substitute()).
    SparsePoly substitute_values(const std::map<Var, ExactScalar>& values) const {
        SparsePoly r;
        std::map<std::pair<Var, unsigned>, ExactScalar> cache;
        for (const auto& [m, c] : terms_) {
            ExactScalar k = c;
            Monomial rest = m;
            for (const auto& [v, val] : values) {
                const unsigned e = m.exp(v);
                if (e == 0) continue;
                auto it = cache.find({v, e});
                if (it == cache.end()) it = cache.emplace(std::pair{v, e}, val.pow(e)).first;
                k *= it->second;
                rest.set(v, 0);
                if (k.is_zero()) break;
            }
            r.add_term(rest, k);
        }
        return r;
    }

    /// Minimal exponent of `v` over the stored terms.  Throws on the zero polynomial.
    unsigned min_degree_in(Var v) const {
        if (is_zero()) throw std::domain_error("min_degree_in: zero polynomial");
        unsigned d = kMaxExponent;
        for (const auto& [m, c] : terms_) d = std::min(d, m.exp(v));
        return d;
    }

    /// Maximal exponent of `v`; 0 for the zero polynomial.
    unsigned degree_in(Var v) const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.exp(v));
        return d;
    }

    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    /// Coefficient of v^k, as a polynomial in the remaining variables.
    SparsePoly coefficient_of(Var v, unsigned k) const {
        SparsePoly r;
        for (const auto& [m, c] : terms_)
            if (m.exp(v) == k) r.terms_.emplace_hint(r.terms_.end(), m.without(v), c);
        return r;
    }

    /// Variables with a positive exponent in some term.
    std::vector<Var> variables() const {
        std::array<bool, kNumVars> used{};
        for (const auto& [m, c] : terms_)
            for (std::size_t i = 0; i < kNumVars; ++i)
                if (m.exp(static_cast<Var>(i)) != 0) used[i] = true;
        std::vector<Var> out;
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (used[i]) out.push_back(static_cast<Var>(i));
        return out;
    }

    /// Largest monomial dividing every term (1 for the zero polynomial).
    Monomial monomial_content() const {
        if (is_zero()) return {};
        Monomial g = terms_.begin()->first;
        for (const auto& [m, c] : terms_) g = Monomial::gcd(g, m);
        return g;
    }

    /// Caller guarantees `m` divides every term.
    SparsePoly divided_by_monomial(const Monomial& mono) const {
        SparsePoly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m / mono, c);
        return r;
    }

    /// Exact multivariate division in lex order; nullopt when `d` does not divide.
    std::optional<SparsePoly> divide_exact(const SparsePoly& d) const {
        if (d.is_zero()) throw std::domain_error("divide_exact: zero divisor");
        const auto& [lead_m, lead_c] = *d.terms_.rbegin();
        const ExactScalar lead_inv = lead_c.inverse();
        SparsePoly rem = *this;
        SparsePoly quotient;
        while (!rem.is_zero()) {
            const auto& [rm, rc] = *rem.terms_.rbegin();
            if (!lead_m.divides(rm)) return std::nullopt;
            const Monomial qm = rm / lead_m;
            const ExactScalar qc = rc * lead_inv;
            quotient.add_term(qm, qc);
            for (const auto& [m, c] : d.terms_) rem.add_term(m * qm, -(c * qc));
        }
        return quotient;
    }

    /// Exact evaluation; variables not present in `values` must not occur.
    ExactScalar evaluate(const std::map<Var, ExactScalar>& values) const {
        SparsePoly r = substitute_values(values);
        if (!r.is_constant()) throw std::invalid_argument("evaluate: unassigned variables remain");
        return r.coeff(Monomial{});
    }

    /// Binary64 evaluation: term-wise products summed with Neumaier compensation.
    double evaluate(const DoublePoint& point) const {
        CompensatedSum acc;
        for (const auto& [m, c] : terms_) {
            double t = c.to_double();
            for (std::size_t i = 0; i < kNumVars; ++i) {
                const unsigned e = m.exp(static_cast<Var>(i));
                if (e != 0) t *= std::pow(point[i], static_cast<int>(e));
            }
            acc.add(t);
        }
        return acc.value();
    }

    /// Counts of strictly positive / strictly negative coefficients.
    std::pair<std::size_t, std::size_t> sign_counts() const {
        std::size_t pos = 0;
        std::size_t neg = 0;
        for (const auto& [m, c] : terms_) (c.sign() > 0 ? pos : neg)++;
        return {pos, neg};
    }

    bool all_coefficients_nonneg() const {
        for (const auto& [m, c] : terms_)
            if (c.sign() < 0) return false;
        return true;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            std::string cs = c.to_string();
            const bool negative = c.sign() < 0 && c.is_rational();
            if (!out.empty()) out += negative ? " - " : " + ";
            else if (negative) out += "-";
            if (negative) cs.erase(0, 1);
            if (!c.is_rational()) cs = "(" + cs + ")";
            if (m.is_one()) {
                out += cs;
            } else {
                if (cs != "1") out += cs + "*";
                out += m.to_string();
            }
        }
        return out;
    }

    friend bool operator==(const SparsePoly&, const SparsePoly&) = default;
    friend std::ostream& operator<<(std::ostream& os, const SparsePoly& p) { return os << p.to_string(); }

private:
    TermMap terms_;
};

}  // namespace rgfp
