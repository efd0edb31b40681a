#pragma once

// Exact arithmetic in the quadratic field Q(sqrt3).
//
// A value is r + q*sqrt3 with r, q arbitrary-precision rationals (GMP mpq).
// Every operation keeps both parts canonical (lowest terms, positive
// denominator), so equality is structural.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rgfp {

class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(long v) : r_(v) {}  // NOLINT(google-explicit-constructor)
    ExactScalar(int v) : r_(v) {}   // NOLINT(google-explicit-constructor)
    explicit ExactScalar(mpq_class r, mpq_class q = 0) : r_(std::move(r)), q_(std::move(q)) {
        r_.canonicalize();
        q_.canonicalize();
    }

    static ExactScalar rational(long num, long den = 1) {
        if (den == 0) throw std::domain_error("ExactScalar: zero denominator");
        return ExactScalar(mpq_class(num, den));
    }
    static ExactScalar sqrt3(const mpq_class& q = 1) { return ExactScalar(mpq_class(0), q); }

    const mpq_class& rational_part() const noexcept { return r_; }
    const mpq_class& sqrt3_part() const noexcept { return q_; }

    bool is_zero() const noexcept { return sgn(r_) == 0 && sgn(q_) == 0; }
    bool is_rational() const noexcept { return sgn(q_) == 0; }

    /// Exact sign of r + q*sqrt3: compare r^2 against 3 q^2 when the signs disagree.
    int sign() const {
        const int sr = sgn(r_);
        const int sq = sgn(q_);
        if (sq == 0) return sr;
        if (sr == 0) return sq;
        if (sr == sq) return sr;
        const mpq_class lhs = r_ * r_;
        const mpq_class rhs = 3 * q_ * q_;
        const int c = cmp(lhs, rhs);
        if (c == 0) return 0;  // unreachable for rational r, q; sqrt3 is irrational
        return c > 0 ? sr : sq;
    }
    bool is_nonneg() const { return sign() >= 0; }
    bool is_positive() const { return sign() > 0; }

    double to_double() const {
        return r_.get_d() + q_.get_d() * 1.7320508075688772935;
    }

    ExactScalar operator-() const { return ExactScalar(mpq_class(-r_), mpq_class(-q_)); }

    ExactScalar& operator+=(const ExactScalar& o) {
        r_ += o.r_;
        if (sgn(o.q_) != 0) q_ += o.q_;
        return *this;
    }
    ExactScalar& operator-=(const ExactScalar& o) {
        r_ -= o.r_;
        if (sgn(o.q_) != 0) q_ -= o.q_;
        return *this;
    }
    ExactScalar& operator*=(const ExactScalar& o) {
        if (is_rational() && o.is_rational()) {
            r_ *= o.r_;
            return *this;
        }
        mpq_class nr = r_ * o.r_ + 3 * q_ * o.q_;
        mpq_class nq = r_ * o.q_ + q_ * o.r_;
        r_ = std::move(nr);
        q_ = std::move(nq);
        return *this;
    }
    ExactScalar& operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

    /// (r - q sqrt3) / (r^2 - 3 q^2); the norm never vanishes for nonzero values.
    ExactScalar inverse() const {
        if (is_zero()) throw std::domain_error("ExactScalar: division by zero");
        if (is_rational()) return ExactScalar(mpq_class(1 / r_));
        const mpq_class norm = r_ * r_ - 3 * q_ * q_;
        return ExactScalar(mpq_class(r_ / norm), mpq_class(-q_ / norm));
    }

    ExactScalar pow(unsigned n) const {
        ExactScalar result(1);
        ExactScalar base = *this;
        while (n != 0) {
            if (n & 1U) result *= base;
            n >>= 1U;
            if (n != 0) base *= base;
        }
        return result;
    }

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.r_ == b.r_ && a.q_ == b.q_;
    }
    friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
        const int s = (a - b).sign();
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Canonical text: "p/q", "r/s*sqrt3" or "p/q+r/s*sqrt3" (sqrt3 part signed).
    std::string to_string(std::string_view sqrt3_token = "sqrt3") const {
        if (is_rational()) return r_.get_str();
        std::string out;
        if (sgn(r_) != 0) out = r_.get_str();
        std::string qs = q_.get_str();
        if (!out.empty() && sgn(q_) > 0) out += '+';
        out += qs;
        out += '*';
        out += sqrt3_token;
        return out;
    }

    /// Parses "p", "p/q", "p/q sqrt3", "p/q*sqrt3", "sqrt3", and sums/differences
    /// of one rational and one sqrt3 part, e.g. "1/2 + 3/4 sqrt3".
    static ExactScalar parse(std::string_view text);

    friend std::ostream& operator<<(std::ostream& os, const ExactScalar& v) {
        return os << v.to_string();
    }

private:
    mpq_class r_{0};
    mpq_class q_{0};
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline mpq_class parse_rational(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : text) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
            throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    }
    std::string s(text);
    if (s.front() == '+') s.erase(0, 1);
    auto slash = s.find('/');
    if (slash != std::string::npos && (slash == 0 || slash + 1 == s.size()))
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

// One signed summand: rational, or rational followed by sqrt3 (optionally '*').
inline void add_summand(std::string_view part, int sign, mpq_class& r, mpq_class& q) {
    part = trim(part);
    if (part.empty()) throw std::invalid_argument("empty summand");
    constexpr std::string_view tok = "sqrt3";
    if (part.size() >= tok.size() && part.substr(part.size() - tok.size()) == tok) {
        std::string_view head = trim(part.substr(0, part.size() - tok.size()));
        if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
        mpq_class c = head.empty() ? mpq_class(1) : parse_rational(head);
        q += sign * c;
    } else {
        r += sign * parse_rational(part);
    }
}

}  // namespace detail

inline ExactScalar ExactScalar::parse(std::string_view text) {
    text = detail::trim(text);
    if (text.empty()) throw std::invalid_argument("empty scalar literal");
    mpq_class r = 0;
    mpq_class q = 0;
    int sign = 1;
    std::size_t start = 0;
    if (text.front() == '-' || text.front() == '+') {
        sign = text.front() == '-' ? -1 : 1;
        start = 1;
    }
    std::size_t count = 0;
    for (std::size_t i = start; i <= text.size(); ++i) {
        if (i == text.size() || ((text[i] == '+' || text[i] == '-') && i > start)) {
            detail::add_summand(text.substr(start, i - start), sign, r, q);
            ++count;
            if (i < text.size()) {
                sign = text[i] == '-' ? -1 : 1;
                start = i + 1;
            }
        }
    }
    if (count > 2) throw std::invalid_argument("too many summands in scalar literal");
    return ExactScalar(r, q);
}

}  // namespace rgfp
