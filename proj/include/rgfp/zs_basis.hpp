#pragma once

// Rewriting a polynomial in z as a non-negative combination of z^i (1-z)^j.
//
// Procedure: strip the exact root orders at z = 0 and z = 1, decide exactly
// (Sturm sequences over Q(sqrt3)) whether the cofactor has a zero or a sign
// change on [0, 1], and otherwise raise the degree of the basis
// {z^k (1-z)^(N-k)} until every coefficient is non-negative.  Coefficients
// are reported without binomial normalisation.

#include "rgfp/sparse_poly.hpp"
#include "rgfp/univariate.hpp"

#include <gmpxx.h>

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace rgfp {

/// One term c * z^z_exp * s^s_exp, where s stands for 1 - z.
struct ZsTerm {
    unsigned z_exp = 0;
    unsigned s_exp = 0;
    ExactScalar coeff;

    friend bool operator==(const ZsTerm&, const ZsTerm&) = default;
    friend std::ostream& operator<<(std::ostream& os, const ZsTerm& t) {
        return os << t.coeff << "*z^" << t.z_exp << "*s^" << t.s_exp;
    }
};

struct ZsRepresentation {
    std::vector<ZsTerm> terms;   // sorted by (z_exp, s_exp), coefficients > 0
    unsigned root_order_zero = 0;
    unsigned root_order_one = 0;
    unsigned elevation_degree = 0;  // total degree N of the basis that succeeded

    /// Expands the representation with s = 1 - z.
    SparsePoly expand() const {
        SparsePoly r;
        const SparsePoly z = SparsePoly::var(Var::z);
        const SparsePoly s = SparsePoly(1) - z;
        for (const auto& t : terms) r += (z.pow(t.z_exp) * s.pow(t.s_exp)).scaled(t.coeff);
        return r;
    }

    /// The same representation as a polynomial in the formal variables z and s.
    SparsePoly as_zs_poly() const {
        SparsePoly r;
        for (const auto& t : terms) {
            Monomial m = Monomial::of(Var::z, t.z_exp);
            m.set(Var::s, t.s_exp);
            r.add_term(m, t.coeff);
        }
        return r;
    }
};

enum class ZsFailureKind {
    inconclusive,      // elevation cap reached; polynomial is strictly positive but needs larger N
    sign_change,       // polynomial is negative somewhere in (0, 1)
    interior_zero,     // non-negative but vanishes inside (0, 1): no representation exists
};

inline const char* to_string(ZsFailureKind k) {
    switch (k) {
        case ZsFailureKind::inconclusive: return "inconclusive";
        case ZsFailureKind::sign_change: return "sign-change";
        case ZsFailureKind::interior_zero: return "interior-zero";
    }
    return "?";
}

struct ZsFailure {
    ZsFailureKind kind = ZsFailureKind::inconclusive;
    unsigned elevation_reached = 0;
    std::optional<ExactScalar> witness_z;      // point in (0,1) with negative value (sign_change)
    std::optional<ExactScalar> witness_value;

    bool definitive() const noexcept { return kind != ZsFailureKind::inconclusive; }
};

using ZsResult = std::variant<ZsRepresentation, ZsFailure>;

inline unsigned default_max_elevation(const SparsePoly& p) { return p.degree_in(Var::z) + 64; }

namespace detail {

inline ExactScalar binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return ExactScalar(mpq_class(r));
}

// Divides p by (1 - z) as long as p(1) == 0.
inline unsigned strip_root_at_one(uni::Poly& p) {
    unsigned m = 0;
    const uni::Poly one_minus_z{ExactScalar(1), ExactScalar(-1)};
    while (!p.empty() && uni::eval(p, ExactScalar(1)).is_zero()) {
        p = uni::divmod(p, one_minus_z).first;
        ++m;
    }
    return m;
}

// Finds a rational t in (0, 1) with q(t) < 0 by halving towards `edge`.
inline ExactScalar walk_to_negative(const uni::Poly& q, const ExactScalar& edge) {
    const ExactScalar half = ExactScalar::rational(1, 2);
    ExactScalar t = half;
    while (uni::eval(q, t).sign() >= 0) t = (t + edge) * half;
    return t;
}

}  // namespace detail

/// `p` must involve only the variable z.  `max_elevation` caps the total
/// degree of the basis; the default is deg(p) + 64.
inline ZsResult rewrite_nonneg_zs(const SparsePoly& p, std::optional<unsigned> max_elevation = std::nullopt) {
    const unsigned cap = max_elevation.value_or(default_max_elevation(p));
    if (p.is_zero()) return ZsRepresentation{};

    uni::Poly q = uni::from_sparse(p, Var::z);
    unsigned k = 0;
    while (q.front().is_zero()) {
        q.erase(q.begin());
        ++k;
    }
    const unsigned m = detail::strip_root_at_one(q);

    // q(0) and q(1) are nonzero now.
    const ExactScalar zero(0);
    const ExactScalar one(1);
    if (uni::eval(q, zero).sign() < 0) {
        const ExactScalar t = detail::walk_to_negative(q, zero);
        return ZsFailure{ZsFailureKind::sign_change, 0, t, uni::eval(uni::from_sparse(p, Var::z), t)};
    }
    if (uni::eval(q, one).sign() < 0) {
        const ExactScalar t = detail::walk_to_negative(q, one);
        return ZsFailure{ZsFailureKind::sign_change, 0, t, uni::eval(uni::from_sparse(p, Var::z), t)};
    }
    const auto roots = uni::isolate_roots(q, zero, one);
    if (!roots.empty()) {
        for (const auto& [lo, hi] : roots) {
            for (const auto& t : {lo, hi}) {
                if (t.sign() > 0 && t < one && uni::eval(q, t).sign() < 0)
                    return ZsFailure{ZsFailureKind::sign_change, 0, t, uni::eval(uni::from_sparse(p, Var::z), t)};
            }
        }
        return ZsFailure{ZsFailureKind::interior_zero, 0, std::nullopt, std::nullopt};
    }

    // q > 0 on [0, 1]: elevation terminates for large enough N.
    const unsigned d = static_cast<unsigned>(uni::degree(q));
    unsigned n = d;
    for (; n + k + m <= cap; ++n) {
        std::vector<ExactScalar> c(n + 1);
        bool ok = true;
        for (unsigned j = 0; j <= n && ok; ++j) {
            ExactScalar acc;
            for (unsigned i = 0; i <= std::min(j, d); ++i)
                if (!q[i].is_zero()) acc += q[i] * detail::binomial(n - i, j - i);
            if (acc.sign() < 0) ok = false;
            c[j] = std::move(acc);
        }
        if (!ok) continue;
        ZsRepresentation rep;
        rep.root_order_zero = k;
        rep.root_order_one = m;
        rep.elevation_degree = n + k + m;
        for (unsigned j = 0; j <= n; ++j)
            if (!c[j].is_zero()) rep.terms.push_back({j + k, n - j + m, c[j]});
        return rep;
    }
    return ZsFailure{ZsFailureKind::inconclusive, cap, std::nullopt, std::nullopt};
}

}  // namespace rgfp
