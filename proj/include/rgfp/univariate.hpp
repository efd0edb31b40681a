#pragma once

// Dense univariate polynomials over Q(sqrt3): the helpers behind root-order
// extraction, Sturm sequences and root isolation on [0, 1].

#include "rgfp/sparse_poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rgfp::uni {

/// Coefficients in increasing degree; canonical form has a nonzero last entry.
using Poly = std::vector<ExactScalar>;

inline void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

/// Dense view of a polynomial in the single variable `v`.
inline Poly from_sparse(const SparsePoly& sp, Var v) {
    Poly p;
    for (const auto& [m, c] : sp.terms()) {
        if (m.without(v) != Monomial{}) throw std::invalid_argument("polynomial is not univariate in " + std::string(name(v)));
        const unsigned e = m.exp(v);
        if (p.size() <= e) p.resize(e + 1);
        p[e] += c;
    }
    trim(p);
    return p;
}

inline SparsePoly to_sparse(const Poly& p, Var v) {
    SparsePoly r;
    for (std::size_t i = 0; i < p.size(); ++i) r.add_term(Monomial::of(v, static_cast<unsigned>(i)), p[i]);
    return r;
}

inline ExactScalar eval(const Poly& p, const ExactScalar& t) {
    ExactScalar acc;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc *= t;
        acc += *it;
    }
    return acc;
}

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * ExactScalar(static_cast<long>(i)));
    trim(d);
    return d;
}

/// Euclidean division: returns (quotient, remainder).
inline std::pair<Poly, Poly> divmod(Poly n, const Poly& d) {
    if (d.empty()) throw std::domain_error("uni::divmod: zero divisor");
    trim(n);
    Poly q;
    if (n.size() < d.size()) return {q, n};
    q.assign(n.size() - d.size() + 1, ExactScalar(0));
    const ExactScalar lead_inv = d.back().inverse();
    for (int k = degree(n) - degree(d); k >= 0; --k) {
        const ExactScalar c = n[static_cast<std::size_t>(k) + d.size() - 1] * lead_inv;
        q[static_cast<std::size_t>(k)] = c;
        if (c.is_zero()) continue;
        for (std::size_t j = 0; j < d.size(); ++j) n[static_cast<std::size_t>(k) + j] -= c * d[j];
    }
    trim(n);
    trim(q);
    return {q, n};
}

inline Poly monic(Poly p) {
    trim(p);
    if (p.empty()) return p;
    const ExactScalar inv = p.back().inverse();
    for (auto& c : p) c *= inv;
    return p;
}

inline Poly gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline Poly square_free_part(const Poly& p) {
    Poly g = gcd(p, derivative(p));
    return divmod(p, g).first;
}

/// Sturm chain p, p', -rem(p, p'), ...
inline std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain{p, derivative(p)};
    while (!chain.back().empty()) {
        Poly r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    if (chain.back().empty()) chain.pop_back();
    return chain;
}

inline int sign_variations(const std::vector<Poly>& chain, const ExactScalar& t) {
    int variations = 0;
    int last = 0;
    for (const auto& p : chain) {
        const int s = eval(p, t).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

/// Isolating intervals (lo, hi] for the distinct roots of `p` in (lo, hi).
/// Endpoints are never roots; `p(lo)` and `p(hi)` must be nonzero.
inline std::vector<std::pair<ExactScalar, ExactScalar>> isolate_roots(const Poly& p, const ExactScalar& lo,
                                                                     const ExactScalar& hi) {
    std::vector<std::pair<ExactScalar, ExactScalar>> out;
    const Poly sf = square_free_part(p);
    if (degree(sf) < 1) return out;
    const auto chain = sturm_chain(sf);
    std::vector<std::pair<ExactScalar, ExactScalar>> stack{{lo, hi}};
    const ExactScalar half = ExactScalar::rational(1, 2);
    while (!stack.empty()) {
        auto [l, u] = stack.back();
        stack.pop_back();
        const int count = sign_variations(chain, l) - sign_variations(chain, u);
        if (count == 0) continue;
        if (count == 1) {
            out.emplace_back(l, u);
            continue;
        }
        ExactScalar mid = (l + u) * half;
        while (eval(sf, mid).is_zero()) mid = (l + mid) * half;
        stack.emplace_back(mid, u);
        stack.emplace_back(l, mid);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace rgfp::uni
