#pragma once

// The Jacobian of (x, z) -> (G, F), the polynomial e(x, z) bounding it from
// below, the tabulated split e = e_c + e_r, and (z, s) certificates for e - e_c.

#include "rgfp/conditions.hpp"
#include "rgfp/expr_parser.hpp"
#include "rgfp/model.hpp"
#include "rgfp/slice_certificate.hpp"
#include "rgfp/tabulated.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgfp {

/// The tabulated remainder has a negative coefficient after expansion.
class TranscriptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Pieces shared by J_GF and e, all in (x, z) and possibly parameters.
struct StripParts {
    SparsePoly xs, ys, r;
    SparsePoly xs_x, xs_z, ys_x, ys_z;
    SparsePoly xgx;  // x * dX~/dx - X~, i.e. x^2 dG/dx

    explicit StripParts(const ModelAlgebra& alg)
        : xs(alg.X_strip()), ys(alg.Y_strip()), r(alg.R()) {
        xs_x = xs.partial_derivative(Var::x);
        xs_z = xs.partial_derivative(Var::z);
        ys_x = ys.partial_derivative(Var::x);
        ys_z = ys.partial_derivative(Var::z);
        xgx = SparsePoly::var(Var::x) * xs_x - xs;
    }

    /// x^2 Y~^2 J_GF.
    SparsePoly jacobian_numerator() const {
        const SparsePoly x = SparsePoly::var(Var::x);
        const SparsePoly z = SparsePoly::var(Var::z);
        const SparsePoly xs2 = xs * xs;
        const SparsePoly fz = xs2 * ys + (z * xs * xs_z * ys).scaled(2) - z * xs2 * ys_z;
        const SparsePoly fx = (xs * xs_x * ys).scaled(2) - xs2 * ys_x;
        return xgx * fz - x * z * xs_z * fx;
    }
};

inline SparsePoly one_minus_z() { return SparsePoly(1) - SparsePoly::var(Var::z); }

}  // namespace detail

/// J_GF = G_x F_z - F_x G_z as numerator / denominator; the denominator
/// is x^2 Y(x, x^2 z)^2 with common monomial content removed.
inline RationalFunction compute_JGF(const ModelAlgebra& alg) {
    const detail::StripParts p(alg);
    const SparsePoly den = SparsePoly::var(Var::x, 2) * p.ys * p.ys;
    return RationalFunction::reduced(p.jacobian_numerator(), den);
}

inline RationalFunction compute_JGF(const WModel& m) { return compute_JGF(ModelAlgebra(m)); }

/// e(x, z) = (1 - z) x^2 Y~^2 / X~^2 * (J_GF - F (1 - F) / (z (1 - z)) * G_x).
/// Built as (1 - z) N - X~^2 ((1 - z) X~^2 - R)(x X~_x - X~), then divided
/// exactly by X~^2.
inline SparsePoly compute_e(const ModelAlgebra& alg) {
    if (alg.model().mode() != ModelMode::restricted)
        throw ModeError("compute_e: restricted-mode model required");
    const detail::StripParts p(alg);
    const SparsePoly s = detail::one_minus_z();
    const SparsePoly xs2 = p.xs * p.xs;
    const SparsePoly numerator = s * p.jacobian_numerator() - xs2 * (s * xs2 - p.r) * p.xgx;
    auto e = numerator.divide_exact(xs2);
    if (!e) throw ExactDivisionError("e(x, z): numerator is not divisible by X(x, x^2 z)^2");
    return *e;
}

inline SparsePoly compute_e(const WModel& m) { return compute_e(ModelAlgebra(m)); }

/// Symbolic e over the twelve coefficients.
inline SparsePoly compute_e_symbolic() { return compute_e(WModel::symbolic()); }

/// e_c with R5..R10 expanded, in x, z, s and the coefficients.
inline SparsePoly build_ec() {
    const auto& rn = rn_formulas();
    Bindings b;
    for (std::size_t i = 0; i < rn.size(); ++i) b.emplace("R" + std::to_string(i + 5), rn[i]);
    return parse_poly(tabulated::kDisplayedPart, b);
}

/// e_r = sum C[n] x^n; every coefficient is checked to be non-negative.
inline SparsePoly build_er() {
    SparsePoly er;
    for (const auto& [n, text] : tabulated::kRemainderTable) {
        const SparsePoly c = parse_poly(text);
        if (!c.all_coefficients_nonneg())
            throw TranscriptionError("tabulated entry C[" + std::to_string(n) + "] has a negative coefficient");
        er += c.times_monomial(Monomial::of(Var::x, static_cast<unsigned>(n)));
    }
    return er;
}

inline SparsePoly with_s_eliminated(const SparsePoly& p) { return p.substitute(Var::s, detail::one_minus_z()); }

/// Numeric instance of a parametric polynomial.
inline SparsePoly at_parameters(const SparsePoly& p, const WModel& m) {
    return p.substitute_values(parameter_values(m));
}

/// e - (e_c + e_r) with s = 1 - z at one numeric model.
inline SparsePoly identity_difference(const WModel& m) {
    return compute_e(m) - at_parameters(with_s_eliminated(build_ec() + build_er()), m);
}

struct IdentityTrial {
    std::size_t index = 0;
    WModel::Coefficients parameters;
    bool equal = true;
    std::vector<std::string> differing_monomials;  // at most kMaxListed, in monomial order
};

struct IdentityReport {
    std::uint64_t seed = 0;
    std::vector<IdentityTrial> trials;

    static constexpr std::size_t kMaxListed = 20;

    std::size_t mismatches() const {
        std::size_t n = 0;
        for (const auto& t : trials) n += t.equal ? 0 : 1;
        return n;
    }
    bool all_equal() const { return mismatches() == 0; }
};

namespace detail {

inline std::vector<std::string> list_terms(const SparsePoly& diff, std::size_t limit) {
    std::vector<std::string> out;
    for (const auto& [m, c] : diff.terms()) {
        if (out.size() == limit) break;
        out.push_back(c.to_string() + " * " + m.to_string());
    }
    return out;
}

}  // namespace detail

/// Compares e with e_c + e_r at random rational coefficient values
/// (numerators in [0, 7], a in [1, 7], denominators in [1, 7]).
inline IdentityReport verify_identity_randomized(std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("verify_identity_randomized: trials must be at least 1");
    const SparsePoly rhs = with_s_eliminated(build_ec() + build_er());
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(0, 7), pos(1, 7), den(1, 7);
    IdentityReport rep;
    rep.seed = seed;
    for (std::size_t t = 0; t < trials; ++t) {
        WModel::Coefficients c;
        c[0] = ExactScalar::rational(pos(rng), den(rng));
        for (std::size_t i = 1; i < c.size(); ++i) c[i] = ExactScalar::rational(num(rng), den(rng));
        const WModel m = WModel::restricted(c);
        const SparsePoly diff = compute_e(m) - at_parameters(rhs, m);
        IdentityTrial trial{t, c, diff.is_zero(), {}};
        if (!trial.equal) trial.differing_monomials = detail::list_terms(diff, IdentityReport::kMaxListed);
        rep.trials.push_back(std::move(trial));
    }
    return rep;
}

/// e - (e_c + e_r) with s = 1 - z over the full coefficient ring.
inline SparsePoly verify_identity_symbolic() {
    return compute_e_symbolic() - with_s_eliminated(build_ec() + build_er());
}

struct IndependentCertificate {
    SparsePoly target;  // e - e_c with s = 1 - z
    CertifyOutcome outcome;
    unsigned min_x_power = 0;
    unsigned max_x_power = 0;
    std::optional<ExactScalar> a4_x9_zs2;  // coefficient of a^4 x^9 z s^2 in the certificate
};

/// Certifies e - e_c in Q>=0[coefficients, x, z, s] without using e_r.
inline IndependentCertificate certify_independent(std::optional<unsigned> max_elevation = std::nullopt,
                                                  unsigned jobs = 1) {
    IndependentCertificate out;
    out.target = compute_e_symbolic() - with_s_eliminated(build_ec());
    if (!out.target.is_zero()) {
        out.min_x_power = out.target.min_degree_in(Var::x);
        out.max_x_power = out.target.degree_in(Var::x);
    }
    out.outcome = certify_slices(out.target, Provenance::independent, max_elevation, jobs);
    if (out.outcome.certificate) {
        const Certificate& cert = *out.outcome.certificate;
        if (cert.expand() != out.target) throw std::logic_error("independent certificate does not reproduce e - e_c");
        const Monomial key = Monomial::of(Var::a, 4) * Monomial::of(Var::x, 9);
        for (const auto& t : cert.terms)
            if (t.key == key && t.z_exp == 1 && t.s_exp == 2) out.a4_x9_zs2 = t.coeff;
    }
    return out;
}

}  // namespace rgfp
