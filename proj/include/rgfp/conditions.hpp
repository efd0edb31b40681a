#pragma once

// Membership tests for the two model classes.  Each check produces a
// status plus witnesses explaining a failure.

#include "rgfp/errors.hpp"
#include "rgfp/expr_parser.hpp"
#include "rgfp/model.hpp"
#include "rgfp/slice_certificate.hpp"
#include "rgfp/univariate.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace rgfp {

enum class Status { pass, fail, inconclusive };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

struct CheckEntry {
    std::string name;
    Status status = Status::pass;
    std::vector<std::string> witnesses;
};

struct ConditionReport {
    std::vector<CheckEntry> checks;
    std::optional<std::array<ExactScalar, 6>> r_values;  // R5..R10
    std::optional<int> degree_gap;
    std::optional<unsigned> elevation_degree;
    std::optional<WModel> reconstructed;

    void add(std::string name, Status status, std::vector<std::string> witnesses = {}) {
        if (status == Status::fail && witnesses.empty()) throw std::logic_error("failed check without witness");
        checks.push_back({std::move(name), status, std::move(witnesses)});
    }

    /// fail if any check failed, else inconclusive if any was, else pass.
    Status status() const {
        Status s = Status::pass;
        for (const auto& c : checks) {
            if (c.status == Status::fail) return Status::fail;
            if (c.status == Status::inconclusive) s = Status::inconclusive;
        }
        return s;
    }

    const CheckEntry* find(std::string_view name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    void merge(const ConditionReport& o) {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
        if (o.r_values) r_values = o.r_values;
        if (o.degree_gap) degree_gap = o.degree_gap;
        if (o.elevation_degree) elevation_degree = o.elevation_degree;
        if (o.reconstructed) reconstructed = o.reconstructed;
    }
};

namespace detail {

inline std::string xy_name(unsigned i, unsigned j) {
    std::string s;
    if (i) s += "x^" + std::to_string(i);
    if (j) s += std::string(s.empty() ? "" : " ") + "y^" + std::to_string(j);
    return s.empty() ? "1" : s;
}

inline ExactScalar abs(const ExactScalar& v) { return v.sign() < 0 ? -v : v; }

/// Exact test that a univariate polynomial is > 0 on (0, inf).
inline bool positive_on_half_line(uni::Poly p) {
    uni::trim(p);
    if (p.empty()) return false;
    while (p.front().is_zero()) p.erase(p.begin());
    if (p.front().sign() < 0 || p.back().sign() < 0) return false;
    if (p.size() == 1) return true;
    ExactScalar bound(1);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, abs(p[i] / p.back()));
    bound += ExactScalar(1);
    return uni::isolate_roots(p, ExactScalar(0), bound).empty();
}

}  // namespace detail

/// R5..R10 as polynomials in the twelve coefficients.
inline const std::array<SparsePoly, 6>& rn_formulas() {
    static const std::array<SparsePoly, 6> formulas = {
        parse_poly("24 a b - g5 - 2 h3"),
        parse_poly("16 b^2 + 30 a f5 - 2 h4"),
        parse_poly("216 a^3 + 40 b f5 + 36 a f6 - 3 n3"),
        parse_poly("288 a^2 b + 25 f5^2 + 48 b f6 + 30 a g5 + 18 a h3 - 5 a05 - 4 a24"),
        parse_poly("360 a^2 f5 + 60 f5 f6 + 40 b g5 + 24 b h3 + 24 a h4 - 5 a15"),
        parse_poly("648 a^4 + 216 a^2 f6 + 18 f6^2 + 25 f5 g5 + 15 f5 h3 + 16 b h4 + 9 a n3 - 3 a06"),
    };
    return formulas;
}

/// Positive factors relating R_n to the x^n coefficient of R(x, 1).
inline constexpr std::array<int, 6> kRnScale = {1, 1, 1, 1, 1, 2};

inline std::map<Var, ExactScalar> parameter_values(const WModel& m) {
    std::map<Var, ExactScalar> out;
    for (std::size_t i = 0; i < kParamVars.size(); ++i) out[kParamVars[i]] = m.coefficients()[i];
    return out;
}

inline std::array<ExactScalar, 6> compute_Rn(const WModel& m) {
    if (m.mode() != ModelMode::restricted) throw ModeError("compute_Rn: restricted-mode model required");
    const auto values = parameter_values(m);
    std::array<ExactScalar, 6> out;
    for (std::size_t i = 0; i < 6; ++i) out[i] = rn_formulas()[i].evaluate(values);
    return out;
}

inline ConditionReport check_R510(const WModel& m) {
    ConditionReport rep;
    const auto rn = compute_Rn(m);
    rep.r_values = rn;
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < 6; ++i)
        if (rn[i].sign() < 0) bad.push_back("R" + std::to_string(i + 5) + " = " + rn[i].to_string());
    const Status status = bad.empty() ? Status::pass : Status::fail;
    rep.add("R5..R10 non-negative", status, std::move(bad));
    return rep;
}

/// Coefficient signs, minimal degree, the x^3 term and an x^n y term (n >= 2).
inline ConditionReport check_basic(const WModel& m) {
    ConditionReport rep;
    const SparsePoly w = m.polynomial();
    std::vector<std::string> negative, low_degree;
    bool has_x3 = false, has_xny = false;
    for (const auto& [mono, c] : w.terms()) {
        const unsigned i = mono.exp(Var::x), j = mono.exp(Var::y);
        if (c.sign() <= 0) negative.push_back(detail::xy_name(i, j));
        if (i + j < 3) low_degree.push_back(detail::xy_name(i, j));
        if (i == 3 && j == 0) has_x3 = true;
        if (i >= 2 && j == 1) has_xny = true;
    }
    rep.add("positive coefficients", negative.empty() ? Status::pass : Status::fail, negative);
    rep.add("total degree >= 3", low_degree.empty() ? Status::pass : Status::fail, low_degree);
    rep.add("x^3 term present", has_x3 ? Status::pass : Status::fail,
            has_x3 ? std::vector<std::string>{} : std::vector<std::string>{"coefficient of x^3 is 0"});
    rep.add("x^n y term present (n >= 2)", has_xny ? Status::pass : Status::fail,
            has_xny ? std::vector<std::string>{} : std::vector<std::string>{"no x^n y term with n >= 2"});
    return rep;
}

/// R / Y(x, x^2 z) = O(x) uniformly in z in [0, 1].
inline ConditionReport check_O_x(const ModelAlgebra& alg) {
    ConditionReport rep;
    const SparsePoly& ys = alg.Y_strip();
    const SparsePoly& r = alg.R();
    const std::string name = "R/Y = O(x)";
    if (ys.is_zero()) {
        rep.add(name, Status::fail, {"Y(x, x^2 z) vanishes identically"});
        return rep;
    }
    const unsigned ky = ys.min_degree_in(Var::x);
    const SparsePoly lead = ys.coefficient_of(Var::x, ky);
    std::vector<std::string> witnesses;
    if (!r.is_zero()) {
        const unsigned kr = r.min_degree_in(Var::x);
        rep.degree_gap = static_cast<int>(kr) - static_cast<int>(ky);
        if (kr < ky + 1)
            witnesses.push_back("residual x^" + std::to_string(kr) + " term in R: (" +
                                r.coefficient_of(Var::x, kr).to_string() + ") x^" + std::to_string(kr));
    }
    // The x-minimal coefficient of Y(x, x^2 z) must stay away from 0 on [0, 1].
    const auto lead_rep = rewrite_nonneg_zs(lead);
    const bool lead_ok = std::holds_alternative<ZsRepresentation>(lead_rep) &&
                         lead.evaluate({{Var::z, ExactScalar(0)}}).is_positive() &&
                         lead.evaluate({{Var::z, ExactScalar(1)}}).is_positive();
    if (!lead_ok) {
        if (std::holds_alternative<ZsFailure>(lead_rep) && !std::get<ZsFailure>(lead_rep).definitive()) {
            rep.add(name, Status::inconclusive);
            return rep;
        }
        witnesses.push_back("x^" + std::to_string(ky) + " coefficient of Y(x, x^2 z) is not bounded away from 0: " +
                            lead.to_string());
    }
    rep.add(name, witnesses.empty() ? Status::pass : Status::fail, witnesses);
    return rep;
}

inline ConditionReport check_O_x(const WModel& m) { return check_O_x(ModelAlgebra(m)); }

/// Certificate for R(x, z) >= 0 in the (z, 1 - z) basis, one slice per x-power.
inline CertifyOutcome certify_R_nonneg(const ModelAlgebra& alg, std::optional<unsigned> max_elevation = std::nullopt,
                                       unsigned jobs = 1) {
    CertifyOutcome out = certify_slices(alg.R(), Provenance::independent, max_elevation, jobs);
    if (out.certificate && out.certificate->expand() != alg.R())
        throw std::logic_error("certificate for R does not reproduce R");
    return out;
}

inline CertifyOutcome certify_R_nonneg(const WModel& m, std::optional<unsigned> max_elevation = std::nullopt) {
    return certify_R_nonneg(ModelAlgebra(m), max_elevation);
}

namespace detail {

inline std::string describe(const SliceFailure& f) {
    std::string s = "slice " + f.key.to_string() + ": " + to_string(f.failure.kind);
    if (f.failure.witness_z)
        s += " (value " + f.failure.witness_value->to_string() + " at z = " + f.failure.witness_z->to_string() + ")";
    return s;
}

/// Looks for a rational (x, z) in the strip where R < 0, guided by failing slices.
inline std::optional<std::pair<ExactScalar, ExactScalar>> find_negative_R(const SparsePoly& r,
                                                                          const std::vector<SliceFailure>& fails) {
    std::vector<ExactScalar> zs{ExactScalar(1), ExactScalar(0)};
    for (const auto& f : fails)
        if (f.failure.witness_z) zs.push_back(*f.failure.witness_z);
    for (const auto& z : zs) {
        const SparsePoly rx = r.substitute_values({{Var::z, z}});
        for (long k = -40; k <= 40; ++k) {
            // x = 2^(k/4) on a coarse geometric grid, rounded to a rational.
            const ExactScalar x(mpq_class(std::exp2(k / 4.0)));
            if (rx.evaluate({{Var::x, x}}).sign() < 0) return std::pair{x, z};
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Existence-class conditions: basic structure, invariance of the region
/// y <= x^2 with strict boundary inequality, the (z, s) certificate for R,
/// and the O(x) condition.
inline ConditionReport check_existence(const ModelAlgebra& alg, std::optional<unsigned> max_elevation = std::nullopt,
                                       unsigned jobs = 1) {
    ConditionReport rep = check_basic(alg.model());
    const CertifyOutcome cert = certify_R_nonneg(alg, max_elevation, jobs);
    const std::string cert_name = "R has a non-negative (z, 1-z) form";
    if (cert.success()) {
        rep.elevation_degree = cert.certificate->max_elevation_used;
        rep.add(cert_name, Status::pass);
    } else {
        std::vector<std::string> w;
        for (const auto& f : cert.failures) w.push_back(detail::describe(f));
        rep.add(cert_name, cert.definitive_failure() ? Status::fail : Status::inconclusive, w);
    }

    // Invariance of y <= x^2 is R >= 0 on the strip.
    const std::string inv_name = "region y <= x^2 invariant";
    if (cert.success()) {
        rep.add(inv_name, Status::pass);
    } else if (auto neg = detail::find_negative_R(alg.R(), cert.failures)) {
        rep.add(inv_name, Status::fail,
                {"R(" + neg->first.to_string() + ", " + neg->second.to_string() + ") < 0"});
    } else {
        rep.add(inv_name, Status::inconclusive);
    }

    const SparsePoly r1 = alg.R().substitute_values({{Var::z, ExactScalar(1)}});
    const bool strict = detail::positive_on_half_line(uni::from_sparse(r1, Var::x));
    rep.add("Y(x, x^2) < X(x, x^2)^2 for x > 0", strict ? Status::pass : Status::fail,
            strict ? std::vector<std::string>{} : std::vector<std::string>{"R(x, 1) = " + r1.to_string()});

    rep.merge(check_O_x(alg));
    return rep;
}

/// Restricted-family characterisation for a general term list.
inline ConditionReport check_fromgasket(const WModel& m, std::optional<unsigned> max_elevation = std::nullopt) {
    if (m.mode() != ModelMode::general) throw ModeError("check_fromgasket: general-mode model required");
    ConditionReport rep = check_existence(ModelAlgebra(m), max_elevation);
    std::vector<std::string> too_high, bad_y_degree, forbidden;
    for (const auto& [e, c] : m.terms()) {
        const unsigned d = e.x + e.y;
        if (d > 6) too_high.push_back(detail::xy_name(e.x, e.y));
        if (e.y > 0 && d != 5 && d != 6) bad_y_degree.push_back(detail::xy_name(e.x, e.y));
        if ((e.x == 1 && e.y == 4) || (e.x == 2 && e.y == 3)) forbidden.push_back(detail::xy_name(e.x, e.y));
    }
    rep.add("total degree <= 6", too_high.empty() ? Status::pass : Status::fail, too_high);
    rep.add("y-terms of total degree 5 or 6", bad_y_degree.empty() ? Status::pass : Status::fail, bad_y_degree);
    rep.add("x y^4 and x^2 y^3 absent", forbidden.empty() ? Status::pass : Status::fail, forbidden);

    if (rep.status() == Status::pass) {
        WModel::Coefficients c;
        const auto terms = m.terms();
        for (std::size_t i = 0; i < kRestrictedMonomials.size(); ++i) {
            const XYExponent e = kRestrictedMonomials[i];
            if (auto it = terms.find(e); it != terms.end()) c[i] = it->second;
        }
        WModel restricted = WModel::restricted(c);
        if (restricted.polynomial() != m.polynomial())
            throw std::logic_error("reconstructed restricted model differs from the term list");
        rep.reconstructed = std::move(restricted);
        rep.merge(check_R510(*rep.reconstructed));
    }
    return rep;
}

/// All checks applicable to the model's mode.
inline ConditionReport check_model(const WModel& m, std::optional<unsigned> max_elevation = std::nullopt,
                                   unsigned jobs = 1) {
    if (m.mode() == ModelMode::general) return check_fromgasket(m, max_elevation);
    ConditionReport rep = check_existence(ModelAlgebra(m), max_elevation, jobs);
    rep.merge(check_R510(m));
    return rep;
}

}  // namespace rgfp
