#pragma once

// Non-negative (z, s) certificates for polynomials in z and further
// variables.  The target is cut into slices, one per monomial in the
// other variables, and each slice (a polynomial in z alone) goes through
// rewrite_nonneg_zs.

#include "rgfp/sparse_poly.hpp"
#include "rgfp/zs_basis.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace rgfp {

enum class Provenance { appendix_crosscheck, independent };

inline const char* to_string(Provenance p) {
    return p == Provenance::independent ? "independent" : "appendix-crosscheck";
}

/// coeff * key * z^z_exp * s^s_exp, key a monomial in x and the parameters.
struct CertificateTerm {
    Monomial key;
    unsigned z_exp = 0;
    unsigned s_exp = 0;
    ExactScalar coeff;
};

struct Certificate {
    std::vector<CertificateTerm> terms;
    Provenance provenance = Provenance::independent;
    unsigned max_elevation_used = 0;
    std::map<Monomial, unsigned> elevation_by_slice;

    /// The certificate as a polynomial in the formal variable s.
    SparsePoly as_zs_poly() const {
        SparsePoly r;
        for (const auto& t : terms) {
            Monomial m = t.key * Monomial::of(Var::z, t.z_exp);
            m.set(Var::s, t.s_exp);
            r.add_term(m, t.coeff);
        }
        return r;
    }

    /// Substitutes s = 1 - z and sums.
    SparsePoly expand() const { return as_zs_poly().substitute(Var::s, SparsePoly(1) - SparsePoly::var(Var::z)); }

    bool all_nonneg() const {
        return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.coeff.sign() >= 0; });
    }

    /// One line per term, "params | x-exp | z-exp | s-exp | coeff", sorted.
    std::string serialize() const {
        std::vector<std::string> lines;
        lines.reserve(terms.size());
        for (const auto& t : terms) {
            std::ostringstream os;
            os << t.key.without(Var::x).to_string() << " | " << t.key.exp(Var::x) << " | " << t.z_exp << " | "
               << t.s_exp << " | " << t.coeff.to_string();
            lines.push_back(os.str());
        }
        std::sort(lines.begin(), lines.end());
        std::string out;
        for (const auto& l : lines) out += l + "\n";
        return out;
    }
};

struct SliceFailure {
    Monomial key;
    SparsePoly slice;  // polynomial in z
    ZsFailure failure;
};

struct CertifyOutcome {
    std::optional<Certificate> certificate;
    std::vector<SliceFailure> failures;  // sorted by key
    std::size_t slice_count = 0;

    bool success() const noexcept { return certificate.has_value(); }
    bool definitive_failure() const {
        return std::any_of(failures.begin(), failures.end(), [](const auto& f) { return f.failure.definitive(); });
    }
};

/// Groups terms of `p` by their monomial with z removed.
inline std::map<Monomial, SparsePoly> z_slices(const SparsePoly& p) {
    std::map<Monomial, SparsePoly> out;
    for (const auto& [m, c] : p.terms()) out[m.without(Var::z)].add_term(Monomial::of(Var::z, m.exp(Var::z)), c);
    return out;
}

/// Certifies every slice of `target` (which must not contain s).  With
/// jobs > 1 the slices are processed concurrently; the result does not
/// depend on the number of jobs.
inline CertifyOutcome certify_slices(const SparsePoly& target, Provenance provenance,
                                     std::optional<unsigned> max_elevation = std::nullopt, unsigned jobs = 1) {
    for (const auto& [m, c] : target.terms())
        if (m.exp(Var::s) != 0) throw std::invalid_argument("certify_slices: target must be expanded in z");

    const auto slices = z_slices(target);
    std::vector<const std::pair<const Monomial, SparsePoly>*> order;
    for (const auto& kv : slices) order.push_back(&kv);
    std::vector<std::optional<ZsResult>> results(order.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < order.size(); i = next++)
            results[i] = rewrite_nonneg_zs(order[i]->second, max_elevation);
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(order.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    CertifyOutcome out;
    out.slice_count = order.size();
    Certificate cert;
    cert.provenance = provenance;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Monomial& key = order[i]->first;
        if (const auto* f = std::get_if<ZsFailure>(&*results[i])) {
            out.failures.push_back({key, order[i]->second, *f});
            continue;
        }
        const auto& rep = std::get<ZsRepresentation>(*results[i]);
        cert.elevation_by_slice[key] = rep.elevation_degree;
        cert.max_elevation_used = std::max(cert.max_elevation_used, rep.elevation_degree);
        for (const auto& t : rep.terms) cert.terms.push_back({key, t.z_exp, t.s_exp, t.coeff});
    }
    if (out.failures.empty()) out.certificate = std::move(cert);
    return out;
}

}  // namespace rgfp
