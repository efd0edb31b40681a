#pragma once

// binary64 evaluation of exact polynomials in two variables.

#include "rgfp/sparse_poly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace rgfp {

/// A polynomial in two coordinate variables with coefficients rounded to
/// binary64.  Evaluation uses power tables and a compensated term sum.
class CompiledPoly2 {
public:
    CompiledPoly2() = default;

    CompiledPoly2(const SparsePoly& p, Var u, Var v) {
        for (const auto& [m, c] : p.terms()) {
            if (m.without(u).without(v) != Monomial())
                throw std::invalid_argument("CompiledPoly2: unexpected variable in " + m.to_string());
            terms_.push_back({m.exp(u), m.exp(v), c.to_double()});
            max_u_ = std::max(max_u_, m.exp(u));
            max_v_ = std::max(max_v_, m.exp(v));
        }
    }

    double operator()(double u, double v) const {
        thread_local std::vector<double> pu, pv;
        fill_powers(pu, u, max_u_);
        fill_powers(pv, v, max_v_);
        CompensatedSum acc;
        for (const auto& t : terms_) acc.add(t.coeff * pu[t.eu] * pv[t.ev]);
        return acc.value();
    }

    bool empty() const noexcept { return terms_.empty(); }

private:
    struct Term {
        unsigned eu, ev;
        double coeff;
    };

    static void fill_powers(std::vector<double>& out, double base, unsigned n) {
        out.resize(n + 1);
        out[0] = 1.0;
        for (unsigned k = 1; k <= n; ++k) out[k] = out[k - 1] * base;
    }

    std::vector<Term> terms_;
    unsigned max_u_ = 0;
    unsigned max_v_ = 0;
};

}  // namespace rgfp
