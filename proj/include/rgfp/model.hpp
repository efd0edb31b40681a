#pragma once

// Potentials W(x, y) with non-negative coefficients, their gradient maps,
// and the strip quantities obtained with y = x^2 z.

#include "rgfp/errors.hpp"
#include "rgfp/numeric.hpp"
#include "rgfp/sparse_poly.hpp"

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace rgfp {

enum class ModelMode { restricted, general };

inline const char* to_string(ModelMode m) { return m == ModelMode::restricted ? "restricted" : "general"; }

/// Exponent pair (i, j) of x^i y^j.
struct XYExponent {
    unsigned x = 0;
    unsigned y = 0;
    friend auto operator<=>(const XYExponent&, const XYExponent&) = default;
};

/// Monomial multiplied by each free coefficient of the restricted family,
/// in the order of kParamVars.  The x^4 y coefficient is 9 a^2.
inline constexpr std::array<XYExponent, 12> kRestrictedMonomials = {{
    {3, 0}, {4, 0}, {5, 0}, {6, 0},  // a b f5 f6
    {5, 1}, {3, 2}, {4, 2}, {3, 3},  // g5 h3 h4 n3
    {2, 4}, {0, 5}, {1, 5}, {0, 6},  // a24 a05 a15 a06
}};
inline constexpr XYExponent kDerivedMonomial{4, 1};

inline std::size_t param_slot(Var p) {
    if (!is_param(p)) throw std::invalid_argument("not a coefficient name: " + std::string(name(p)));
    return index(p) - index(Var::a);
}

template <class T>
struct Point2 {
    T x{};
    T y{};
};

template <class T>
struct StripPoint {
    T x{};
    T z{};
};

class WModel {
public:
    using Coefficients = std::array<ExactScalar, 12>;
    using TermList = std::map<XYExponent, ExactScalar>;

    /// Restricted family; throws InvalidModel on a negative coefficient or a <= 0.
    static WModel restricted(Coefficients c) {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i].sign() < 0)
                throw InvalidModel("coefficient " + std::string(name(kParamVars[i])) + " is negative");
        if (!c[0].is_positive()) throw InvalidModel("coefficient a must be positive");
        WModel m;
        m.mode_ = ModelMode::restricted;
        m.coeffs_ = std::move(c);
        return m;
    }

    /// Restricted family from named values; unnamed coefficients are 0.
    static WModel restricted(const std::map<Var, ExactScalar>& named) {
        Coefficients c;
        for (const auto& [v, value] : named) c[param_slot(v)] = value;
        return restricted(std::move(c));
    }

    /// Arbitrary term list; every stored coefficient must be positive.
    static WModel general(TermList terms) {
        for (auto it = terms.begin(); it != terms.end();) {
            if (it->second.is_zero()) {
                it = terms.erase(it);
                continue;
            }
            if (it->second.sign() < 0)
                throw InvalidModel("coefficient of x^" + std::to_string(it->first.x) + " y^" +
                                   std::to_string(it->first.y) + " is negative");
            ++it;
        }
        if (terms.empty()) throw InvalidModel("empty term list");
        WModel m;
        m.mode_ = ModelMode::general;
        m.terms_ = std::move(terms);
        return m;
    }

    /// Restricted family with the twelve coefficients left as variables.
    static WModel symbolic() {
        WModel m;
        m.mode_ = ModelMode::restricted;
        m.symbolic_ = true;
        return m;
    }

    static WModel w3() {
        return restricted({{Var::a, ExactScalar::rational(1, 3)},
                           {Var::b, ExactScalar::rational(1, 2)},
                           {Var::f5, ExactScalar::rational(2, 5)},
                           {Var::h3, ExactScalar(2)},
                           {Var::a05, ExactScalar::rational(22, 5)}});
    }

    static WModel w4() {
        auto r3 = [](long n, long d) { return ExactScalar::sqrt3(mpq_class(n, d)); };
        auto q = [](long n, long d) { return ExactScalar::rational(n, d); };
        return restricted({{Var::a, r3(1, 9)},     {Var::b, q(1, 4)},      {Var::f5, r3(2, 15)},
                           {Var::f6, q(1, 9)},     {Var::g5, r3(2, 9)},    {Var::h3, r3(2, 9)},
                           {Var::h4, q(13, 18)},   {Var::n3, r3(32, 81)},  {Var::a24, q(22, 27)},
                           {Var::a05, q(22, 135)}, {Var::a15, r3(44, 81)}, {Var::a06, q(31, 81)}});
    }

    /// x^3/3 + x^4 y + eps y^6.
    static WModel w_eps(const ExactScalar& eps) {
        return restricted({{Var::a, ExactScalar::rational(1, 3)}, {Var::a06, eps}});
    }

    ModelMode mode() const noexcept { return mode_; }
    bool is_symbolic() const noexcept { return symbolic_; }

    const Coefficients& coefficients() const {
        require_numeric_restricted("coefficients");
        return coeffs_;
    }
    const ExactScalar& coefficient(Var p) const { return coefficients()[param_slot(p)]; }

    /// General mode: the stored list.  Restricted numeric mode: the expanded list.
    TermList terms() const {
        if (mode_ == ModelMode::general) return terms_;
        require_numeric_restricted("terms");
        TermList out;
        const SparsePoly w = polynomial();
        for (const auto& [mono, c] : w.terms()) out[{mono.exp(Var::x), mono.exp(Var::y)}] = c;
        return out;
    }

    /// W as a polynomial in x, y (and the parameter variables when symbolic).
    SparsePoly polynomial() const {
        SparsePoly w;
        auto xy = [](XYExponent e) {
            Monomial m = Monomial::of(Var::x, e.x);
            m.set(Var::y, e.y);
            return m;
        };
        if (mode_ == ModelMode::general) {
            for (const auto& [e, c] : terms_) w.add_term(xy(e), c);
            return w;
        }
        for (std::size_t i = 0; i < kRestrictedMonomials.size(); ++i) {
            const SparsePoly coeff =
                symbolic_ ? SparsePoly::var(kParamVars[i]) : SparsePoly(coeffs_[i]);
            w += coeff.times_monomial(xy(kRestrictedMonomials[i]));
        }
        const SparsePoly a = symbolic_ ? SparsePoly::var(Var::a) : SparsePoly(coeffs_[0]);
        w += (a * a).scaled(ExactScalar(9)).times_monomial(xy(kDerivedMonomial));
        return w;
    }

    /// The same polynomial as a general-mode model.
    WModel as_general() const { return general(terms()); }

    friend bool operator==(const WModel& a, const WModel& b) {
        return a.mode_ == b.mode_ && a.symbolic_ == b.symbolic_ && a.coeffs_ == b.coeffs_ && a.terms_ == b.terms_;
    }

private:
    WModel() = default;

    void require_numeric_restricted(const char* what) const {
        if (mode_ != ModelMode::restricted) throw ModeError(std::string(what) + ": restricted-mode model required");
        if (symbolic_) throw ModeError(std::string(what) + ": numeric model required");
    }

    ModelMode mode_ = ModelMode::restricted;
    bool symbolic_ = false;
    Coefficients coeffs_;
    TermList terms_;
};

inline SparsePoly to_polynomial(const WModel& m) { return m.polynomial(); }

/// Numerator/denominator pair; common monomial content is removed, nothing else.
struct RationalFunction {
    SparsePoly numerator;
    SparsePoly denominator;

    static RationalFunction reduced(SparsePoly num, SparsePoly den) {
        if (den.is_zero()) throw std::domain_error("zero denominator");
        if (!num.is_zero()) {
            const Monomial g = Monomial::gcd(num.monomial_content(), den.monomial_content());
            num = num.divided_by_monomial(g);
            den = den.divided_by_monomial(g);
        }
        return {std::move(num), std::move(den)};
    }
};

inline std::pair<SparsePoly, SparsePoly> grad(const WModel& m) {
    const SparsePoly w = m.polynomial();
    return {w.partial_derivative(Var::x), w.partial_derivative(Var::y)};
}

inline SparsePoly to_strip(const SparsePoly& p) {
    return p.substitute(Var::y, SparsePoly::var(Var::x, 2) * SparsePoly::var(Var::z));
}

/// X(x, x^2 z)^2 - Y(x, x^2 z).
inline SparsePoly compute_R(const WModel& m) {
    const auto [X, Y] = grad(m);
    const SparsePoly xs = to_strip(X);
    return xs * xs - to_strip(Y);
}

/// X(x, x^2 z) / x, by exact division.
inline SparsePoly compute_G(const WModel& m) {
    const SparsePoly xs = to_strip(grad(m).first);
    if (xs.is_zero()) return xs;
    if (xs.min_degree_in(Var::x) < 1) throw ExactDivisionError("X(x, x^2 z) is not divisible by x");
    return xs.divided_by_monomial(Monomial::of(Var::x));
}

/// z X(x, x^2 z)^2 / Y(x, x^2 z).
inline RationalFunction compute_F(const WModel& m) {
    const auto [X, Y] = grad(m);
    const SparsePoly xs = to_strip(X);
    SparsePoly ys = to_strip(Y);
    if (ys.is_zero()) throw ExactDivisionError("Y(x, x^2 z) vanishes identically: no x^n y term");
    return RationalFunction::reduced(SparsePoly::var(Var::z) * xs * xs, std::move(ys));
}

/// The polynomials attached to one model, built once.  `compiled_*` members
/// are binary64 copies for numerics (numeric models only).
class ModelAlgebra {
public:
    explicit ModelAlgebra(WModel m) : model_(std::move(m)) {
        const SparsePoly w = model_.polynomial();
        X_ = w.partial_derivative(Var::x);
        Y_ = w.partial_derivative(Var::y);
        Xs_ = to_strip(X_);
        Ys_ = to_strip(Y_);
        R_ = Xs_ * Xs_ - Ys_;
        G_ = Xs_.is_zero() ? Xs_ : Xs_.divided_by_monomial(Monomial::of(Var::x));
        if (!Xs_.is_zero() && Xs_.min_degree_in(Var::x) < 1)
            throw ExactDivisionError("X(x, x^2 z) is not divisible by x");
        if (!Ys_.is_zero()) F_ = RationalFunction::reduced(SparsePoly::var(Var::z) * Xs_ * Xs_, Ys_);
        if (!model_.is_symbolic()) {
            cX_ = CompiledPoly2(X_, Var::x, Var::y);
            cY_ = CompiledPoly2(Y_, Var::x, Var::y);
            cXx_ = CompiledPoly2(X_.partial_derivative(Var::x), Var::x, Var::y);
            cXy_ = CompiledPoly2(X_.partial_derivative(Var::y), Var::x, Var::y);
            cYy_ = CompiledPoly2(Y_.partial_derivative(Var::y), Var::x, Var::y);
            cG_ = CompiledPoly2(G_, Var::x, Var::z);
            cGx_ = CompiledPoly2(G_.partial_derivative(Var::x), Var::x, Var::z);
            if (F_) {
                cFn_ = CompiledPoly2(F_->numerator, Var::x, Var::z);
                cFd_ = CompiledPoly2(F_->denominator, Var::x, Var::z);
            }
        }
    }

    const WModel& model() const noexcept { return model_; }
    const SparsePoly& X() const noexcept { return X_; }
    const SparsePoly& Y() const noexcept { return Y_; }
    const SparsePoly& X_strip() const noexcept { return Xs_; }
    const SparsePoly& Y_strip() const noexcept { return Ys_; }
    const SparsePoly& R() const noexcept { return R_; }
    const SparsePoly& G() const noexcept { return G_; }
    bool has_F() const noexcept { return F_.has_value(); }
    const RationalFunction& F() const {
        if (!F_) throw ExactDivisionError("Y(x, x^2 z) vanishes identically: no x^n y term");
        return *F_;
    }

    // binary64 evaluations.
    Point2<double> phi(Point2<double> p) const { return {cX_(p.x, p.y), cY_(p.x, p.y)}; }
    /// Jacobian of Phi: {{X_x, X_y}, {Y_x, Y_y}}; Y_x = X_y since Phi is a gradient.
    std::array<double, 4> phi_jacobian(Point2<double> p) const {
        const double xy = cXy_(p.x, p.y);
        return {cXx_(p.x, p.y), xy, xy, cYy_(p.x, p.y)};
    }
    double G_at(double x, double z) const { return cG_(x, z); }
    double G_x_at(double x, double z) const { return cGx_(x, z); }
    double F_at(double x, double z) const {
        F();
        return cFn_(x, z) / cFd_(x, z);
    }

    // Exact evaluations.
    Point2<ExactScalar> phi(const Point2<ExactScalar>& p) const {
        const std::map<Var, ExactScalar> at{{Var::x, p.x}, {Var::y, p.y}};
        return {X_.evaluate(at), Y_.evaluate(at)};
    }
    ExactScalar G_at(const ExactScalar& x, const ExactScalar& z) const {
        return G_.evaluate({{Var::x, x}, {Var::z, z}});
    }
    ExactScalar F_at(const ExactScalar& x, const ExactScalar& z) const {
        const std::map<Var, ExactScalar> at{{Var::x, x}, {Var::z, z}};
        return F().numerator.evaluate(at) / F().denominator.evaluate(at);
    }

private:
    WModel model_;
    SparsePoly X_, Y_, Xs_, Ys_, R_, G_;
    std::optional<RationalFunction> F_;
    CompiledPoly2 cX_, cY_, cXx_, cXy_, cYy_, cG_, cGx_, cFn_, cFd_;
};

inline Point2<double> apply_phi(const WModel& m, Point2<double> p) { return ModelAlgebra(m).phi(p); }
inline Point2<ExactScalar> apply_phi(const WModel& m, const Point2<ExactScalar>& p) {
    return ModelAlgebra(m).phi(p);
}

// Region predicates.  Comparisons are exact for ExactScalar inputs.

template <class T>
bool in_Xi(const Point2<T>& p) {
    return p.x >= T(0) && p.y >= T(0) && p.y <= p.x * p.x;
}

template <class T>
bool in_interior_Xi(const Point2<T>& p) {
    return p.x > T(0) && p.y > T(0) && p.y < p.x * p.x;
}

template <class T>
bool in_tildeXi(const StripPoint<T>& sp) {
    return sp.x > T(0) && sp.z >= T(0) && sp.z <= T(1);
}

/// (x, z) in (0, inf) x (0, 1) with F <= 1.
template <class T>
bool in_Xi_doubleprime(const ModelAlgebra& alg, const StripPoint<T>& sp) {
    if (!(sp.x > T(0) && sp.z > T(0) && sp.z < T(1))) return false;
    return alg.F_at(sp.x, sp.z) <= T(1);
}

/// (x, z) in (0, inf) x (0, 1) with G <= 1 and F <= 1.
template <class T>
bool in_Xi_prime(const ModelAlgebra& alg, const StripPoint<T>& sp) {
    return in_Xi_doubleprime(alg, sp) && alg.G_at(sp.x, sp.z) <= T(1);
}

}  // namespace rgfp
