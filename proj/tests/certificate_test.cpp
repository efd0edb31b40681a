#include "rgfp/certificate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace rgfp;

namespace {

ExactScalar q(long n, long d = 1) { return ExactScalar::rational(n, d); }

// Built once; the symbolic pieces are shared by several tests.
const SparsePoly& symbolic_e() {
    static const SparsePoly e = compute_e_symbolic();
    return e;
}

/// e from the expanded closed form
/// z ((1 - z)(-(x X_x - X) Y_z + x X_z Y_x - 2 Y X_z) + (x X_x - X) R),
/// with X, Y the strip polynomials; no division involved.
SparsePoly e_closed_form(const ModelAlgebra& alg) {
    const SparsePoly x = SparsePoly::var(Var::x), z = SparsePoly::var(Var::z);
    const SparsePoly& xs = alg.X_strip();
    const SparsePoly& ys = alg.Y_strip();
    const SparsePoly xs_x = xs.partial_derivative(Var::x), xs_z = xs.partial_derivative(Var::z);
    const SparsePoly ys_x = ys.partial_derivative(Var::x), ys_z = ys.partial_derivative(Var::z);
    const SparsePoly xgx = x * xs_x - xs;
    const SparsePoly s = SparsePoly(1) - z;
    return z * (s * (-(xgx * ys_z) + x * xs_z * ys_x - (ys * xs_z).scaled(2)) + xgx * alg.R());
}

double eval(const RationalFunction& f, double x, double z) {
    return CompiledPoly2(f.numerator, Var::x, Var::z)(x, z) / CompiledPoly2(f.denominator, Var::x, Var::z)(x, z);
}

}  // namespace

TEST(ComputeJGF, SmallXLimitIsThreeA) {
    // G ~ 3a x and F ~ z near x = 0, so J_GF -> 3a; for a = 1/3 the limit is 1.
    const RationalFunction j = compute_JGF(WModel::w_eps(q(0)));
    EXPECT_NEAR(eval(j, 1e-4, 0.5), 1.0, 1e-3);
    const RationalFunction j3 = compute_JGF(WModel::w3());
    EXPECT_NEAR(eval(j3, 1e-4, 0.5), 1.0, 1e-3);
}

TEST(ComputeJGF, SymbolicDenominatorDividesYSquaredXSquared) {
    const ModelAlgebra alg(WModel::symbolic());
    const RationalFunction j = compute_JGF(alg);
    const SparsePoly bound = SparsePoly::var(Var::x, 2) * alg.Y_strip() * alg.Y_strip();
    EXPECT_TRUE(bound.divide_exact(j.denominator).has_value());
}

TEST(ComputeJGF, MatchesFiniteDifferencesOfGAndF) {
    for (const auto& m : {WModel::w_eps(q(0)), WModel::w3(), WModel::w4()}) {
        const ModelAlgebra alg(m);
        const RationalFunction j = compute_JGF(alg);
        const double h = 1e-6;
        for (const auto [x, z] : {std::pair{0.3, 0.2}, std::pair{0.5, 0.5}, std::pair{0.9, 0.8}}) {
            const double gx = (alg.G_at(x + h, z) - alg.G_at(x - h, z)) / (2 * h);
            const double gz = (alg.G_at(x, z + h) - alg.G_at(x, z - h)) / (2 * h);
            const double fx = (alg.F_at(x + h, z) - alg.F_at(x - h, z)) / (2 * h);
            const double fz = (alg.F_at(x, z + h) - alg.F_at(x, z - h)) / (2 * h);
            const double fd = gx * fz - fx * gz;
            EXPECT_NEAR(eval(j, x, z), fd, 1e-6 * std::abs(fd));
        }
    }
}

TEST(ComputeE, DivisionRouteMatchesClosedForm) {
    EXPECT_EQ(symbolic_e(), e_closed_form(ModelAlgebra(WModel::symbolic())));
    const ModelAlgebra w4(WModel::w4());
    EXPECT_EQ(compute_e(w4), e_closed_form(w4));
}

TEST(ComputeE, TermCounts) {
    const auto [pos, neg] = symbolic_e().sign_counts();
    EXPECT_GT(pos, 300u);
    EXPECT_GT(neg, 80u);
}

TEST(ComputeE, W3PositiveAtHalfHalf) {
    const SparsePoly e = compute_e(WModel::w3());
    EXPECT_TRUE(e.evaluate({{Var::x, q(1, 2)}, {Var::z, q(1, 2)}}).is_positive());
}

TEST(ComputeE, ValueAtZEqualsOne) {
    // The (1 - z) prefactor is cancelled by the pole of F(1 - F)/(z(1 - z)),
    // leaving e(x, 1) = (x X_x - X) R at z = 1.
    const ModelAlgebra alg(WModel::w3());
    const SparsePoly x = SparsePoly::var(Var::x);
    const SparsePoly xgx = x * alg.X_strip().partial_derivative(Var::x) - alg.X_strip();
    const std::map<Var, ExactScalar> z1{{Var::z, q(1)}};
    EXPECT_EQ(compute_e(alg).substitute_values(z1), (xgx * alg.R()).substitute_values(z1));
    EXPECT_FALSE(compute_e(alg).substitute_values(z1).is_zero());
}

TEST(ComputeE, GeneralModeRejected) {
    EXPECT_THROW((void)compute_e(WModel::w3().as_general()), ModeError);
}

TEST(BuildEc, Structure) {
    const SparsePoly ec = build_ec();
    EXPECT_EQ(ec.coefficient_of(Var::x, 7), parse_poly("3 a (24 a b - g5 - 2 h3) z"));
    EXPECT_EQ(ec.min_degree_in(Var::x), 7u);
    EXPECT_EQ(ec.degree_in(Var::x), 20u);
    // R5 = 0 for W3, and the x^7 term is 3 a R5 z x^7 alone.
    EXPECT_TRUE(at_parameters(ec, WModel::w3()).coefficient_of(Var::x, 7).is_zero());
}

TEST(BuildEr, Entries) {
    const SparsePoly er = build_er();
    EXPECT_TRUE(er.all_coefficients_nonneg());
    EXPECT_EQ(er.coefficient_of(Var::x, 30), parse_poly("9 a15^3 z^16"));
    EXPECT_EQ(er.coefficient_of(Var::x, 29), parse_poly("52 a15^2 a24 z^15"));
    EXPECT_EQ(er.coefficient_of(Var::x, 9), parse_poly("12 a (54 a^3 + 10 b f5 + 9 a f6) s^2 z"));
    EXPECT_EQ(er.min_degree_in(Var::x), 9u);
}

TEST(Identity, NumericInstances) {
    EXPECT_TRUE(identity_difference(WModel::restricted({{Var::a, q(1)}})).is_zero());
    EXPECT_TRUE(identity_difference(WModel::w3()).is_zero());
    EXPECT_TRUE(identity_difference(WModel::w4()).is_zero());
}

TEST(Identity, RandomizedRejectsZeroTrials) {
    EXPECT_THROW((void)verify_identity_randomized(0, 1), std::invalid_argument);
}

TEST(Identity, SymbolicAndRandomizedAgree) {
    const bool symbolic_zero = verify_identity_symbolic().is_zero();
    const auto rep = verify_identity_randomized(100, 7);
    EXPECT_EQ(rep.trials.size(), 100u);
    EXPECT_TRUE(symbolic_zero);
    EXPECT_EQ(symbolic_zero, rep.all_equal());
}

TEST(CertifyIndependent, SucceedsWithExpectedSlice) {
    const auto cert = certify_independent();
    ASSERT_TRUE(cert.outcome.success());
    EXPECT_TRUE(cert.outcome.certificate->all_nonneg());
    EXPECT_EQ(cert.outcome.certificate->expand(), cert.target);
    EXPECT_GE(cert.min_x_power, 7u);
    EXPECT_LE(cert.max_x_power, 30u);
    ASSERT_TRUE(cert.a4_x9_zs2.has_value());
    EXPECT_EQ(*cert.a4_x9_zs2, q(648));
}

TEST(CertifyIndependent, SerializationIsDeterministicAndJobIndependent) {
    const auto one = certify_independent(std::nullopt, 1);
    const auto four = certify_independent(std::nullopt, 4);
    ASSERT_TRUE(one.outcome.success() && four.outcome.success());
    const std::string text = one.outcome.certificate->serialize();
    EXPECT_EQ(text, four.outcome.certificate->serialize());
    EXPECT_NE(text.find("a^4 | 9 | 1 | 2 | 648\n"), std::string::npos);
}

// Properties.

TEST(CertificateProperty, PolynomialOverRandomModels) {
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<long> num(0, 7), pos(1, 7), den(1, 7);
    for (int i = 0; i < 200; ++i) {
        WModel::Coefficients c;
        c[0] = q(pos(rng), den(rng));
        for (std::size_t k = 1; k < c.size(); ++k) c[k] = q(num(rng), den(rng));
        EXPECT_NO_THROW((void)compute_e(WModel::restricted(c)));
    }
}

TEST(CertificateProperty, PositivityAndJacobianBoundOnGrid) {
    for (const auto& m : {WModel::w3(), WModel::w4()}) {
        const ModelAlgebra alg(m);
        const CompiledPoly2 e(compute_e(alg), Var::x, Var::z);
        const RationalFunction j = compute_JGF(alg);
        const CompiledPoly2 jn(j.numerator, Var::x, Var::z), jd(j.denominator, Var::x, Var::z);
        int inside = 0;
        for (int i = 1; i <= 50; ++i) {
            for (int k = 1; k <= 50; ++k) {
                const double x = 2.0 * i / 50, z = k / 51.0;
                EXPECT_GT(e(x, z), 0.0) << x << " " << z;
                const double f = alg.F_at(x, z);
                if (f > 1) continue;
                ++inside;
                const double jgf = jn(x, z) / jd(x, z);
                const double bound = f * (1 - f) / (z * (1 - z)) * alg.G_x_at(x, z);
                EXPECT_GT(bound, 0.0);
                EXPECT_GE(jgf, bound * (1 - 1e-12));
            }
        }
        EXPECT_GT(inside, 100);
    }
}
