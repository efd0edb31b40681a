#include "rgfp/conditions.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rgfp;

namespace {

ExactScalar q(long n, long d = 1) { return ExactScalar::rational(n, d); }

std::array<ExactScalar, 6> ints(std::array<long, 6> v) {
    std::array<ExactScalar, 6> out;
    for (std::size_t i = 0; i < 6; ++i) out[i] = q(v[i]);
    return out;
}

WModel random_restricted(std::mt19937_64& rng) {
    // Coefficients from {0, 1/4, ..., 4}; a from {1/4, ..., 4}.
    std::uniform_int_distribution<long> quarter(0, 16), positive(1, 16);
    std::bernoulli_distribution zero(0.3);
    WModel::Coefficients c;
    c[0] = q(positive(rng), 4);
    for (std::size_t i = 1; i < c.size(); ++i) c[i] = zero(rng) ? q(0) : q(quarter(rng), 4);
    return WModel::restricted(c);
}

}  // namespace

TEST(ComputeRn, W3HandValues) {
    // 24/6 - 4, 4 + 4, 8 + 8, 16 + 4 + 12 - 22, 16 + 24, 8 + 12.
    EXPECT_EQ(compute_Rn(WModel::w3()), ints({0, 8, 16, 10, 40, 20}));
}

TEST(ComputeRn, WEps) {
    // Only a = 1/3 and a06 = eps: R7 = 216/27, R10 = 648/81 - 3 eps.
    const auto rn = compute_Rn(WModel::w_eps(q(1, 10)));
    EXPECT_EQ(rn[0], q(0));
    EXPECT_EQ(rn[1], q(0));
    EXPECT_EQ(rn[2], q(8));
    EXPECT_EQ(rn[3], q(0));
    EXPECT_EQ(rn[4], q(0));
    EXPECT_EQ(rn[5], q(8) - q(3, 10));
}

TEST(ComputeRn, OnlyA) {
    const auto rn = compute_Rn(WModel::restricted({{Var::a, q(1)}}));
    EXPECT_EQ(rn, ints({0, 0, 216, 0, 0, 648}));
}

TEST(ComputeRn, GeneralModeRejected) {
    EXPECT_THROW((void)compute_Rn(WModel::w3().as_general()), ModeError);
}

TEST(CheckR510, Examples) {
    EXPECT_EQ(check_R510(WModel::w4()).status(), Status::pass);
    EXPECT_EQ(check_R510(WModel::w_eps(q(8, 3))).status(), Status::pass);
    EXPECT_EQ(compute_Rn(WModel::w_eps(q(8, 3)))[5], q(0));
    const auto bad = check_R510(WModel::restricted({{Var::a, q(1, 3)}, {Var::b, q(1, 2)}, {Var::h3, q(3)}}));
    EXPECT_EQ(bad.status(), Status::fail);
    EXPECT_EQ((*bad.r_values)[0], q(-2));
    ASSERT_FALSE(bad.checks[0].witnesses.empty());
    EXPECT_EQ(bad.checks[0].witnesses[0], "R5 = -2");
}

TEST(CheckBasic, Examples) {
    EXPECT_EQ(check_basic(WModel::w3()).status(), Status::pass);
    const auto cubic = check_basic(WModel::general({{{3, 0}, q(1)}}));
    EXPECT_EQ(cubic.status(), Status::fail);
    EXPECT_EQ(cubic.find("x^n y term present (n >= 2)")->status, Status::fail);
    const auto quad = check_basic(WModel::general({{{2, 0}, q(1)}}));
    EXPECT_EQ(quad.find("total degree >= 3")->status, Status::fail);
    EXPECT_EQ(quad.find("total degree >= 3")->witnesses[0], "x^2");
}

TEST(CertifyRNonneg, W3) {
    const ModelAlgebra alg(WModel::w3());
    const auto out = certify_R_nonneg(alg);
    ASSERT_TRUE(out.success());
    EXPECT_EQ(out.certificate->expand(), alg.R());
    EXPECT_TRUE(out.certificate->all_nonneg());
}

TEST(CertifyRNonneg, WEpsAboveThresholdFailsAtX10) {
    const auto out = certify_R_nonneg(WModel::w_eps(q(27, 10)));
    ASSERT_FALSE(out.success());
    EXPECT_TRUE(out.definitive_failure());
    ASSERT_EQ(out.failures.size(), 1u);
    EXPECT_EQ(out.failures[0].key, Monomial::of(Var::x, 10));
}

TEST(CertifyRNonneg, ZeroTargetGivesEmptyCertificate) {
    const auto out = certify_slices(SparsePoly(), Provenance::independent);
    ASSERT_TRUE(out.success());
    EXPECT_TRUE(out.certificate->terms.empty());
}

TEST(CheckOx, Examples) {
    const auto w3 = check_O_x(WModel::w3());
    EXPECT_EQ(w3.status(), Status::pass);
    EXPECT_EQ(w3.degree_gap, 1);
    EXPECT_EQ(check_O_x(WModel::w4()).status(), Status::pass);
    // x^4 y coefficient 8 a^2 instead of 9 a^2 with a = 1/3.
    const auto broken = check_O_x(WModel::general({{{3, 0}, q(1, 3)}, {{4, 1}, q(8, 9)}}));
    EXPECT_EQ(broken.status(), Status::fail);
    EXPECT_EQ(broken.degree_gap, 0);
    EXPECT_NE(broken.checks[0].witnesses[0].find("x^4"), std::string::npos);
}

TEST(CheckExistence, W3AndW4Pass) {
    for (const auto& m : {WModel::w3(), WModel::w4()}) {
        const auto rep = check_model(m);
        EXPECT_EQ(rep.status(), Status::pass);
        for (const auto& c : rep.checks) EXPECT_EQ(c.status, Status::pass) << c.name;
    }
}

TEST(CheckExistence, WEpsThreshold) {
    EXPECT_EQ(check_model(WModel::w_eps(q(8, 3))).status(), Status::pass);
    const auto rep = check_model(WModel::w_eps(q(27, 10)));
    EXPECT_EQ(rep.status(), Status::fail);
    EXPECT_EQ((*rep.r_values)[5], q(-1, 10));
}

TEST(CheckFromGasket, W4TermList) {
    const auto rep = check_fromgasket(WModel::w4().as_general());
    EXPECT_EQ(rep.status(), Status::pass);
    ASSERT_TRUE(rep.reconstructed.has_value());
    EXPECT_EQ(*rep.reconstructed, WModel::w4());
}

TEST(CheckFromGasket, ForbiddenTerms) {
    auto terms = WModel::w3().terms();
    terms[{2, 3}] = q(1);
    const auto rep = check_fromgasket(WModel::general(terms));
    EXPECT_EQ(rep.status(), Status::fail);
    const auto* entry = rep.find("x y^4 and x^2 y^3 absent");
    ASSERT_NE(entry, nullptr);
    EXPECT_EQ(entry->witnesses, std::vector<std::string>{"x^2 y^3"});

    auto deg7 = WModel::w3().terms();
    deg7[{7, 0}] = q(1);
    const auto rep7 = check_fromgasket(WModel::general(deg7));
    EXPECT_EQ(rep7.find("total degree <= 6")->status, Status::fail);
    EXPECT_FALSE(rep7.reconstructed.has_value());
}

TEST(CheckFromGasket, RestrictedModelRejected) {
    EXPECT_THROW((void)check_fromgasket(WModel::w3()), ModeError);
}

// Properties.

TEST(ConditionsProperty, RnMatchesCoefficientsOfRAtZEqualsOne) {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 40; ++i) {
        const WModel m = random_restricted(rng);
        const SparsePoly r1 = compute_R(m).substitute_values({{Var::z, q(1)}});
        const auto rn = compute_Rn(m);
        for (unsigned n = 5; n <= 10; ++n) {
            const ExactScalar coeff = r1.coeff(Monomial::of(Var::x, n));
            EXPECT_EQ(coeff, rn[n - 5] * ExactScalar(kRnScale[n - 5])) << "n = " << n;
        }
    }
}

TEST(ConditionsProperty, R510EquivalentToCertificate) {
    std::mt19937_64 rng(67);
    int pass = 0, fail = 0;
    for (int i = 0; i < 200; ++i) {
        const WModel m = random_restricted(rng);
        const auto cert = certify_R_nonneg(m);
        if (!cert.success() && !cert.definitive_failure()) continue;
        const bool r510 = check_R510(m).status() == Status::pass;
        EXPECT_EQ(r510, cert.success()) << "model " << i;
        (r510 ? pass : fail)++;
    }
    // Both outcomes are exercised.
    EXPECT_GT(pass, 10);
    EXPECT_GT(fail, 10);
}

TEST(ConditionsProperty, FromGasketReconstructionRoundTrips) {
    std::mt19937_64 rng(71);
    int passed = 0;
    for (int i = 0; i < 60; ++i) {
        const WModel general = random_restricted(rng).as_general();
        const auto rep = check_fromgasket(general);
        if (rep.status() != Status::pass) continue;
        ++passed;
        ASSERT_TRUE(rep.reconstructed.has_value());
        EXPECT_EQ(check_basic(*rep.reconstructed).status(), Status::pass);
        EXPECT_EQ(check_O_x(*rep.reconstructed).status(), Status::pass);
        EXPECT_EQ(rep.reconstructed->polynomial(), general.polynomial());
    }
    EXPECT_GT(passed, 5);
}
