#include "rgfp/exact_scalar.hpp"

#include <gtest/gtest.h>

#include <random>

using rgfp::ExactScalar;

namespace {

ExactScalar random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    return ExactScalar(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
}

}  // namespace

TEST(ExactScalar, CanonicalForm) {
    ExactScalar v(mpq_class(6, -4), mpq_class(10, 20));
    EXPECT_EQ(v.rational_part(), mpq_class(-3, 2));
    EXPECT_EQ(v.rational_part().get_den(), 2);
    EXPECT_EQ(v.sqrt3_part(), mpq_class(1, 2));
}

TEST(ExactScalar, Sqrt3SquaredIsThree) {
    const ExactScalar r3 = ExactScalar::sqrt3();
    EXPECT_EQ(r3 * r3, ExactScalar(3));
    EXPECT_TRUE((r3 * r3).is_rational());
}

TEST(ExactScalar, ExactSign) {
    // 7 - 4 sqrt3 = 0.0717...
    EXPECT_EQ(ExactScalar::parse("7 - 4 sqrt3").sign(), 1);
    // 12 - 7 sqrt3 = -0.124...
    EXPECT_EQ(ExactScalar::parse("12 - 7 sqrt3").sign(), -1);
    EXPECT_EQ(ExactScalar::parse("-2 + sqrt3").sign(), -1);
    EXPECT_EQ(ExactScalar::parse("-1 + sqrt3").sign(), 1);
    EXPECT_EQ(ExactScalar(0).sign(), 0);
    EXPECT_TRUE(ExactScalar::parse("1/9 sqrt3").is_positive());
}

TEST(ExactScalar, ParseForms) {
    EXPECT_EQ(ExactScalar::parse("22/5"), ExactScalar::rational(22, 5));
    EXPECT_EQ(ExactScalar::parse("2/15*sqrt3"), ExactScalar::sqrt3(mpq_class(2, 15)));
    EXPECT_EQ(ExactScalar::parse("sqrt3"), ExactScalar::sqrt3());
    EXPECT_EQ(ExactScalar::parse(" 1/2 + 3/4 sqrt3 "), ExactScalar(mpq_class(1, 2), mpq_class(3, 4)));
    EXPECT_EQ(ExactScalar::parse("-1/2-3/4sqrt3"), ExactScalar(mpq_class(-1, 2), mpq_class(-3, 4)));
    EXPECT_THROW(ExactScalar::parse(""), std::invalid_argument);
    EXPECT_THROW(ExactScalar::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(ExactScalar::parse("abc"), std::invalid_argument);
    EXPECT_THROW(ExactScalar::parse("1/"), std::invalid_argument);
    EXPECT_THROW(ExactScalar::parse("1 + 2 + 3"), std::invalid_argument);
}

TEST(ExactScalar, TextRoundTrip) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const ExactScalar v = random_scalar(rng);
        EXPECT_EQ(ExactScalar::parse(v.to_string()), v) << v.to_string();
    }
}

TEST(ExactScalar, DivisionByZeroThrows) {
    EXPECT_THROW(ExactScalar(0).inverse(), std::domain_error);
}

TEST(ExactScalarProperty, RingAxiomsAndInverse) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        const ExactScalar a = random_scalar(rng);
        const ExactScalar b = random_scalar(rng);
        const ExactScalar c = random_scalar(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), ExactScalar(1));
    }
}

TEST(ExactScalarProperty, SignAgreesWithDouble) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const ExactScalar a = random_scalar(rng);
        const double d = a.to_double();
        if (std::abs(d) > 1e-9) EXPECT_EQ(a.sign(), d > 0 ? 1 : -1) << a;
    }
}
