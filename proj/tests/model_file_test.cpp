#include "rgfp/model_file.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rgfp;

namespace {

ExactScalar q(long n, long d = 1) { return ExactScalar::rational(n, d); }

std::string models_dir() { return RGFP_MODELS_DIR; }

std::size_t error_line(const std::string& text) {
    try {
        (void)parse_model(text);
    } catch (const ModelFileError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST(ModelFile, BundledModelsMatchBuilders) {
    EXPECT_EQ(load_model(models_dir() + "/w3.model"), WModel::w3());
    EXPECT_EQ(load_model(models_dir() + "/w4.model"), WModel::w4());
    EXPECT_EQ(load_model(models_dir() + "/weps.model"), WModel::w_eps(q(27, 10)));
    EXPECT_EQ(load_model(models_dir() + "/weps0.model"), WModel::w_eps(q(0)));
    EXPECT_EQ(load_model(models_dir() + "/weps-8-3.model"), WModel::w_eps(q(8, 3)));
    EXPECT_EQ(load_model(models_dir() + "/weps-1-10.model"), WModel::w_eps(q(1, 10)));
    const WModel terms = load_model(models_dir() + "/w4-terms.model");
    EXPECT_EQ(terms.mode(), ModelMode::general);
    EXPECT_EQ(terms.polynomial(), WModel::w4().polynomial());
}

TEST(ModelFile, TermLinesInRestrictedMode) {
    const WModel m = parse_model("format = rg-w/1\nmode = restricted\nterm x^3 y^0 = \"1/3\"\nh3 = \"2\"\n");
    EXPECT_EQ(m, WModel::restricted({{Var::a, q(1, 3)}, {Var::h3, q(2)}}));
}

TEST(ModelFile, Errors) {
    EXPECT_EQ(error_line(""), 1u);
    EXPECT_EQ(error_line("# nothing\n\n"), 3u);
    EXPECT_EQ(error_line("mode = restricted\n"), 1u);
    EXPECT_EQ(error_line("format = rg-w/2\n"), 1u);
    EXPECT_EQ(error_line("format = rg-w/1\nmode = restricted\na = \"1/3\"\nalpha = \"1\"\n"), 4u);
    EXPECT_EQ(error_line("format = rg-w/1\nmode = restricted\na = \"1/3\"\nterm x^4 y^1 = \"1\"\n"), 4u);
    EXPECT_EQ(error_line("format = rg-w/1\nmode = restricted\na = \"1/3\"\nterm x^1 y^4 = \"1\"\n"), 4u);
    EXPECT_EQ(error_line("format = rg-w/1\nmode = restricted\na = 1/3\n"), 3u);
    EXPECT_EQ(error_line("format = rg-w/1\nmode = restricted\na = \"1/0\"\n"), 3u);
    EXPECT_EQ(error_line("format = rg-w/1\nmode = restricted\na = \"1/3\"\na = \"1\"\n"), 4u);
    EXPECT_EQ(error_line("format = rg-w/1\nmode = restricted\nb = \"1\"\n"), 3u);  // a = 0
    EXPECT_EQ(error_line("format = rg-w/1\nmode = restricted\na = \"-1\"\n"), 3u);
    EXPECT_EQ(error_line("format = rg-w/1\nmode = general\na = \"1\"\n"), 3u);
    EXPECT_EQ(error_line("format = rg-w/1\nmode = sparse\n"), 2u);
    EXPECT_EQ(error_line("format = rg-w/1\na = \"1\"\n"), 2u);
    EXPECT_THROW((void)load_model(models_dir() + "/missing.model"), std::runtime_error);
}

TEST(ModelFile, SerializedText) {
    EXPECT_EQ(serialize_model(WModel::w_eps(q(1, 10))), "format = rg-w/1\nmode = restricted\na = \"1/3\"\na06 = \"1/10\"\n");
    const WModel mixed = WModel::general({{{3, 0}, ExactScalar(mpq_class(2), mpq_class(-1, 2))}});
    EXPECT_EQ(serialize_model(mixed), "format = rg-w/1\nmode = general\nterm x^3 y^0 = \"2 - 1/2 sqrt3\"\n");
}

// Properties.

TEST(ModelFileProperty, RoundTrip) {
    std::mt19937_64 rng(83);
    std::uniform_int_distribution<long> num(-6, 6), den(1, 6);
    std::bernoulli_distribution zero(0.4);
    auto value = [&] {
        // r + s sqrt3 >= 0 with r >= |s| sqrt3 guaranteed by r >= 2|s|.
        const mpq_class s(num(rng), den(rng));
        const mpq_class r = 2 * abs(s) + mpq_class(num(rng) < 0 ? 0 : 1, den(rng));
        return ExactScalar(r, zero(rng) ? mpq_class(0) : s);
    };
    for (int i = 0; i < 100; ++i) {
        WModel::Coefficients c;
        c[0] = value() + ExactScalar(1);
        for (std::size_t k = 1; k < c.size(); ++k) c[k] = zero(rng) ? ExactScalar() : value();
        const WModel m = WModel::restricted(c);
        const WModel back = parse_model(serialize_model(m));
        EXPECT_EQ(back, m);
        EXPECT_EQ(serialize_model(back), serialize_model(m));
        const WModel g = m.as_general();
        EXPECT_EQ(parse_model(serialize_model(g)), g);
    }
}
