#include "plethq/quasipoly.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plethq;

namespace {

std::vector<std::pair<Index, Rational>> sample(const QuasiPolynomial& q, Index s_max)
{
    std::vector<std::pair<Index, Rational>> out;
    for (Index s = 0; s <= s_max; ++s)
        out.emplace_back(s, eval(q, s));
    return out;
}

QuasiPolynomial random_qp(std::mt19937& rng, Index period, std::size_t degree)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
    std::vector<QuasiPolynomial::Row> rows(static_cast<std::size_t>(period));
    for (auto& row : rows)
        for (std::size_t j = 0; j <= degree; ++j)
            row.push_back(Rational(num(rng), den(rng)));
    return QuasiPolynomial(period, rows);
}

} // namespace

TEST(QuasiPolynomial, Construction)
{
    QuasiPolynomial q(2, {{Rational(1), Rational(0)}, {Rational(2)}});
    EXPECT_EQ(q.degree(), 0u); // zero top column is trimmed
    EXPECT_EQ(q.rows()[1].size(), 1u);
    EXPECT_THROW(QuasiPolynomial(0, {}), std::invalid_argument);
    EXPECT_THROW(QuasiPolynomial(2, {{Rational(1)}}), std::invalid_argument);
    EXPECT_EQ(QuasiPolynomial().degree(), 0u);
    EXPECT_EQ(eval(QuasiPolynomial(), 17), 0);
}

TEST(QuasiPolynomial, PhiValues)
{
    const auto phi = phi_reference();
    const std::vector<int> expected{1, 0, 1, 1, 2, 1, 3, 2, 3, 3, 4, 3, 5, 4, 5, 5, 6, 5, 7, 6, 7, 7, 8, 7, 9};
    for (std::size_t s = 0; s < expected.size(); ++s)
        EXPECT_EQ(eval(phi, static_cast<Index>(s)), expected[s]) << "s=" << s;
    EXPECT_EQ(phi.period(), 6);
    EXPECT_EQ(phi.degree(), 1u);
    EXPECT_EQ(eval(phi, -1), -1); // (-1 + r(5)) / 3 = (-1 - 2) / 3
    EXPECT_EQ(leading_coefficient(phi), Rational(1, 3));
}

TEST(QuasiPolynomial, NegativeArgumentsUseResidue)
{
    QuasiPolynomial q(3, {{Rational(0)}, {Rational(1)}, {Rational(2)}});
    EXPECT_EQ(q.residue(-1), 2);
    EXPECT_EQ(q.residue(-3), 0);
    EXPECT_EQ(eval(q, -4), 2);
}

TEST(QuasiPolynomial, EvalIntegerRejectsFractions)
{
    QuasiPolynomial half(1, {{Rational(0), Rational(1, 2)}});
    EXPECT_EQ(eval_integer(half, 4), 2);
    EXPECT_THROW(eval_integer(half, 3), std::domain_error);
    EXPECT_FALSE(is_integer_valued(half, 0, 5));
    EXPECT_TRUE(is_integer_valued(phi_reference(), -30, 30));
}

TEST(QuasiPolynomial, FitRecoversPhi)
{
    auto result = fit(sample(phi_reference(), 24), 6, 1);
    ASSERT_TRUE(std::holds_alternative<QuasiPolynomial>(result));
    EXPECT_EQ(std::get<QuasiPolynomial>(result), phi_reference());
}

TEST(QuasiPolynomial, FitReportsFirstMismatch)
{
    auto samples = sample(phi_reference(), 24);
    samples[19].second += 1;
    auto result = fit(samples, 6, 1);
    ASSERT_TRUE(std::holds_alternative<FitFailure>(result));
    const auto& f = std::get<FitFailure>(result);
    EXPECT_EQ(f.s, 19);
    EXPECT_EQ(f.expected, 7);
    EXPECT_EQ(f.fitted, 6);
    EXPECT_NE(f.message().find("s=19"), std::string::npos);

    // wrong period hypothesis
    EXPECT_TRUE(std::holds_alternative<FitFailure>(fit(sample(phi_reference(), 24), 3, 1)));
}

TEST(QuasiPolynomial, FitPreconditions)
{
    EXPECT_THROW(fit(sample(phi_reference(), 24), 0, 1), std::invalid_argument);
    EXPECT_THROW(fit(sample(phi_reference(), 6), 6, 1), std::invalid_argument); // one sample per class
    EXPECT_THROW(fit({{-1, Rational(0)}}, 1, 0), std::invalid_argument);
}

TEST(QuasiPolynomial, FitRoundTripProperty)
{
    std::mt19937 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        Index period = 1 + static_cast<Index>(rng() % 6);
        std::size_t degree = rng() % 4;
        auto q = random_qp(rng, period, degree);
        auto result = fit(sample(q, period * static_cast<Index>(degree + 3)), period, degree);
        ASSERT_TRUE(std::holds_alternative<QuasiPolynomial>(result));
        EXPECT_EQ(std::get<QuasiPolynomial>(result), q);
    }
}

TEST(QuasiPolynomial, Reciprocity)
{
    auto v = reciprocity_violations(phi_reference(), 10);
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v.front(), 1);
    // Ehrhart function of [0, 1]: s + 1, interior count s - 1
    EXPECT_TRUE(reciprocity_violations(QuasiPolynomial(1, {{Rational(1), Rational(1)}}), 10).empty());
    EXPECT_TRUE(reciprocity_violations(parity_qp(), 10).empty());
    EXPECT_THROW(reciprocity_violations(parity_qp(), 0), std::invalid_argument);
}

TEST(QuasiPolynomial, Arithmetic)
{
    auto sum = add(parity_qp(), QuasiPolynomial(3, {{Rational(0)}, {Rational(1)}, {Rational(0)}}));
    EXPECT_EQ(sum.period(), 6);
    for (Index s = -12; s <= 12; ++s)
        EXPECT_EQ(eval(sum, s), eval(parity_qp(), s) + (((s % 3) + 3) % 3 == 1 ? 1 : 0));
    auto doubled = scale(phi_reference(), Rational(2));
    EXPECT_EQ(eval(doubled, 7), 2 * eval(phi_reference(), 7));
    EXPECT_EQ(scale(phi_reference(), Rational(0)).degree(), 0u);
}

TEST(QuasiPolynomial, ReducePeriod)
{
    QuasiPolynomial four(4, {{Rational(1)}, {Rational(0)}, {Rational(1)}, {Rational(0)}});
    EXPECT_EQ(reduce_period(four), parity_qp());
    EXPECT_EQ(reduce_period(phi_reference()), phi_reference());
}

TEST(QuasiPolynomial, JsonRoundTrip)
{
    std::mt19937 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        auto q = random_qp(rng, 1 + static_cast<Index>(rng() % 5), rng() % 3);
        auto j = to_json(q);
        EXPECT_EQ(quasipoly_from_json(nlohmann::json::parse(j.dump())), q);
    }
    auto j = to_json(phi_reference());
    EXPECT_EQ(j["period"], 6);
    EXPECT_EQ(j["degree"], 1);
    EXPECT_EQ(j["rows"][1][0], "-1/3");
}

TEST(QuasiPolynomial, JsonErrors)
{
    EXPECT_THROW(quasipoly_from_json(nlohmann::json::parse(R"({"rows":[["1"]]})")), std::invalid_argument);
    EXPECT_THROW(quasipoly_from_json(nlohmann::json::parse(R"({"period":2,"rows":[["1"]]})")),
                 std::invalid_argument);
    EXPECT_THROW(quasipoly_from_json(nlohmann::json::parse(R"({"period":1,"rows":[[1.5]]})")),
                 std::invalid_argument);
    EXPECT_THROW(quasipoly_from_json(nlohmann::json::parse(R"({"period":1,"degree":0,"rows":[["1","2"]]})")),
                 std::invalid_argument);
    EXPECT_THROW(quasipoly_from_json(nlohmann::json::parse(R"({"period":1,"rows":[["1/0"]]})")), std::exception);
    EXPECT_EQ(quasipoly_from_json(nlohmann::json::parse(R"({"period":1,"rows":[[3]]})")),
              QuasiPolynomial::constant(Rational(3)));
}
