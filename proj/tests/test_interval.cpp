#include "plethq/interval.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace plethq;
using plethq::testing::brute_count;
using plethq::testing::random_family;
using plethq::testing::slope_period;

TEST(Interval, CountMatchesEnumeration)
{
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = random_family(rng);
        for (Index s = 0; s <= 40; ++s)
            ASSERT_EQ(count(f, s), brute_count(f, s)) << to_json(f).dump() << " s=" << s;
    }
}

TEST(Interval, ExampleFamilies)
{
    // s[1/3, 1/2] contains floor(s/2) - ceil(s/3) + 1 integers
    ShiftedIntervalFamily f{Rational(1, 3), Rational(0), Rational(1, 2), Rational(0)};
    for (Index s = 0; s <= 30; ++s) {
        Index want = s / 2 - (s + 2) / 3 + 1;
        EXPECT_EQ(count(f, s), want) << s;
    }
    ShiftedIntervalFamily empty{Rational(1), Rational(0), Rational(0), Rational(0)};
    EXPECT_TRUE(empty.eventually_empty());
    EXPECT_EQ(count(empty, 0), 1);
    EXPECT_EQ(count(empty, 3), 0);
    EXPECT_LT(raw_count(empty, 3), 0);
}

TEST(Interval, PointFamily)
{
    PointFamily half{Rational(1, 2)};
    for (Index s = 0; s <= 10; ++s)
        EXPECT_EQ(count_point(half, s), s % 2 == 0 ? 1 : 0);
    EXPECT_EQ(count_point(PointFamily{Rational(0)}, 7), 1);
}

TEST(Interval, CountSystemIntersects)
{
    std::vector<ShiftedConstraint> lowers{{Bound::Lower, Rational(0), Rational(1, 100)},
                                          {Bound::Lower, Rational(1, 4), Rational(-3)}};
    std::vector<ShiftedConstraint> uppers{{Bound::Upper, Rational(1, 3), Rational(0)},
                                          {Bound::Upper, Rational(1), Rational(0)}};
    for (Index s = 0; s <= 60; ++s) {
        Rational lo = std::max(Rational(1, 100), Rational(s, 4) - 3);
        ShiftedIntervalFamily direct{Rational(0), lo, Rational(1, 3), Rational(0)};
        EXPECT_EQ(count_system(lowers, uppers, s), count(direct, s)) << s;
    }
    EXPECT_THROW(count_system({}, uppers, 1), std::invalid_argument);
}

TEST(Interval, CanonicalizeKeepsBindingPair)
{
    std::vector<ShiftedConstraint> lowers{{Bound::Lower, Rational(0), Rational(1, 100)},
                                          {Bound::Lower, Rational(1, 4), Rational(-3)}};
    std::vector<ShiftedConstraint> uppers{{Bound::Upper, Rational(1, 3), Rational(2)},
                                          {Bound::Upper, Rational(1), Rational(-5)}};
    auto canon = canonicalize(lowers, uppers);
    EXPECT_EQ(canon.family, (ShiftedIntervalFamily{Rational(1, 4), Rational(-3), Rational(1, 3), Rational(2)}));
    for (Index s = canon.s0; s <= canon.s0 + 50; ++s)
        EXPECT_EQ(count_system(lowers, uppers, s), count(canon.family, s)) << s;
    EXPECT_THROW(canonicalize(uppers, uppers), std::invalid_argument);
    EXPECT_THROW(canonicalize(lowers, {}), std::invalid_argument);
}

TEST(Interval, CanonicalizeProperty)
{
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ShiftedConstraint> lowers, uppers;
        for (int i = 0; i < 3; ++i) {
            lowers.push_back({Bound::Lower, plethq::testing::random_rational(rng, -1, 1, 6),
                              plethq::testing::random_rational(rng, -4, 4, 6)});
            uppers.push_back({Bound::Upper, plethq::testing::random_rational(rng, -1, 1, 6),
                              plethq::testing::random_rational(rng, -4, 4, 6)});
        }
        auto canon = canonicalize(lowers, uppers);
        for (Index s = canon.s0; s <= canon.s0 + 30; ++s)
            ASSERT_EQ(count_system(lowers, uppers, s), count(canon.family, s));
    }
}

TEST(Interval, PeriodicCountMatchesCount)
{
    std::mt19937_64 rng(7);
    int accepted = 0;
    for (int trial = 0; trial < 400; ++trial) {
        auto f = random_family(rng);
        Index p = slope_period(f);
        auto result = periodic_count_qp(f, p);
        if (auto* q = std::get_if<QuasiPolynomial>(&result)) {
            ++accepted;
            for (Index s = 0; s <= 3 * p + 10; ++s)
                ASSERT_EQ(eval(*q, s), Rational(count(f, s))) << to_json(f).dump() << " s=" << s;
        } else {
            // not periodic from s = 0: the clamp at zero is active somewhere
            bool clamped = false;
            for (Index s = 0; s <= 3 * p + 10 && !clamped; ++s)
                clamped = raw_count(f, s) < 0;
            bool shrinking = f.bbar < f.b;
            EXPECT_TRUE(clamped || shrinking) << to_json(f).dump();
        }
    }
    EXPECT_GT(accepted, 100);
}

TEST(Interval, PeriodicCountRejections)
{
    ShiftedIntervalFamily f{Rational(1, 3), Rational(0), Rational(1, 2), Rational(0)};
    EXPECT_TRUE(std::holds_alternative<NotPeriodic>(periodic_count_qp(f, 2)));
    EXPECT_TRUE(std::holds_alternative<QuasiPolynomial>(periodic_count_qp(f, 6)));
    EXPECT_THROW(periodic_count_qp(f, 0), std::invalid_argument);
    // starts empty with negative raw count before growing
    ShiftedIntervalFamily late{Rational(0), Rational(3), Rational(1), Rational(0)};
    auto r = periodic_count_qp(late, 1);
    ASSERT_TRUE(std::holds_alternative<NotPeriodic>(r));
    EXPECT_FALSE(std::get<NotPeriodic>(r).reason.empty());
}

TEST(Interval, SumDecomposition)
{
    auto report = verify_sum_decomposition(Rational(1, 100), 600);
    EXPECT_TRUE(report.corrected_pass());
    ASSERT_TRUE(report.literal_first_failure());
    EXPECT_EQ(*report.literal_first_failure(), 0);
    ASSERT_TRUE(report.literal_first_positive_failure());
    EXPECT_EQ(*report.literal_first_positive_failure(), 35);
    // the same failure list by direct enumeration of s*[1/100, 1/3 + 1/100]
    std::vector<Index> enumerated;
    const ShiftedIntervalFamily literal{Rational(1, 100), Rational(0), Rational(103, 300), Rational(0)};
    for (Index s = 0; s <= 600; ++s)
        if (Rational(brute_count(literal, s) + (s % 2 == 0 ? 1 : 0)) != eval(phi_reference(), s))
            enumerated.push_back(s);
    EXPECT_EQ(report.literal_failures, enumerated);
    EXPECT_EQ((std::vector<Index>(enumerated.begin(), enumerated.begin() + 4)), (std::vector<Index>{0, 35, 38, 41}));
    auto j = to_json(report);
    EXPECT_EQ(j["literal_first_positive_failure"], 35);
    EXPECT_THROW(verify_sum_decomposition(Rational(0), 10), std::invalid_argument);
}

TEST(Interval, JsonRoundTrip)
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_family(rng);
        EXPECT_EQ(family_from_json(nlohmann::json::parse(to_json(f).dump())), f);
    }
    EXPECT_THROW(family_from_json(nlohmann::json::parse(R"({"b":"1"})")), std::exception);
}
