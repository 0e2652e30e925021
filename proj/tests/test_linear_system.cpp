#include "plethq/linear_system.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace plethq;

namespace {

bool satisfies(const LinearConstraint& c, const std::vector<Rational>& x)
{
    Rational lhs = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        lhs += c.coeffs[i] * x[i];
    return c.strict ? lhs < c.rhs : lhs <= c.rhs;
}

bool satisfies_all(const std::vector<LinearConstraint>& cs, const std::vector<Rational>& x)
{
    for (const auto& c : cs)
        if (!satisfies(c, x))
            return false;
    return true;
}

std::vector<Rational> R(std::initializer_list<int> v)
{
    std::vector<Rational> out;
    for (int x : v)
        out.emplace_back(x);
    return out;
}

} // namespace

TEST(RationalInterval, ContainsAndPrint)
{
    RationalInterval iv{Rational(1, 5), Rational(4, 15), true, true, false};
    EXPECT_FALSE(iv.contains(Rational(1, 5)));
    EXPECT_TRUE(iv.contains(Rational(1, 4)));
    EXPECT_EQ(to_string(iv), "(1/5, 4/15)");
    RationalInterval half_line{Rational(0), std::nullopt, false, false, false};
    EXPECT_EQ(to_string(half_line), "[0, inf)");
    EXPECT_EQ(to_string(RationalInterval{std::nullopt, std::nullopt, false, false, true}), "{}");
}

TEST(RationalInterval, SimplestElement)
{
    EXPECT_EQ(simplest_in({Rational(1, 5), Rational(4, 15), true, true, false}), Rational(1, 4));
    EXPECT_EQ(simplest_in({Rational(2, 5), Rational(7, 15), true, true, false}), Rational(3, 7));
    EXPECT_EQ(simplest_in({Rational(-7, 2), Rational(5), false, false, false}), Rational(0));
    EXPECT_EQ(simplest_in({Rational(1), Rational(2), true, false, false}), Rational(2));
    EXPECT_EQ(simplest_in({std::nullopt, Rational(-3, 2), false, false, false}), Rational(-2));
    EXPECT_EQ(simplest_in({Rational(5, 2), std::nullopt, false, false, false}), Rational(3));
    EXPECT_EQ(simplest_in({std::nullopt, std::nullopt, false, false, false}), Rational(0));
    EXPECT_THROW(simplest_in({std::nullopt, std::nullopt, false, false, true}), std::invalid_argument);
}

TEST(LinearSystem, StrictnessMatters)
{
    LinearSystem closed(1);
    closed.add(R({1}), Rational(0), false);  // x <= 0
    closed.add(R({-1}), Rational(0), false); // x >= 0
    EXPECT_TRUE(closed.feasible());
    EXPECT_EQ(closed.sample_point(), std::optional<std::vector<Rational>>(R({0})));

    LinearSystem open(1);
    open.add(R({1}), Rational(0), true);
    open.add(R({-1}), Rational(0), false);
    EXPECT_FALSE(open.feasible());
    EXPECT_FALSE(open.sample_point());
    EXPECT_TRUE(open.range_of(0).empty);
}

TEST(LinearSystem, ConstantConstraintsAndErrors)
{
    LinearSystem sys(2);
    sys.add(R({0, 0}), Rational(1), false);
    EXPECT_TRUE(sys.feasible());
    sys.add(R({0, 0}), Rational(0), true); // 0 < 0
    EXPECT_TRUE(sys.contradictory());
    EXPECT_FALSE(sys.feasible());
    EXPECT_THROW(sys.add(R({1}), Rational(0), false), std::invalid_argument);
    EXPECT_THROW(sys.pin(5, Rational(0)), std::out_of_range);
    LinearSystem other(3);
    EXPECT_THROW(sys.add_all(other), std::invalid_argument);
}

TEST(LinearSystem, KeepsTightestBound)
{
    LinearSystem sys(2);
    sys.add(R({2, 2}), Rational(4), false); // x + y <= 2
    sys.add(R({1, 1}), Rational(1), true);  // x + y < 1
    sys.add(R({3, 3}), Rational(9), false); // x + y <= 3
    EXPECT_EQ(sys.size(), 1u);
    auto iv = sys.range_of(R({1, 1}));
    ASSERT_TRUE(iv.hi);
    EXPECT_EQ(*iv.hi, 1);
    EXPECT_TRUE(iv.hi_open);
    EXPECT_FALSE(iv.lo);
}

TEST(LinearSystem, RangeOfProjection)
{
    // triangle x >= 0, y >= 0, x + 2y < 4
    LinearSystem sys(2);
    sys.add(R({-1, 0}), Rational(0), false);
    sys.add(R({0, -1}), Rational(0), false);
    sys.add(R({1, 2}), Rational(4), true);
    auto y = sys.range_of(1);
    EXPECT_EQ(to_string(y), "[0, 2)");
    auto diff = sys.range_of(R({1, -1}));
    EXPECT_EQ(to_string(diff), "(-2, 4)");
    auto x = sys.eliminate(1).range_of(0);
    EXPECT_EQ(to_string(x), "[0, 4)");
}

TEST(LinearSystem, PinSubstitutes)
{
    LinearSystem sys(3);
    sys.add(R({1, 1, 1}), Rational(3), false);
    sys.add(R({-1, -1, 0}), Rational(-2), true); // x + y > 2
    sys.pin(0, Rational(1));
    EXPECT_EQ(sys.pinned(0), Rational(1));
    EXPECT_FALSE(sys.pinned(1));
    sys.add(R({0, 1, 0}), Rational(5, 4), false); // y <= 5/4, added after pinning
    auto z = sys.range_of(2);
    ASSERT_TRUE(z.hi);
    EXPECT_EQ(*z.hi, 1); // z <= 2 - y with y > 1
    EXPECT_TRUE(z.hi_open);
    auto pt = sys.sample_point();
    ASSERT_TRUE(pt);
    EXPECT_EQ((*pt)[0], 1);
    sys.pin(1, Rational(3));
    EXPECT_FALSE(sys.feasible());
}

TEST(LinearSystem, RandomSystemsAgreeWithGridSearch)
{
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> coef(-3, 3), rhs(-4, 4);
    int feasible_count = 0, infeasible_count = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2;
        LinearSystem sys(n);
        std::vector<LinearConstraint> cs;
        auto push = [&](std::vector<Rational> a, Rational b, bool strict) {
            cs.push_back({a, b, strict});
            sys.add(std::move(a), std::move(b), strict);
        };
        for (std::size_t i = 0; i < n; ++i) { // box -2 <= x_i <= 2
            std::vector<Rational> e(n, Rational(0));
            e[i] = 1;
            push(e, Rational(2), false);
            e[i] = -1;
            push(e, Rational(2), false);
        }
        for (int k = 0; k < 4; ++k)
            push({Rational(coef(rng)), Rational(coef(rng))}, Rational(rhs(rng), 1 + static_cast<int>(rng() % 3)),
                 rng() % 2 == 0);

        const bool feasible = sys.feasible();
        auto pt = sys.sample_point();
        ASSERT_EQ(feasible, pt.has_value());
        if (pt)
            EXPECT_TRUE(satisfies_all(cs, *pt));

        auto range0 = sys.range_of(0);
        auto range_sum = sys.range_of(std::vector<Rational>{Rational(1), Rational(1)});
        bool grid_hit = false;
        for (int i = -24; i <= 24; ++i)
            for (int j = -24; j <= 24; ++j) {
                std::vector<Rational> x{Rational(i, 12), Rational(j, 12)};
                if (!satisfies_all(cs, x))
                    continue;
                grid_hit = true;
                EXPECT_TRUE(range0.contains(x[0]));
                EXPECT_TRUE(range_sum.contains(x[0] + x[1]));
            }
        if (grid_hit)
            EXPECT_TRUE(feasible);
        if (!feasible)
            EXPECT_TRUE(range0.empty);
        (feasible ? feasible_count : infeasible_count)++;
    }
    EXPECT_GT(feasible_count, 30);
    EXPECT_GT(infeasible_count, 30);
}

TEST(LinearSystem, RangeEndpointsAreAttainedOrApproached)
{
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> coef(-3, 3), rhs(-4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        LinearSystem sys(3);
        for (int k = 0; k < 6; ++k)
            sys.add({Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng))}, Rational(rhs(rng)),
                    rng() % 3 == 0);
        auto iv = sys.range_of(1);
        if (iv.empty)
            continue;
        // a closed finite endpoint is attained: pinning there stays feasible
        for (const auto& [end, open] : {std::pair{iv.lo, iv.lo_open}, std::pair{iv.hi, iv.hi_open}}) {
            if (!end)
                continue;
            LinearSystem at = sys;
            at.pin(1, *end);
            EXPECT_EQ(at.feasible(), !open);
        }
    }
}
