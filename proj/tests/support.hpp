#ifndef PLETHQ_TESTS_SUPPORT_HPP
#define PLETHQ_TESTS_SUPPORT_HPP

// Random generators and brute-force oracles shared by the test suites.

#include "plethq/interval.hpp"

#include <numeric>
#include <random>

namespace plethq::testing {

inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den)
{
    std::uniform_int_distribution<long> den_dist(1, max_den);
    long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(lo * den, hi * den);
    return Rational(num_dist(rng), den);
}

// Family with slopes of denominator <= max_den and offsets of denominator <= 12.
inline ShiftedIntervalFamily random_family(std::mt19937_64& rng, long max_den = 12)
{
    ShiftedIntervalFamily f;
    f.b = random_rational(rng, -2, 2, max_den);
    f.bbar = random_rational(rng, -2, 2, max_den);
    f.c = random_rational(rng, -3, 3, 12);
    f.cbar = random_rational(rng, -3, 3, 12);
    return f;
}

inline Integer brute_count(const ShiftedIntervalFamily& f, Index s)
{
    const Rational lo = f.lower(s), hi = f.upper(s);
    Integer n = 0;
    for (Integer x = plethq::floor(lo) - 1; Rational(x) <= hi + 1; x += 1)
        if (lo <= Rational(x) && Rational(x) <= hi)
            n += 1;
    return n;
}

// Smallest p with p*b and p*bbar integral.
inline Index slope_period(const ShiftedIntervalFamily& f)
{
    return static_cast<Index>(std::lcm(static_cast<long>(denominator(f.b)), static_cast<long>(denominator(f.bbar))));
}

} // namespace plethq::testing

#endif // PLETHQ_TESTS_SUPPORT_HPP
