#ifndef PLETHQ_RATIONAL_HPP
#define PLETHQ_RATIONAL_HPP

// Exact integer and rational scalars shared by every module.

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace plethq {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    return Rational(num, den);
}

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline Integer floor(const Rational& q)
{
    Integer n = numerator(q), d = denominator(q);
    Integer r = n / d; // truncates toward zero
    if (r * d != n && n < 0)
        r -= 1;
    return r;
}

inline Integer ceil(const Rational& q)
{
    Integer n = numerator(q), d = denominator(q);
    Integer r = n / d;
    if (r * d != n && n > 0)
        r += 1;
    return r;
}

inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

inline Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0)
        return 0;
    return boost::multiprecision::lcm(a, b);
}

// "num/den", or just "num" when the denominator is one.
inline std::string to_string(const Rational& q)
{
    if (is_integer(q))
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

namespace detail {
inline Integer parse_integer(std::string_view text)
{
    if (text.empty())
        throw std::invalid_argument("empty integer literal");
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size())
        throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
    for (std::size_t j = i; j < text.size(); ++j)
        if (text[j] < '0' || text[j] > '9')
            throw std::invalid_argument("malformed integer literal '" + std::string(text) + "'");
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return Integer(digits);
}
} // namespace detail

inline Integer parse_integer(std::string_view text) { return detail::parse_integer(text); }

// Accepts "a", "-a", "a/b" with b != 0.
inline Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(detail::parse_integer(text));
    return make_rational(detail::parse_integer(text.substr(0, slash)),
                         detail::parse_integer(text.substr(slash + 1)));
}

} // namespace plethq

#endif // PLETHQ_RATIONAL_HPP
