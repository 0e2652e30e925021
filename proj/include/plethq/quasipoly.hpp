#ifndef PLETHQ_QUASIPOLY_HPP
#define PLETHQ_QUASIPOLY_HPP

// Univariate quasi-polynomials with exact rational coefficients: one
// polynomial per residue class modulo the period.

#include "plethq/partition.hpp"
#include "plethq/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace plethq {

class QuasiPolynomial {
public:
    using Row = std::vector<Rational>;

    QuasiPolynomial() : QuasiPolynomial(1, {Row{Rational(0)}}) {}

    // rows[j] holds the coefficients (constant term first) used for s = j mod period.
    QuasiPolynomial(Index period, std::vector<Row> rows) : period_(period), rows_(std::move(rows))
    {
        if (period_ < 1)
            throw std::invalid_argument("quasi-polynomial period must be positive");
        if (rows_.size() != static_cast<std::size_t>(period_))
            throw std::invalid_argument("quasi-polynomial needs exactly one row per residue class");
        std::size_t width = 1;
        for (const auto& r : rows_)
            width = std::max(width, r.size());
        for (auto& r : rows_)
            r.resize(width, Rational(0));
        // drop columns that vanish in every row
        while (width > 1 && std::all_of(rows_.begin(), rows_.end(), [&](const Row& r) { return r[width - 1] == 0; })) {
            --width;
            for (auto& r : rows_)
                r.resize(width);
        }
    }

    static QuasiPolynomial constant(const Rational& value) { return QuasiPolynomial(1, {Row{value}}); }

    Index period() const noexcept { return period_; }
    std::size_t degree() const noexcept { return rows_.front().size() - 1; }
    const std::vector<Row>& rows() const noexcept { return rows_; }

    const Row& row_for(Index s) const { return rows_[static_cast<std::size_t>(residue(s))]; }

    Index residue(Index s) const noexcept { return ((s % period_) + period_) % period_; }

    friend bool operator==(const QuasiPolynomial&, const QuasiPolynomial&) = default;

private:
    Index period_;
    std::vector<Row> rows_;
};

inline Rational eval(const QuasiPolynomial& q, Index s)
{
    const auto& row = q.row_for(s);
    Rational x(s), acc(0);
    for (auto it = row.rbegin(); it != row.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

// s -> (s + r(s)) / 3 with r = (3, -1, 1, 0, 2, -2) repeating with period 6.
inline QuasiPolynomial phi_reference()
{
    static const Index r[6] = {3, -1, 1, 0, 2, -2};
    std::vector<QuasiPolynomial::Row> rows;
    for (Index j = 0; j < 6; ++j)
        rows.push_back({Rational(r[j], 3), Rational(1, 3)});
    return QuasiPolynomial(6, std::move(rows));
}

// 1 on even s, 0 on odd s.
inline QuasiPolynomial parity_qp()
{
    return QuasiPolynomial(2, {{Rational(1)}, {Rational(0)}});
}

struct FitFailure {
    Index s = 0;
    Rational expected;
    Rational fitted;
    std::string message() const
    {
        return "sample at s=" + std::to_string(s) + " is " + to_string(expected) + " but the fit gives " +
               to_string(fitted);
    }
};

using FitResult = std::variant<QuasiPolynomial, FitFailure>;

namespace detail {
// Coefficients of the unique polynomial of degree <= points.size()-1 through the points.
inline std::vector<Rational> interpolate(const std::vector<std::pair<Index, Rational>>& points)
{
    const std::size_t m = points.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m + 1));
    for (std::size_t i = 0; i < m; ++i) {
        Rational power(1);
        for (std::size_t j = 0; j < m; ++j) {
            a[i][j] = power;
            power *= Rational(points[i].first);
        }
        a[i][m] = points[i].second;
    }
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        while (pivot < m && a[pivot][col] == 0)
            ++pivot;
        if (pivot == m)
            throw std::invalid_argument("interpolation nodes must be distinct");
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col || a[r][col] == 0)
                continue;
            Rational factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= m; ++c)
                a[r][c] -= factor * a[col][c];
        }
    }
    std::vector<Rational> coeffs(m);
    for (std::size_t i = 0; i < m; ++i)
        coeffs[i] = a[i][m] / a[i][i];
    return coeffs;
}
} // namespace detail

// Interpolates each residue class from its degree+1 smallest sample points,
// then checks the result against every sample in increasing s.
inline FitResult fit(std::vector<std::pair<Index, Rational>> samples, Index period, std::size_t degree)
{
    if (period < 1)
        throw std::invalid_argument("fit requires a positive period");
    std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::vector<std::pair<Index, Rational>>> classes(static_cast<std::size_t>(period));
    for (const auto& sample : samples) {
        if (sample.first < 0)
            throw std::invalid_argument("fit samples must have s >= 0");
        auto& bucket = classes[static_cast<std::size_t>(sample.first % period)];
        if (bucket.size() < degree + 1 && (bucket.empty() || bucket.back().first != sample.first))
            bucket.push_back(sample);
    }
    std::vector<QuasiPolynomial::Row> rows;
    for (Index r = 0; r < period; ++r) {
        const auto& bucket = classes[static_cast<std::size_t>(r)];
        if (bucket.size() < degree + 1)
            throw std::invalid_argument("residue class " + std::to_string(r) + " mod " + std::to_string(period) +
                                        " has fewer than " + std::to_string(degree + 1) + " samples");
        rows.push_back(detail::interpolate(bucket));
    }
    QuasiPolynomial q(period, std::move(rows));
    for (const auto& [s, value] : samples) {
        Rational got = eval(q, s);
        if (got != value)
            return FitFailure{s, value, got};
    }
    return q;
}

// Shared top-degree coefficient, or nullopt when the rows disagree on it.
inline std::optional<Rational> leading_coefficient(const QuasiPolynomial& q)
{
    const std::size_t deg = q.degree();
    const Rational& first = q.rows().front()[deg];
    for (const auto& row : q.rows())
        if (row[deg] != first)
            return std::nullopt;
    return first;
}

// Coefficient of s^j if it is the same in all residue classes.
inline std::optional<Rational> common_coefficient(const QuasiPolynomial& q, std::size_t j)
{
    if (j > q.degree())
        return Rational(0);
    const Rational& first = q.rows().front()[j];
    for (const auto& row : q.rows())
        if (row[j] != first)
            return std::nullopt;
    return first;
}

inline Integer eval_integer(const QuasiPolynomial& q, Index s)
{
    Rational v = eval(q, s);
    if (!is_integer(v))
        throw std::domain_error("quasi-polynomial value at s=" + std::to_string(s) + " is not an integer: " +
                                to_string(v));
    return numerator(v);
}

inline bool is_integer_valued(const QuasiPolynomial& q, Index from, Index to)
{
    for (Index s = from; s <= to; ++s)
        if (!is_integer(eval(q, s)))
            return false;
    return true;
}

// s in 1..s_max with |q(-s)| > q(s); an Ehrhart function of a rational
// polytope never has one.
inline std::vector<Index> reciprocity_violations(const QuasiPolynomial& q, Index s_max)
{
    if (s_max < 1)
        throw std::invalid_argument("reciprocity_violations requires s_max >= 1");
    std::vector<Index> out;
    for (Index s = 1; s <= s_max; ++s) {
        Integer pos = eval_integer(q, s);
        Integer neg = eval_integer(q, -s);
        if (abs(neg) > pos)
            out.push_back(s);
    }
    return out;
}

inline QuasiPolynomial add(const QuasiPolynomial& a, const QuasiPolynomial& b)
{
    Index p = static_cast<Index>(std::lcm(a.period(), b.period()));
    std::vector<QuasiPolynomial::Row> rows;
    for (Index r = 0; r < p; ++r) {
        const auto& ra = a.row_for(r);
        const auto& rb = b.row_for(r);
        QuasiPolynomial::Row sum(std::max(ra.size(), rb.size()), Rational(0));
        for (std::size_t i = 0; i < ra.size(); ++i)
            sum[i] += ra[i];
        for (std::size_t i = 0; i < rb.size(); ++i)
            sum[i] += rb[i];
        rows.push_back(std::move(sum));
    }
    return QuasiPolynomial(p, std::move(rows));
}

inline QuasiPolynomial scale(const QuasiPolynomial& q, const Rational& factor)
{
    auto rows = q.rows();
    for (auto& row : rows)
        for (auto& c : row)
            c *= factor;
    return QuasiPolynomial(q.period(), std::move(rows));
}

// Same function with the smallest period dividing the declared one.
inline QuasiPolynomial reduce_period(const QuasiPolynomial& q)
{
    for (Index p = 1; p < q.period(); ++p) {
        if (q.period() % p != 0)
            continue;
        bool ok = true;
        for (Index r = p; r < q.period() && ok; ++r)
            ok = q.rows()[static_cast<std::size_t>(r)] == q.rows()[static_cast<std::size_t>(r % p)];
        if (ok)
            return QuasiPolynomial(p, std::vector<QuasiPolynomial::Row>(q.rows().begin(), q.rows().begin() + p));
    }
    return q;
}

inline nlohmann::json to_json(const QuasiPolynomial& q)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : q.rows()) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row)
            r.push_back(to_string(c));
        rows.push_back(std::move(r));
    }
    return {{"period", q.period()}, {"degree", q.degree()}, {"rows", std::move(rows)}};
}

inline QuasiPolynomial quasipoly_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("period") || !j.contains("rows"))
        throw std::invalid_argument("quasi-polynomial JSON needs 'period' and 'rows'");
    Index period = j.at("period").get<Index>();
    std::vector<QuasiPolynomial::Row> rows;
    for (const auto& r : j.at("rows")) {
        QuasiPolynomial::Row row;
        for (const auto& c : r) {
            if (c.is_string())
                row.push_back(parse_rational(c.get<std::string>()));
            else if (c.is_number_integer())
                row.push_back(Rational(c.get<long long>()));
            else
                throw std::invalid_argument("quasi-polynomial coefficients must be \"num/den\" strings");
        }
        rows.push_back(std::move(row));
    }
    QuasiPolynomial q(period, std::move(rows));
    if (j.contains("degree") && j.at("degree").get<std::size_t>() < q.degree())
        throw std::invalid_argument("declared degree is smaller than the coefficient rows");
    return q;
}

} // namespace plethq

#endif // PLETHQ_QUASIPOLY_HPP
