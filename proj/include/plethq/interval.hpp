#ifndef PLETHQ_INTERVAL_HPP
#define PLETHQ_INTERVAL_HPP

// One-dimensional shifted rational polytopes. Dilation s of the family
// (b, c, bbar, cbar) is the closed interval [s*b + c, s*bbar + cbar].

#include "plethq/quasipoly.hpp"
#include "plethq/rational.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace plethq {

struct ShiftedIntervalFamily {
    Rational b, c, bbar, cbar;

    Rational lower(Index s) const { return Rational(s) * b + c; }
    Rational upper(Index s) const { return Rational(s) * bbar + cbar; }

    // bbar < b: dilations are empty for all large s.
    bool eventually_empty() const { return bbar < b; }

    friend bool operator==(const ShiftedIntervalFamily&, const ShiftedIntervalFamily&) = default;
};

struct PointFamily {
    Rational q;
};

enum class Bound { Lower, Upper };

// x >= s*slope + offset (Lower) or x <= s*slope + offset (Upper).
struct ShiftedConstraint {
    Bound direction;
    Rational slope, offset;
};

// floor(upper) - ceil(lower) + 1, which is negative for some empty dilations.
inline Integer raw_count(const ShiftedIntervalFamily& fam, Index s)
{
    return floor(fam.upper(s)) - ceil(fam.lower(s)) + 1;
}

inline Integer count(const ShiftedIntervalFamily& fam, Index s)
{
    Integer raw = raw_count(fam, s);
    return raw > 0 ? raw : Integer(0);
}

inline Integer count_point(const PointFamily& fam, Index s) { return is_integer(Rational(s) * fam.q) ? 1 : 0; }

// Integers in the intersection of all constraints at dilation s.
inline Integer count_system(const std::vector<ShiftedConstraint>& lowers, const std::vector<ShiftedConstraint>& uppers,
                            Index s)
{
    if (lowers.empty() || uppers.empty())
        throw std::invalid_argument("count_system needs at least one lower and one upper constraint");
    Rational lo = Rational(s) * lowers.front().slope + lowers.front().offset;
    for (const auto& l : lowers)
        lo = std::max(lo, Rational(s) * l.slope + l.offset);
    Rational hi = Rational(s) * uppers.front().slope + uppers.front().offset;
    for (const auto& u : uppers)
        hi = std::min(hi, Rational(s) * u.slope + u.offset);
    Integer raw = floor(hi) - ceil(lo) + 1;
    return raw > 0 ? raw : Integer(0);
}

struct CanonicalFamily {
    ShiftedIntervalFamily family;
    Index s0 = 0; // the pair is binding for every s >= s0
};

// Keeps the asymptotically binding lower and upper constraint.
inline CanonicalFamily canonicalize(const std::vector<ShiftedConstraint>& lowers,
                                    const std::vector<ShiftedConstraint>& uppers)
{
    if (lowers.empty() || uppers.empty())
        throw std::invalid_argument("canonicalize needs at least one lower and one upper constraint");
    for (const auto& l : lowers)
        if (l.direction != Bound::Lower)
            throw std::invalid_argument("upper constraint passed as a lower bound");
    for (const auto& u : uppers)
        if (u.direction != Bound::Upper)
            throw std::invalid_argument("lower constraint passed as an upper bound");

    const ShiftedConstraint* lo = &lowers.front();
    for (const auto& l : lowers)
        if (l.slope > lo->slope || (l.slope == lo->slope && l.offset > lo->offset))
            lo = &l;
    const ShiftedConstraint* hi = &uppers.front();
    for (const auto& u : uppers)
        if (u.slope < hi->slope || (u.slope == hi->slope && u.offset < hi->offset))
            hi = &u;

    Integer s0 = 0;
    // lo dominates l once s*(lo.slope - l.slope) >= l.offset - lo.offset
    for (const auto& l : lowers)
        if (l.slope < lo->slope)
            s0 = std::max(s0, ceil((l.offset - lo->offset) / (lo->slope - l.slope)));
    for (const auto& u : uppers)
        if (u.slope > hi->slope)
            s0 = std::max(s0, ceil((hi->offset - u.offset) / (u.slope - hi->slope)));

    return {ShiftedIntervalFamily{lo->slope, lo->offset, hi->slope, hi->offset}, static_cast<Index>(s0)};
}

struct NotPeriodic {
    std::string reason;
};

using PeriodicCountResult = std::variant<QuasiPolynomial, NotPeriodic>;

// Closed form of s -> count(fam, s) on all s >= 0 with period p. With p*b and
// p*bbar integral the raw count obeys raw(s+p) = raw(s) + p*(bbar-b), so one
// period of raw values determines everything as long as no residue class
// passes through the clamped (raw < 0) regime on its way up or down.
inline PeriodicCountResult periodic_count_qp(const ShiftedIntervalFamily& fam, Index p)
{
    if (p < 1)
        throw std::invalid_argument("periodic_count_qp requires p >= 1");
    if (!is_integer(Rational(p) * fam.b) || !is_integer(Rational(p) * fam.bbar))
        return NotPeriodic{"p*b and p*bbar must both be integers"};

    const Rational slope = fam.bbar - fam.b;
    std::vector<QuasiPolynomial::Row> rows;
    for (Index r = 0; r < p; ++r) {
        Integer raw = raw_count(fam, r);
        if (slope == 0) {
            rows.push_back({Rational(raw > 0 ? raw : Integer(0))});
        } else if (slope > 0) {
            if (raw < 0)
                return NotPeriodic{"residue " + std::to_string(r) + " starts in the clamped regime (raw count " +
                                   raw.str() + ")"};
            rows.push_back({Rational(raw) - slope * Rational(r), slope});
        } else {
            if (raw > 0)
                return NotPeriodic{"dilations shrink to empty after being nonempty at s=" + std::to_string(r)};
            rows.push_back({Rational(0)});
        }
    }
    return QuasiPolynomial(p, std::move(rows));
}

struct SumDecompositionReport {
    Rational epsilon;
    Index s_max = 0;
    // {x : epsilon <= x <= s/3} plus the point family {s/2}
    std::vector<Index> corrected_failures;
    // s*[epsilon, 1/3 + epsilon] plus {s/2}
    std::vector<Index> literal_failures;
    bool corrected_pass() const { return corrected_failures.empty(); }
    std::optional<Index> literal_first_failure() const
    {
        if (literal_failures.empty())
            return std::nullopt;
        return literal_failures.front();
    }
    std::optional<Index> literal_first_positive_failure() const
    {
        for (Index s : literal_failures)
            if (s > 0)
                return s;
        return std::nullopt;
    }
};

inline SumDecompositionReport verify_sum_decomposition(const Rational& epsilon, Index s_max,
                                                       const QuasiPolynomial& target = phi_reference())
{
    if (epsilon <= 0 || epsilon > 1)
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    const ShiftedIntervalFamily corrected{Rational(0), epsilon, Rational(1, 3), Rational(0)};
    const ShiftedIntervalFamily literal{epsilon, Rational(0), Rational(1, 3) + epsilon, Rational(0)};
    const PointFamily half{Rational(1, 2)};
    SumDecompositionReport report{epsilon, s_max, {}, {}};
    for (Index s = 0; s <= s_max; ++s) {
        Rational want = eval(target, s);
        Integer point = count_point(half, s);
        if (Rational(count(corrected, s) + point) != want)
            report.corrected_failures.push_back(s);
        if (Rational(count(literal, s) + point) != want)
            report.literal_failures.push_back(s);
    }
    return report;
}

inline nlohmann::json to_json(const ShiftedIntervalFamily& fam)
{
    return {{"b", to_string(fam.b)}, {"c", to_string(fam.c)}, {"bbar", to_string(fam.bbar)},
            {"cbar", to_string(fam.cbar)}};
}

inline ShiftedIntervalFamily family_from_json(const nlohmann::json& j)
{
    auto field = [&](const char* key) { return parse_rational(j.at(key).get<std::string>()); };
    return {field("b"), field("c"), field("bbar"), field("cbar")};
}

inline nlohmann::json to_json(const SumDecompositionReport& r)
{
    nlohmann::json j{{"epsilon", to_string(r.epsilon)},
                     {"s_max", r.s_max},
                     {"corrected_pass", r.corrected_pass()},
                     {"corrected_failures", r.corrected_failures},
                     {"literal_failure_count", r.literal_failures.size()}};
    j["literal_first_failure"] = r.literal_first_failure() ? nlohmann::json(*r.literal_first_failure()) : nullptr;
    j["literal_first_positive_failure"] =
        r.literal_first_positive_failure() ? nlohmann::json(*r.literal_first_positive_failure()) : nullptr;
    return j;
}

} // namespace plethq

#endif // PLETHQ_INTERVAL_HPP
