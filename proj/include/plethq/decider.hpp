#ifndef PLETHQ_DECIDER_HPP
#define PLETHQ_DECIDER_HPP

// Decides whether an integer-valued quasi-polynomial of degree <= 1 is the
// counting function s -> #([s*b + c, s*bbar + cbar] cap Z) of a
// one-dimensional shifted rational interval (or of a homogeneous dilation
// s*[beta, betabar]).
//
// The upper slope is forced: bbar = b + L with L the linear coefficient.
// Integral shifts of the interval and of the slope b leave every count
// unchanged, so b is normalized into [0,1) and (inhomogeneous) c into (0,1].
//
// Nonexistence: for s in a chosen order the integer m = ceil(s*b + c) is
// branched on. Each branch pins the integers of the dilation to
// m, ..., m + q(s) - 1 (or pins "no integer" when q(s) = 0), which is a set of
// linear constraints in (b, c, cbar). If every branch becomes infeasible the
// trace is a certificate and can be replayed independently.
//
// Existence: slopes b on the grid 1/(p*M) are tried; for each the remaining
// system in (c, cbar) is solved over two full periods, a point is picked and
// the candidate family is checked by direct counting and by its periodic
// closed form.

#include "plethq/interval.hpp"
#include "plethq/linear_system.hpp"
#include "plethq/quasipoly.hpp"
#include "plethq/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace plethq {

enum class Form { Inhomogeneous, Homogeneous };

inline std::string to_string(Form f) { return f == Form::Inhomogeneous ? "inhomogeneous" : "homogeneous"; }

inline Form parse_form(const std::string& text)
{
    if (text == "inhomogeneous")
        return Form::Inhomogeneous;
    if (text == "homogeneous")
        return Form::Homogeneous;
    throw std::invalid_argument("unknown form '" + text + "'");
}

struct DeciderOptions {
    Index s_max = 0;            // 0 selects 4 * period
    Index denom_multiplier = 4; // witness slopes have denominator dividing period * denom_multiplier
    std::vector<Index> order;   // branching order; empty means 0, 1, ..., s_max
};

enum class StepStatus { Feasible, Infeasible };

struct CertificateStep {
    Index s = 0;
    Integer target; // q(s)
    Integer m;      // ceil(s*b + c) on this branch
    Index parent = -1; // index of the parent step, -1 for the normalized root
    StepStatus status = StepStatus::Infeasible;
    std::string b_range; // projection of the branch onto b, feasible steps only
};

enum class CertificateKind { Slope, Reciprocity, Branching };

struct Certificate {
    Form form = Form::Inhomogeneous;
    CertificateKind kind = CertificateKind::Branching;
    Rational slope;              // linear coefficient used for bbar - b
    std::vector<Index> order;    // branching order
    std::vector<CertificateStep> steps;
    Index reciprocity_s = 0;     // Reciprocity: violating argument
};

struct Representable {
    ShiftedIntervalFamily witness;
    Index certified_period = 1;
};
struct NotRepresentable {
    Certificate certificate;
};
struct Unknown {
    std::string reason;
};

using DecisionOutcome = std::variant<Representable, NotRepresentable, Unknown>;

inline std::string verdict_name(const DecisionOutcome& d)
{
    if (std::holds_alternative<Representable>(d))
        return "representable";
    if (std::holds_alternative<NotRepresentable>(d))
        return "not_representable";
    return "unknown";
}

namespace detail {

inline constexpr std::size_t kB = 0, kC = 1, kCbar = 2;

inline LinearSystem normalized_root(Form form)
{
    LinearSystem sys(3);
    const Rational one(1), zero(0);
    sys.add({-one, zero, zero}, zero, false); // b >= 0
    sys.add({one, zero, zero}, one, true);    // b < 1
    if (form == Form::Inhomogeneous) {
        sys.add({zero, -one, zero}, zero, true); // c > 0
        sys.add({zero, one, zero}, one, false);  // c <= 1
    } else {
        sys.pin(kC, zero);
        sys.pin(kCbar, zero);
    }
    return sys;
}

// Constraints saying the integers in dilation s are exactly m, ..., m + target - 1
// (none at all when target == 0) with m = ceil(s*b + c).
inline void add_branch(LinearSystem& sys, Index s, const Integer& target, const Integer& m, const Rational& slope)
{
    const Rational S(s), one(1), zero(0);
    const Rational M(m), T(target);
    // m - 1 < s*b + c <= m
    sys.add({-S, -one, zero}, -(M - one), true);
    sys.add({S, one, zero}, M, false);
    // upper end s*b + cbar + s*slope
    const Rational shift = S * slope;
    if (target > 0) {
        // m + target - 1 <= hi < m + target
        sys.add({-S, zero, -one}, -(M + T - one - shift), false);
        sys.add({S, zero, one}, M + T - shift, true);
    } else {
        // hi < m
        sys.add({S, zero, one}, M - shift, true);
    }
}

inline std::vector<Rational> lower_end(Index s) { return {Rational(s), Rational(1), Rational(0)}; }

// Candidate values of ceil(s*b + c) over the branch.
inline std::pair<Integer, Integer> branch_range(const LinearSystem& sys, Index s)
{
    RationalInterval iv = sys.range_of(lower_end(s));
    if (iv.empty)
        return {Integer(1), Integer(0)};
    if (!iv.lo || !iv.hi)
        throw std::logic_error("lower end of the dilation is unbounded on a normalized branch");
    Integer first = ceil(*iv.lo);
    if (iv.lo_open && Rational(first) == *iv.lo)
        first += 1;
    return {first, ceil(*iv.hi)};
}

// Linear coefficient if consistent; nullopt for a degree-1 quasi-polynomial
// with varying slope.
inline std::optional<Rational> growth_slope(const QuasiPolynomial& q)
{
    if (q.degree() == 0)
        return Rational(0);
    return common_coefficient(q, 1);
}

inline void check_input(const QuasiPolynomial& q, Index s_max)
{
    if (q.degree() > 1)
        throw std::invalid_argument("only quasi-polynomials of degree <= 1 can be decided");
    for (Index s = 0; s <= s_max; ++s) {
        Integer v = eval_integer(q, s);
        if (v < 0)
            throw std::invalid_argument("quasi-polynomial is negative at s=" + std::to_string(s) +
                                        "; it cannot be a counting function");
    }
}

inline Index effective_s_max(const QuasiPolynomial& q, const DeciderOptions& opts)
{
    return opts.s_max > 0 ? opts.s_max : 4 * q.period();
}

inline std::vector<Index> effective_order(const QuasiPolynomial& q, const DeciderOptions& opts)
{
    if (!opts.order.empty())
        return opts.order;
    Index s_max = effective_s_max(q, opts);
    std::vector<Index> order;
    for (Index s = 0; s <= s_max; ++s)
        order.push_back(s);
    return order;
}

struct Branch {
    LinearSystem system;
    Index node;
};

// Runs the branching over `order` starting from `root`. Returns the surviving
// branches; appends every explored step to `steps` when given.
inline std::vector<Branch> explore(const QuasiPolynomial& q, const Rational& slope, const LinearSystem& root,
                                   const std::vector<Index>& order, std::vector<CertificateStep>* steps)
{
    std::vector<Branch> live{{root, -1}};
    for (Index s : order) {
        const Integer target = eval_integer(q, s);
        std::vector<Branch> next;
        for (const auto& br : live) {
            auto [first, last] = branch_range(br.system, s);
            for (Integer m = first; m <= last; m += 1) {
                LinearSystem child = br.system;
                add_branch(child, s, target, m, slope);
                const bool ok = child.feasible();
                Index node = -1;
                if (steps) {
                    CertificateStep st{s, target, m, br.node, ok ? StepStatus::Feasible : StepStatus::Infeasible, ""};
                    if (ok)
                        st.b_range = to_string(child.range_of(kB));
                    steps->push_back(std::move(st));
                    node = static_cast<Index>(steps->size()) - 1;
                }
                if (ok)
                    next.push_back({std::move(child), node});
            }
        }
        live = std::move(next);
        if (live.empty())
            break;
    }
    return live;
}

inline QuasiPolynomial expand_to_period(const QuasiPolynomial& q, Index period)
{
    std::vector<QuasiPolynomial::Row> rows;
    for (Index r = 0; r < period; ++r)
        rows.push_back(q.row_for(r));
    return QuasiPolynomial(period, std::move(rows));
}

inline bool witness_matches(const ShiftedIntervalFamily& fam, const QuasiPolynomial& q, Index period)
{
    for (Index s = 0; s <= 2 * period; ++s)
        if (Rational(count(fam, s)) != eval(q, s))
            return false;
    auto closed = periodic_count_qp(fam, period);
    if (!std::holds_alternative<QuasiPolynomial>(closed))
        return false;
    return std::get<QuasiPolynomial>(closed) == expand_to_period(q, period);
}

inline std::optional<Representable> search_witness(const QuasiPolynomial& q, const Rational& slope, Form form,
                                                   Index denom_multiplier)
{
    const Index period = q.period() * denom_multiplier;
    std::vector<Index> window;
    for (Index s = 0; s < 2 * period; ++s)
        window.push_back(s);
    for (Index j = 0; j < period; ++j) {
        const Rational b(j, period);
        if (!is_integer(Rational(period) * b) || !is_integer(Rational(period) * (b + slope)))
            continue;
        LinearSystem root = normalized_root(form);
        root.pin(kB, b);
        auto live = explore(q, slope, root, window, nullptr);
        for (const auto& br : live) {
            auto point = br.system.sample_point();
            if (!point)
                continue;
            ShiftedIntervalFamily fam{(*point)[kB], (*point)[kC], (*point)[kB] + slope, (*point)[kCbar]};
            if (witness_matches(fam, q, period))
                return Representable{fam, period};
        }
    }
    return std::nullopt;
}

inline DecisionOutcome decide(const QuasiPolynomial& q, const DeciderOptions& opts, Form form)
{
    if (opts.denom_multiplier < 1)
        throw std::invalid_argument("denom_multiplier must be positive");
    const Index s_max = effective_s_max(q, opts);
    if (q.degree() > 1)
        throw std::invalid_argument("only quasi-polynomials of degree <= 1 can be decided");

    auto slope = growth_slope(q);
    if (!slope || *slope < 0) {
        Certificate cert;
        cert.form = form;
        cert.kind = CertificateKind::Slope;
        cert.slope = slope.value_or(Rational(0));
        return NotRepresentable{cert};
    }
    check_input(q, s_max);

    if (form == Form::Homogeneous) {
        auto violations = reciprocity_violations(q, s_max);
        if (!violations.empty()) {
            Certificate cert;
            cert.form = form;
            cert.kind = CertificateKind::Reciprocity;
            cert.slope = *slope;
            cert.reciprocity_s = violations.front();
            return NotRepresentable{cert};
        }
    }

    // A witness implies every branching path containing it survives, so
    // looking for one first does not change the verdict.
    if (auto found = search_witness(q, *slope, form, opts.denom_multiplier))
        return *found;

    Certificate cert;
    cert.form = form;
    cert.kind = CertificateKind::Branching;
    cert.slope = *slope;
    cert.order = effective_order(q, opts);
    for (Index s : cert.order)
        if (s < 0)
            throw std::invalid_argument("branching order must use s >= 0");
    auto live = explore(q, *slope, normalized_root(form), cert.order, &cert.steps);
    if (live.empty())
        return NotRepresentable{std::move(cert)};
    return Unknown{"no witness with slope denominator dividing " + std::to_string(q.period() * opts.denom_multiplier) +
                   "; constraints consistent through s=" + std::to_string(s_max) + " (" +
                   std::to_string(live.size()) + " live branches)"};
}

} // namespace detail

inline DecisionOutcome decide_inhomogeneous_1d(const QuasiPolynomial& q, const DeciderOptions& opts = {})
{
    return detail::decide(q, opts, Form::Inhomogeneous);
}

inline DecisionOutcome decide_homogeneous_1d(const QuasiPolynomial& q, const DeciderOptions& opts = {})
{
    return detail::decide(q, opts, Form::Homogeneous);
}

inline DecisionOutcome decide_1d(const QuasiPolynomial& q, Form form, const DeciderOptions& opts = {})
{
    return detail::decide(q, opts, form);
}

// Rebuilds every branch system from q and the recorded branch integers and
// checks each claimed status with feasible(), the exhaustiveness of the m
// values below every surviving node, and that nothing survives the last level.
inline bool replay_certificate(const Certificate& cert, const QuasiPolynomial& q)
{
    using namespace detail;
    try {
        auto slope = growth_slope(q);
        if (cert.kind == CertificateKind::Slope)
            return q.degree() <= 1 && (!slope || *slope < 0);
        if (!slope || *slope != cert.slope || *slope < 0)
            return false;
        if (cert.kind == CertificateKind::Reciprocity) {
            if (cert.form != Form::Homogeneous || cert.reciprocity_s < 1)
                return false;
            return abs(eval_integer(q, -cert.reciprocity_s)) > eval_integer(q, cert.reciprocity_s);
        }
        if (cert.order.empty() || cert.steps.empty())
            return false;
        std::set<Index> seen;
        for (Index s : cert.order)
            if (s < 0 || !seen.insert(s).second)
                return false;

        std::vector<bool> used(cert.steps.size(), false);
        std::vector<Branch> live{{normalized_root(cert.form), -1}};
        for (Index s : cert.order) {
            const Integer target = eval_integer(q, s);
            if (target < 0)
                return false;
            std::vector<Branch> next;
            for (const auto& br : live) {
                std::vector<std::size_t> children;
                for (std::size_t i = 0; i < cert.steps.size(); ++i)
                    if (cert.steps[i].parent == br.node && !used[i])
                        children.push_back(i);
                if (children.empty())
                    return false;
                for (std::size_t idx = 0; idx < children.size(); ++idx) {
                    const auto& st = cert.steps[children[idx]];
                    if (st.s != s || st.target != target)
                        return false;
                    if (idx > 0 && st.m != cert.steps[children[idx - 1]].m + 1)
                        return false;
                }
                const Integer m_lo = cert.steps[children.front()].m;
                const Integer m_hi = cert.steps[children.back()].m;
                // nothing below m_lo: s*b + c <= m_lo - 1 is impossible
                LinearSystem below = br.system;
                below.add(lower_end(s), Rational(m_lo - 1), false);
                if (below.feasible())
                    return false;
                // nothing above m_hi: s*b + c > m_hi is impossible
                LinearSystem above = br.system;
                auto neg = lower_end(s);
                for (auto& a : neg)
                    a = -a;
                above.add(neg, -Rational(m_hi), true);
                if (above.feasible())
                    return false;
                for (std::size_t i : children) {
                    used[i] = true;
                    const auto& st = cert.steps[i];
                    LinearSystem child = br.system;
                    add_branch(child, s, target, st.m, *slope);
                    const bool ok = child.feasible();
                    if (ok != (st.status == StepStatus::Feasible))
                        return false;
                    if (ok)
                        next.push_back({std::move(child), static_cast<Index>(i)});
                }
            }
            live = std::move(next);
            if (live.empty())
                break;
        }
        if (!live.empty())
            return false;
        return std::all_of(used.begin(), used.end(), [](bool u) { return u; });
    } catch (const std::exception&) {
        return false;
    }
}

inline std::string to_string(StepStatus s) { return s == StepStatus::Feasible ? "feasible" : "infeasible"; }

inline std::string to_string(CertificateKind k)
{
    switch (k) {
    case CertificateKind::Slope: return "slope";
    case CertificateKind::Reciprocity: return "reciprocity";
    default: return "branching";
    }
}

inline nlohmann::json to_json(const DecisionOutcome& outcome)
{
    nlohmann::json j;
    j["verdict"] = verdict_name(outcome);
    if (const auto* rep = std::get_if<Representable>(&outcome)) {
        j["witness"] = to_json(rep->witness);
        j["certified_period"] = rep->certified_period;
    } else if (const auto* nr = std::get_if<NotRepresentable>(&outcome)) {
        const Certificate& c = nr->certificate;
        j["form"] = to_string(c.form);
        j["kind"] = to_string(c.kind);
        j["slope"] = to_string(c.slope);
        if (c.kind == CertificateKind::Reciprocity)
            j["reciprocity_s"] = c.reciprocity_s;
        j["order"] = c.order;
        nlohmann::json steps = nlohmann::json::array();
        for (const auto& st : c.steps) {
            nlohmann::json row{{"s", st.s},
                               {"N", st.target.str()},
                               {"m", st.m.str()},
                               {"parent", st.parent},
                               {"status", to_string(st.status)}};
            if (!st.b_range.empty())
                row["b_range"] = st.b_range;
            steps.push_back(std::move(row));
        }
        j["certificate"] = std::move(steps);
    } else {
        j["reason"] = std::get<Unknown>(outcome).reason;
    }
    return j;
}

// Parses the "not_representable" JSON produced by to_json.
inline Certificate certificate_from_json(const nlohmann::json& j)
{
    Certificate c;
    c.form = parse_form(j.at("form").get<std::string>());
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "slope")
        c.kind = CertificateKind::Slope;
    else if (kind == "reciprocity")
        c.kind = CertificateKind::Reciprocity;
    else if (kind == "branching")
        c.kind = CertificateKind::Branching;
    else
        throw std::invalid_argument("unknown certificate kind '" + kind + "'");
    c.slope = parse_rational(j.at("slope").get<std::string>());
    if (j.contains("reciprocity_s"))
        c.reciprocity_s = j.at("reciprocity_s").get<Index>();
    c.order = j.at("order").get<std::vector<Index>>();
    for (const auto& row : j.at("certificate")) {
        CertificateStep st;
        st.s = row.at("s").get<Index>();
        st.target = parse_integer(row.at("N").get<std::string>());
        st.m = parse_integer(row.at("m").get<std::string>());
        st.parent = row.at("parent").get<Index>();
        const auto status = row.at("status").get<std::string>();
        if (status != "feasible" && status != "infeasible")
            throw std::invalid_argument("unknown step status '" + status + "'");
        st.status = status == "feasible" ? StepStatus::Feasible : StepStatus::Infeasible;
        if (row.contains("b_range"))
            st.b_range = row.at("b_range").get<std::string>();
        c.steps.push_back(std::move(st));
    }
    return c;
}

} // namespace plethq

#endif // PLETHQ_DECIDER_HPP
