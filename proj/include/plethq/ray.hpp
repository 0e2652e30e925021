#ifndef PLETHQ_RAY_HPP
#define PLETHQ_RAY_HPP

// Plethysm multiplicities along rays:
//   outer-scaled  f(s) = m^{d, s*k}_{s*lambda}
//   inner-scaled  g(s) = m^{s*d, k}_{s*lambda}

#include "plethq/parallel.hpp"
#include "plethq/plethysm.hpp"
#include "plethq/quasipoly.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace plethq {

enum class RayMode { OuterScaled, InnerScaled };

inline std::string to_string(RayMode m) { return m == RayMode::OuterScaled ? "outer" : "inner"; }

inline RayMode parse_ray_mode(const std::string& text)
{
    if (text == "outer")
        return RayMode::OuterScaled;
    if (text == "inner")
        return RayMode::InnerScaled;
    throw std::invalid_argument("ray mode must be 'outer' or 'inner', got '" + text + "'");
}

struct RaySpec {
    RayMode mode = RayMode::OuterScaled;
    Index d = 1, k = 1;
    Partition lambda;

    RaySpec() = default;
    RaySpec(RayMode mode_, Index d_, Index k_, Partition lambda_)
        : mode(mode_), d(d_), k(k_), lambda(std::move(lambda_))
    {
        if (d < 1 || k < 1)
            throw std::invalid_argument("ray needs d, k >= 1");
        if (lambda.size() != d * k)
            throw std::invalid_argument("ray needs |lambda| = d*k");
    }

    PlethysmQuery at(Index s) const
    {
        if (mode == RayMode::OuterScaled)
            return {d, s * k, scale(lambda, s)};
        return {s * d, k, scale(lambda, s)};
    }
};

inline Integer ray_value(const RaySpec& spec, Index s)
{
    if (s == 0)
        return 1; // the empty partition in the trivial representation
    return plethysm_multiplicity(spec.at(s));
}

// Entries for s = 0..s_max. Each entry is independent; they are computed on
// the worker pool and assembled in order.
inline std::vector<Integer> sample_ray(const RaySpec& spec, Index s_max, unsigned workers = worker_count())
{
    if (s_max < 0)
        throw std::invalid_argument("s_max must be nonnegative");
    return parallel_map<Integer>(
        static_cast<std::size_t>(s_max + 1), [&](std::size_t s) { return ray_value(spec, static_cast<Index>(s)); },
        workers);
}

inline std::vector<std::pair<Index, Rational>> as_samples(const std::vector<Integer>& values)
{
    std::vector<std::pair<Index, Rational>> out;
    for (std::size_t s = 0; s < values.size(); ++s)
        out.emplace_back(static_cast<Index>(s), Rational(values[s]));
    return out;
}

inline FitResult extract_quasipoly(const RaySpec& spec, Index period_hint, std::size_t degree_hint, Index s_max,
                                   unsigned workers = worker_count())
{
    if (period_hint < 1)
        throw std::invalid_argument("period hint must be positive");
    if (s_max < period_hint * static_cast<Index>(degree_hint + 2))
        throw std::invalid_argument("s_max must be at least period*(degree+2) to leave a validation period");
    return fit(as_samples(sample_ray(spec, s_max, workers)), period_hint, degree_hint);
}

inline const std::vector<Index>& period_ladder()
{
    static const std::vector<Index> ladder{1, 2, 3, 4, 6, 12};
    return ladder;
}

struct Discovery {
    std::optional<QuasiPolynomial> qp;
    std::optional<FitFailure> last_failure;
};

// First (degree, period) hypothesis, degrees ascending and periods along the
// ladder, whose fit reproduces every sample. A hypothesis is only tried when
// the samples leave at least one full validation period.
inline Discovery discover_quasipoly(const std::vector<Integer>& values, std::size_t max_degree,
                                    const std::vector<Index>& periods = period_ladder())
{
    Discovery out;
    const Index s_max = static_cast<Index>(values.size()) - 1;
    auto samples = as_samples(values);
    for (std::size_t deg = 0; deg <= max_degree; ++deg)
        for (Index p : periods) {
            if (s_max < p * static_cast<Index>(deg + 2))
                continue;
            auto result = fit(samples, p, deg);
            if (auto* q = std::get_if<QuasiPolynomial>(&result)) {
                out.qp = *q;
                return out;
            }
            out.last_failure = std::get<FitFailure>(result);
        }
    return out;
}

struct RayReport {
    RaySpec spec;
    std::vector<Integer> samples;
    std::optional<QuasiPolynomial> fitted_qp;
    std::vector<Index> failures; // s where the samples disagree with the expected function

    bool pass() const { return failures.empty(); }
};

inline RayReport compare_ray(const RaySpec& spec, Index s_max, const QuasiPolynomial& expected,
                             unsigned workers = worker_count())
{
    RayReport report{spec, sample_ray(spec, s_max, workers), expected, {}};
    for (Index s = 0; s <= s_max; ++s)
        if (Rational(report.samples[static_cast<std::size_t>(s)]) != eval(expected, s))
            report.failures.push_back(s);
    return report;
}

inline RaySpec theorem_ray(RayMode mode)
{
    if (mode == RayMode::OuterScaled)
        return RaySpec(mode, 3, 4, Partition{7, 5, 0});
    return RaySpec(mode, 4, 3, Partition{7, 5, 0});
}

// Multiplicity of s(7,5,0) in S^3(S^{4s}) (outer) or S^{4s}(S^3) (inner)
// against phi on 0..s_max.
inline RayReport verify_theorem_ray(Index s_max, RayMode mode, const QuasiPolynomial& expected = phi_reference(),
                                    unsigned workers = worker_count())
{
    return compare_ray(theorem_ray(mode), s_max, expected, workers);
}

// Rows (7+2t, 5+2t, 2t) have 12 + 6t boxes, so the inner degree of the cube is 4 + 2t.
inline RaySpec interior_ray(Index t)
{
    if (t < 1)
        throw std::invalid_argument("interior ray needs t >= 1");
    return RaySpec(RayMode::OuterScaled, 3, 4 + 2 * t, Partition{7 + 2 * t, 5 + 2 * t, 2 * t});
}

inline RayReport interior_ray_check(Index t, Index s_max, unsigned workers = worker_count())
{
    return compare_ray(interior_ray(t), s_max, phi_reference(), workers);
}

inline nlohmann::json to_json(const RaySpec& spec)
{
    return {{"mode", to_string(spec.mode)}, {"d", spec.d}, {"k", spec.k}, {"lambda", to_string(spec.lambda)}};
}

inline nlohmann::json to_json(const RayReport& r)
{
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& v : r.samples)
        samples.push_back(v.str());
    nlohmann::json j{{"spec", to_json(r.spec)}, {"samples", samples}, {"failures", r.failures}};
    j["fitted_qp"] = r.fitted_qp ? to_json(*r.fitted_qp) : nlohmann::json(nullptr);
    return j;
}

} // namespace plethq

#endif // PLETHQ_RAY_HPP
