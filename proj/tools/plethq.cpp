// plethq: plethysm multiplicities along rays, quasi-polynomial fits and
// representability decisions for one-dimensional interval families.
//
// Exit codes: 0 success or decided, 1 verification failure, 2 usage error,
// 3 decider returned unknown.

#include "plethq/decider.hpp"
#include "plethq/pipeline.hpp"
#include "plethq/ray.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsage = 2;
constexpr int kUnknown = 3;

nlohmann::json read_json(const std::string& path)
{
    if (path == "-")
        return nlohmann::json::parse(std::cin);
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open '" + path + "'");
    return nlohmann::json::parse(in);
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

struct PlethysmArgs {
    plethq::Index d = 0, k = 0;
    std::string lambda;
};

int run_plethysm(const PlethysmArgs& a)
{
    auto lambda = plethq::parse_partition(a.lambda);
    if (a.d < 1 || a.k < 1)
        throw std::invalid_argument("d and k must be positive");
    if (lambda.size() != a.d * a.k)
        std::cerr << "note: |lambda| = " << lambda.size() << " differs from d*k = " << a.d * a.k
                  << ", so the multiplicity is 0\n";
    std::cout << plethq::plethysm_multiplicity(a.d, a.k, lambda) << '\n';
    return kOk;
}

struct RayArgs {
    std::string mode;
    plethq::Index d = 0, k = 0;
    std::string lambda;
    plethq::Index s_max = 24;
    plethq::Index period = 0;
    int degree = -1;
    std::size_t max_degree = 3;
};

int run_ray(const RayArgs& a)
{
    plethq::RaySpec spec(plethq::parse_ray_mode(a.mode), a.d, a.k, plethq::parse_partition(a.lambda));
    if (a.s_max < 0)
        throw std::invalid_argument("--smax must be nonnegative");
    plethq::RayReport report{spec, plethq::sample_ray(spec, a.s_max), std::nullopt, {}};
    nlohmann::json failure;
    if (a.period > 0 || a.degree >= 0) {
        if (a.period < 1 || a.degree < 0)
            throw std::invalid_argument("--period and --degree must be given together");
        if (a.s_max < a.period * (a.degree + 2))
            throw std::invalid_argument("--smax must be at least period*(degree+2)");
        auto result = plethq::fit(plethq::as_samples(report.samples), a.period, static_cast<std::size_t>(a.degree));
        if (auto* q = std::get_if<plethq::QuasiPolynomial>(&result))
            report.fitted_qp = *q;
        else
            failure = std::get<plethq::FitFailure>(result).message();
    } else {
        auto found = plethq::discover_quasipoly(report.samples, a.max_degree);
        report.fitted_qp = found.qp;
        if (!found.qp)
            failure = found.last_failure ? found.last_failure->message() : "not enough samples for any hypothesis";
    }
    auto j = plethq::to_json(report);
    j["failures"] = nlohmann::json::array();
    if (!failure.is_null())
        j["failures"].push_back(failure);
    print(j);
    return report.fitted_qp ? kOk : kVerificationFailure;
}

struct DecideArgs {
    std::string qp_file;
    std::string form = "inhomogeneous";
    plethq::Index s_max = 0;
    plethq::Index denom_mult = 4;
    std::vector<plethq::Index> order;
};

int run_decide(const DecideArgs& a)
{
    auto q = plethq::quasipoly_from_json(read_json(a.qp_file));
    plethq::DeciderOptions opts;
    opts.s_max = a.s_max;
    opts.denom_multiplier = a.denom_mult;
    opts.order = a.order;
    auto outcome = plethq::decide_1d(q, plethq::parse_form(a.form), opts);
    print(plethq::to_json(outcome));
    return std::holds_alternative<plethq::Unknown>(outcome) ? kUnknown : kOk;
}

struct ReplayArgs {
    std::string certificate_file;
    std::string qp_file;
};

int run_replay(const ReplayArgs& a)
{
    auto cert_json = read_json(a.certificate_file);
    if (cert_json.value("verdict", "") != "not_representable")
        throw std::invalid_argument("certificate file must hold a not_representable outcome");
    auto cert = plethq::certificate_from_json(cert_json);
    auto q = plethq::quasipoly_from_json(read_json(a.qp_file));
    const bool ok = plethq::replay_certificate(cert, q);
    print({{"valid", ok}});
    return ok ? kOk : kVerificationFailure;
}

struct VerifyArgs {
    plethq::Index s_max_outer = 24;
    plethq::Index s_max_inner = 8;
    std::string phi_file;
};

int run_verify(const VerifyArgs& a)
{
    plethq::VerifyOptions opts;
    if (a.s_max_outer < 0 || a.s_max_inner < 0)
        throw std::invalid_argument("sample bounds must be nonnegative");
    opts.s_max_outer = a.s_max_outer;
    opts.s_max_inner = a.s_max_inner;
    if (!a.phi_file.empty())
        opts.reference = plethq::quasipoly_from_json(read_json(a.phi_file));
    auto summary = plethq::verify_paper(opts);
    print(plethq::to_json(summary));
    return summary.pass() ? kOk : kVerificationFailure;
}

struct ScanArgs {
    std::size_t rows = 2;
    plethq::Index max_boxes = 12;
    std::string form = "both";
    plethq::Index s_max = 60;
    std::size_t max_degree = 3;
    std::string output;
};

int run_scan(const ScanArgs& a)
{
    plethq::ScanOptions opts;
    opts.rows = a.rows;
    opts.max_boxes = a.max_boxes;
    opts.s_max = a.s_max;
    opts.max_degree = a.max_degree;
    if (a.form == "both")
        opts.forms = {plethq::Form::Inhomogeneous, plethq::Form::Homogeneous};
    else
        opts.forms = {plethq::parse_form(a.form)};
    const auto csv = plethq::to_csv(plethq::scan(opts));
    if (a.output.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(a.output, std::ios::binary);
        if (!out)
            throw std::invalid_argument("cannot write '" + a.output + "'");
        out << csv;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Plethysm quasi-polynomials and interval-family representability"};
    app.require_subcommand(1);

    PlethysmArgs pa;
    auto* pleth = app.add_subcommand("plethysm", "Multiplicity of s_lambda in S^d(S^k)");
    pleth->add_option("d", pa.d, "Outer degree")->required();
    pleth->add_option("k", pa.k, "Inner degree")->required();
    pleth->add_option("lambda", pa.lambda, "Partition, comma separated, e.g. 7,5,0")->required();

    RayArgs ra;
    auto* ray = app.add_subcommand("ray", "Sample a ray and fit a quasi-polynomial");
    ray->add_option("mode", ra.mode, "outer (S^d(S^{sk})) or inner (S^{sd}(S^k))")->required();
    ray->add_option("d", ra.d, "Outer degree")->required();
    ray->add_option("k", ra.k, "Inner degree")->required();
    ray->add_option("lambda", ra.lambda, "Partition with d*k boxes")->required();
    ray->add_option("--smax", ra.s_max, "Largest sampled s")->capture_default_str();
    ray->add_option("--period", ra.period, "Period hint (requires --degree)");
    ray->add_option("--degree", ra.degree, "Degree hint (requires --period)");
    ray->add_option("--max-degree", ra.max_degree, "Largest degree tried without hints")->capture_default_str();

    DecideArgs da;
    auto* decide = app.add_subcommand("decide", "Decide representability of a quasi-polynomial");
    decide->add_option("qp", da.qp_file, "Quasi-polynomial JSON file, or - for stdin")->required();
    decide->add_option("--form", da.form, "inhomogeneous or homogeneous")->capture_default_str();
    decide->add_option("--smax", da.s_max, "Branching horizon (0 selects 4*period)")->capture_default_str();
    decide->add_option("--denom-mult", da.denom_mult, "Witness slope denominator multiplier")->capture_default_str();
    decide->add_option("--order", da.order, "Branching order, e.g. --order 0 1 5 4 6");

    ReplayArgs rp;
    auto* replay = app.add_subcommand("replay", "Replay a non-representability certificate");
    replay->add_option("certificate", rp.certificate_file, "Outcome JSON from decide")->required();
    replay->add_option("qp", rp.qp_file, "Quasi-polynomial JSON file")->required();

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify-paper", "Reproduce the fixed checks around phi");
    verify->add_option("--smax-outer", va.s_max_outer, "Samples on the outer-scaled ray")->capture_default_str();
    verify->add_option("--smax-inner", va.s_max_inner, "Samples on the inner-scaled ray")->capture_default_str();
    verify->add_option("--phi", va.phi_file, "Replace the reference quasi-polynomial (negative controls)");

    ScanArgs sa;
    auto* scan = app.add_subcommand("scan", "Scan small outer-scaled rays, CSV on stdout");
    scan->add_option("--rows", sa.rows, "Rows of lambda (1 or 2)")->capture_default_str();
    scan->add_option("--max-boxes", sa.max_boxes, "Largest d*k")->capture_default_str();
    scan->add_option("--form", sa.form, "inhomogeneous, homogeneous or both")->capture_default_str();
    scan->add_option("--smax", sa.s_max, "Samples per ray")->capture_default_str();
    scan->add_option("--max-degree", sa.max_degree, "Largest fitted degree")->capture_default_str();
    scan->add_option("--output", sa.output, "Write the CSV to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*pleth)
            return run_plethysm(pa);
        if (*ray)
            return run_ray(ra);
        if (*decide)
            return run_decide(da);
        if (*replay)
            return run_replay(rp);
        if (*verify)
            return run_verify(va);
        if (*scan)
            return run_scan(sa);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
