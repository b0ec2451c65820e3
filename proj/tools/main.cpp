// Batch front door: parse a problem file, dispatch to the compute modules,
// write CSV/JSON reports stamped with the run manifest digest.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "oscidecay/bilinear.hpp"
#include "oscidecay/difference_scheme.hpp"
#include "oscidecay/io.hpp"
#include "oscidecay/manifest.hpp"
#include "oscidecay/oscillatory.hpp"
#include "oscidecay/sublevel.hpp"
#include "oscidecay/uniformity.hpp"

namespace {

using namespace oscidecay;

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("OSCIDECAY_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string norm_decimal(const Rational& norm_squared) {
    if (auto root = exact_sqrt(norm_squared)) return decimal_string(*root);
    return format_double(std::sqrt(to_double(norm_squared)));
}

json witness_json(const std::vector<RatVector>& witness) {
    json arr = json::array();
    for (const auto& w : witness) {
        json row = json::array();
        for (const auto& c : w) row.push_back(to_string(c));
        arr.push_back(row);
    }
    return arr;
}

int run_analyze(const std::string& problem_path, const std::string& out_dir) {
    auto file = load_problem(problem_path);
    const auto& F = file.require_family();
    auto report = analyze_polynomial(file.polynomial, F);

    RunManifest manifest;
    manifest.subcommand = "analyze";
    manifest.set_input(file.raw);

    json out;
    out["degenerate"] = report.degenerate;
    out["relative_norm"] = norm_decimal(report.relative_norm_squared);
    out["relative_norm_squared"] = to_string(report.relative_norm_squared);
    json mins = json::array();
    for (const auto& p : report.minimizers) mins.push_back(polynomial_to_json(p));
    out["minimizers"] = mins;
    out["dual_operator_symbol"] =
        report.dual_operator ? polynomial_to_json(report.dual_operator->symbol) : json(nullptr);
    out["simple_witness"] = report.witness ? witness_json(*report.witness) : json(nullptr);
    out["manifest_digest"] = manifest.digest();

    write_text(std::filesystem::path(out_dir) / "analyze.json", out.dump(2) + "\n");
    std::cout << manifest.text() << "manifest_digest=" << manifest.digest() << "\n";
    return 0;
}

struct DecayOptions {
    std::string problem, out_dir = ".";
    double lambda_min = 16, lambda_max = 4096;
    int points = 9;
    std::uint64_t seed = 1;
    double tolerance = 1e-7;
    int samples = 0;      // 0: fixed tuple (from the file, or constants)
    int trig_degree = 3;
    bool adversarial = false;
    bool strict = false;
    int threads = 0;
};

int run_decay(const DecayOptions& opt) {
    auto file = load_problem(opt.problem);
    const auto& F = file.require_family();
    if (opt.points < 6) throw ParseError("lambda grid needs at least 6 points");
    if (opt.lambda_min < 1 || opt.lambda_max <= opt.lambda_min)
        throw ParseError("lambda range must satisfy 1 <= min < max");

    std::vector<double> grid(opt.points);
    for (int k = 0; k < opt.points; ++k)
        grid[k] = opt.lambda_min * std::pow(opt.lambda_max / opt.lambda_min,
                                            (double)k / (opt.points - 1));

    QuadratureSpec spec;
    spec.relative_tolerance = opt.tolerance;

    FunctionFamily family;
    if (opt.adversarial) {
        auto dec = is_degenerate(file.polynomial, F);
        if (!dec.degenerate)
            throw ParseError("adversarial functions require a degenerate polynomial");
        family = FunctionFamily::fixed(adversarial_functions(*dec.decomposition));
    } else if (!file.functions.empty()) {
        if ((int)file.functions.size() != F.size())
            throw ParseError("problem file must list one function per subspace");
        std::vector<TestFunction> tuple;
        for (int j = 0; j < F.size(); ++j) tuple.push_back(file.functions[j].build(F[j].dim()));
        family = FunctionFamily::fixed(std::move(tuple));
    } else if (opt.samples > 0) {
        family = FunctionFamily::random_trig(opt.samples, opt.trig_degree, opt.seed);
    } else {
        std::vector<TestFunction> tuple;
        for (int j = 0; j < F.size(); ++j) tuple.push_back(TestFunction::constant_one(F[j].dim()));
        family = FunctionFamily::fixed(std::move(tuple));
    }

    auto eta = file.cutoff_or_default();
    auto sweep = decay_sweep(file.polynomial, F, family, eta, grid, spec, resolve_threads(opt.threads));

    RunManifest manifest;
    manifest.subcommand = "decay";
    manifest.master_seed = opt.seed;
    manifest.parameters["lambda_min"] = format_double(opt.lambda_min);
    manifest.parameters["lambda_max"] = format_double(opt.lambda_max);
    manifest.parameters["points"] = std::to_string(opt.points);
    manifest.parameters["tolerance"] = format_double(opt.tolerance);
    manifest.parameters["samples"] = std::to_string(opt.samples);
    manifest.parameters["adversarial"] = opt.adversarial ? "1" : "0";
    manifest.set_input(file.raw);

    std::ostringstream csv;
    csv << "# manifest " << manifest.digest() << "\n";
    csv << "lambda,re,im,abs,converged\n";
    bool all_converged = true;
    for (size_t k = 0; k < grid.size(); ++k) {
        const auto v = sweep.values[k];
        all_converged = all_converged && sweep.converged[k];
        csv << format_double(grid[k]) << "," << format_double(v.real()) << ","
            << format_double(v.imag()) << "," << format_double(std::abs(v)) << ","
            << (sweep.converged[k] ? 1 : 0) << "\n";
    }
    write_text(std::filesystem::path(opt.out_dir) / "decay.csv", csv.str());

    json summary;
    summary["epsilon_hat"] = sweep.epsilon_hat;
    summary["intercept"] = sweep.intercept;
    summary["r2"] = sweep.fit_r2;
    summary["fit_points"] = sweep.fit_points;
    summary["fit_ok"] = sweep.fit_ok;
    summary["manifest_digest"] = manifest.digest();
    write_text(std::filesystem::path(opt.out_dir) / "decay_summary.json", summary.dump(2) + "\n");

    std::cout << manifest.text() << "manifest_digest=" << manifest.digest() << "\n";
    if (opt.strict && (!all_converged || !sweep.fit_ok)) return 3;
    return 0;
}

struct SublevelOptions {
    std::string problem, out_dir = ".";
    double eps_max = 1e-1, eps_min = 1e-3;
    int points = 5;
    long long samples = 1000000;
    std::uint64_t seed = 1;
    int threads = 0;
};

int run_sublevel(const SublevelOptions& opt) {
    auto file = load_problem(opt.problem);
    const auto& F = file.require_family();
    if (opt.points < 4) throw ParseError("eps grid needs at least 4 points");
    if (opt.eps_min <= 0 || opt.eps_max <= opt.eps_min)
        throw ParseError("eps range must satisfy 0 < min < max");
    if (opt.samples < 10000) throw ParseError("sample count must be at least 10000");

    SublevelProblem prob{file.polynomial, F, {}, file.region_or_default(), opt.eps_max};
    for (int j = 0; j < F.size(); ++j) {
        if (j < (int)file.functions.size())
            prob.g.push_back(file.functions[j].build_real(F[j].dim()));
        else
            prob.g.push_back(RealFunction::zero(F[j].dim()));
    }

    std::vector<double> eps_grid(opt.points);
    for (int k = 0; k < opt.points; ++k)
        eps_grid[k] = opt.eps_max * std::pow(opt.eps_min / opt.eps_max, (double)k / (opt.points - 1));

    auto scaling =
        sublevel_scaling(prob, eps_grid, opt.samples, opt.seed, resolve_threads(opt.threads));

    RunManifest manifest;
    manifest.subcommand = "sublevel";
    manifest.master_seed = opt.seed;
    manifest.parameters["eps_max"] = format_double(opt.eps_max);
    manifest.parameters["eps_min"] = format_double(opt.eps_min);
    manifest.parameters["points"] = std::to_string(opt.points);
    manifest.parameters["samples"] = std::to_string(opt.samples);
    manifest.set_input(file.raw);

    std::ostringstream csv;
    csv << "# manifest " << manifest.digest() << "\n";
    csv << "eps,estimate,stderr,hits\n";
    for (const auto& est : scaling.estimates)
        csv << format_double(est.epsilon) << "," << format_double(est.estimate) << ","
            << format_double(est.standard_error) << "," << est.hits << "\n";
    write_text(std::filesystem::path(opt.out_dir) / "sublevel.csv", csv.str());

    json summary;
    summary["delta_hat"] = scaling.delta_hat;
    summary["r2"] = scaling.r2;
    summary["fit_points"] = scaling.fit_points;
    summary["fit_ok"] = scaling.fit_ok;
    summary["manifest_digest"] = manifest.digest();
    write_text(std::filesystem::path(opt.out_dir) / "sublevel_summary.json", summary.dump(2) + "\n");

    std::cout << manifest.text() << "manifest_digest=" << manifest.digest() << "\n";
    return 0;
}

struct BhtOptions {
    std::string out_dir = ".";
    int degree = 3;
    double p1 = 2, p2 = 2;
    int trials = 10;
    std::uint64_t seed = 1;
    int scale_max = 10;
    bool strict = false;
    int threads = 0;
};

int run_bht(const BhtOptions& opt) {
    if (opt.degree < 0) throw ParseError("degree must be nonnegative");
    if (opt.trials < 1) throw ParseError("trials must be positive");
    std::vector<double> scales;
    for (int e = 0; e <= opt.scale_max; ++e) scales.push_back(std::pow(2.0, e));

    PrincipalValueSpec spec;
    NormRatioReport report;
    try {
        report = norm_ratio_sweep(opt.degree, opt.p1, opt.p2, scales, opt.trials, opt.seed, spec,
                                  97, resolve_threads(opt.threads));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }

    RunManifest manifest;
    manifest.subcommand = "bht";
    manifest.master_seed = opt.seed;
    manifest.parameters["degree"] = std::to_string(opt.degree);
    manifest.parameters["p1"] = format_double(opt.p1);
    manifest.parameters["p2"] = format_double(opt.p2);
    manifest.parameters["trials"] = std::to_string(opt.trials);
    manifest.parameters["scale_max"] = std::to_string(opt.scale_max);

    std::ostringstream csv;
    csv << "# manifest " << manifest.digest() << "\n";
    csv << "trial,scale";
    const size_t coeff_count = report.samples.empty() ? 0 : report.samples[0].coefficients.size();
    for (size_t i = 0; i < coeff_count; ++i) csv << ",c" << i;
    csv << ",ratio\n";
    for (const auto& s : report.samples) {
        csv << s.trial << "," << format_double(s.scale);
        for (double c : s.coefficients) csv << "," << format_double(c);
        csv << "," << format_double(s.ratio) << "\n";
    }
    write_text(std::filesystem::path(opt.out_dir) / "bht.csv", csv.str());

    json summary;
    summary["max_ratio"] = report.max_ratio;
    summary["slope_vs_scale"] = report.slope_vs_scale;
    summary["q"] = report.q;
    summary["any_unresolved"] = report.any_unresolved;
    summary["manifest_digest"] = manifest.digest();
    write_text(std::filesystem::path(opt.out_dir) / "bht_summary.json", summary.dump(2) + "\n");

    std::cout << manifest.text() << "manifest_digest=" << manifest.digest() << "\n";
    if (opt.strict && report.any_unresolved) return 3;
    return 0;
}

struct UniformityOptions {
    std::string problem, out_dir = ".";
    double lambda = 1024;
    int degree = 2;
    double tau = 0.1;
    int grid_cap = 65;
    std::uint64_t seed = 1;
};

int run_uniformity(const UniformityOptions& opt) {
    auto file = load_problem(opt.problem);
    if (file.dimension != 1) throw ParseError("uniformity scans are one-dimensional");
    if (file.functions.empty()) throw ParseError("problem file must provide the function to scan");

    const Box region = file.region_or_default();
    auto f = file.functions[0].build(1);

    auto grid = default_coefficient_grid(opt.lambda, opt.degree,
                                         std::max(std::abs(region.lo[0]), std::abs(region.hi[0])),
                                         opt.grid_cap);
    // sample the function densely enough for the largest scanned phase
    double max_slope = 0;
    for (int k = 1; k <= opt.degree; ++k)
        max_slope += grid.extent * k *
                     std::pow(std::max(std::abs(region.lo[0]), std::abs(region.hi[0])), k - 1);
    int nodes = (int)std::ceil((region.hi[0] - region.lo[0]) * max_slope * 8 / (2 * M_PI)) + 2;
    nodes = std::max(nodes, 257);

    SampledFunction sampled;
    sampled.a = region.lo[0];
    sampled.b = region.hi[0];
    sampled.values.resize(nodes);
    for (int i = 0; i < nodes; ++i) {
        const double t = sampled.a + (sampled.b - sampled.a) * i / (nodes - 1);
        sampled.values[i] = f(std::span<const double>(&t, 1), opt.lambda);
    }

    UniformityReport report;
    try {
        report = uniformity_scan(sampled, opt.lambda, opt.degree, opt.tau, grid);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }

    RunManifest manifest;
    manifest.subcommand = "uniformity";
    manifest.master_seed = opt.seed;
    manifest.parameters["lambda"] = format_double(opt.lambda);
    manifest.parameters["degree"] = std::to_string(opt.degree);
    manifest.parameters["tau"] = format_double(opt.tau);
    manifest.parameters["grid_cap"] = std::to_string(opt.grid_cap);
    manifest.set_input(file.raw);

    json out;
    out["lambda"] = report.lambda;
    out["degree"] = report.degree;
    out["tau"] = report.tau;
    out["max_coefficient"] = report.max_coefficient;
    out["threshold"] = report.threshold;
    out["classification"] = report.uniform ? "uniform" : "nonuniform";
    out["best_q_coefficients"] = report.best_coefficients;
    out["best_scalar"] = {report.best_scalar.real(), report.best_scalar.imag()};
    out["f_l2"] = report.f_l2;
    out["manifest_digest"] = manifest.digest();
    write_text(std::filesystem::path(opt.out_dir) / "uniformity.json", out.dump(2) + "\n");

    std::cout << manifest.text() << "manifest_digest=" << manifest.digest() << "\n";
    return 0;
}

int run_witness(const std::string& problem_path, const std::string& out_dir) {
    auto file = load_problem(problem_path);
    const auto& F = file.require_family();

    RunManifest manifest;
    manifest.subcommand = "witness";
    manifest.set_input(file.raw);

    json out;
    auto witness = simple_witness(file.polynomial, F);
    out["simple_witness"] = witness ? witness_json(*witness) : json(nullptr);
    if (auto top = homogeneous_nondegeneracy_reduction(file.polynomial, F)) {
        auto S = difference_scheme(top->second, F);
        if (S) {
            json sj;
            sj["degree"] = S->degree;
            sj["slots"] = S->slot_count();
            sj["independent_scales"] = S->independent_scales;
            sj["corner_constant"] = S->corner_constant();
            json gens = json::array();
            for (const auto& y : S->generators) {
                json row = json::array();
                for (const auto& c : y) row.push_back(to_string(c));
                gens.push_back(row);
            }
            sj["generators"] = gens;
            out["difference_scheme"] = sj;
            out["top_summand_degree"] = top->first;
        }
    } else {
        out["difference_scheme"] = nullptr;
    }
    out["manifest_digest"] = manifest.digest();
    write_text(std::filesystem::path(out_dir) / "witness.json", out.dump(2) + "\n");
    std::cout << manifest.text() << "manifest_digest=" << manifest.digest() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degeneracy analysis and oscillatory-integral experiments"};
    app.require_subcommand(1);

    std::string problem, out_dir = ".";

    auto* analyze = app.add_subcommand("analyze", "degeneracy report for a problem file");
    analyze->add_option("--problem", problem)->required();
    analyze->add_option("--out", out_dir);

    DecayOptions dopt;
    auto* decay = app.add_subcommand("decay", "lambda sweep with decay-exponent fit");
    decay->add_option("--problem", dopt.problem)->required();
    decay->add_option("--out", dopt.out_dir);
    decay->add_option("--lambda-min", dopt.lambda_min);
    decay->add_option("--lambda-max", dopt.lambda_max);
    decay->add_option("--points", dopt.points);
    decay->add_option("--seed", dopt.seed);
    decay->add_option("--tolerance", dopt.tolerance);
    decay->add_option("--samples", dopt.samples);
    decay->add_option("--trig-degree", dopt.trig_degree);
    decay->add_flag("--adversarial", dopt.adversarial);
    decay->add_flag("--strict", dopt.strict);
    decay->add_option("--threads", dopt.threads);

    SublevelOptions sopt;
    auto* sublevel = app.add_subcommand("sublevel", "Monte Carlo sublevel-set measures");
    sublevel->add_option("--problem", sopt.problem)->required();
    sublevel->add_option("--out", sopt.out_dir);
    sublevel->add_option("--eps-max", sopt.eps_max);
    sublevel->add_option("--eps-min", sopt.eps_min);
    sublevel->add_option("--points", sopt.points);
    sublevel->add_option("--samples", sopt.samples);
    sublevel->add_option("--seed", sopt.seed);
    sublevel->add_option("--threads", sopt.threads);

    BhtOptions bopt;
    auto* bht = app.add_subcommand("bht", "bilinear transform norm-ratio sweep");
    bht->add_option("--degree", bopt.degree);
    bht->add_option("--p1", bopt.p1);
    bht->add_option("--p2", bopt.p2);
    bht->add_option("--trials", bopt.trials);
    bht->add_option("--seed", bopt.seed);
    bht->add_option("--scale-max", bopt.scale_max);
    bht->add_option("--out", bopt.out_dir);
    bht->add_flag("--strict", bopt.strict);
    bht->add_option("--threads", bopt.threads);

    UniformityOptions uopt;
    auto* uniformity = app.add_subcommand("uniformity", "lambda-uniformity diagnostic scan");
    uniformity->add_option("--problem", uopt.problem)->required();
    uniformity->add_option("--out", uopt.out_dir);
    uniformity->add_option("--lambda", uopt.lambda);
    uniformity->add_option("--degree", uopt.degree);
    uniformity->add_option("--tau", uopt.tau);
    uniformity->add_option("--grid-cap", uopt.grid_cap);

    auto* witness = app.add_subcommand("witness", "simple witness and corner scheme");
    witness->add_option("--problem", problem)->required();
    witness->add_option("--out", out_dir);

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) return run_analyze(problem, out_dir);
        if (decay->parsed()) return run_decay(dopt);
        if (sublevel->parsed()) return run_sublevel(sopt);
        if (bht->parsed()) return run_bht(bopt);
        if (uniformity->parsed()) return run_uniformity(uopt);
        if (witness->parsed()) return run_witness(problem, out_dir);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const oscidecay::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
