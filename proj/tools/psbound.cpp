// psbound: command-line front end for the Powers-Stormer / quantum state
// discrimination bound checker. Exit codes: 0 all non-informative checks
// passed, 1 hard violation found, 2 configuration error.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "psbound/campaign.hpp"
#include "psbound/report_io.hpp"
#include "psbound/version.hpp"

namespace {

using namespace psbound;

void add_common(CLI::App* sub, CampaignSpec& spec, std::string& format, double& tol,
                bool& tol_set) {
    sub->add_option("--dims", spec.dims, "matrix dimensions")->delimiter(',');
    sub->add_option("--trials", spec.trials, "trials per (function, dim) cell");
    sub->add_option("--seed", spec.seed, "campaign seed (64-bit)");
    sub->add_option("--tol", tol, "absolute additive tolerance override")
        ->each([&tol_set](const std::string&) { tol_set = true; });
    sub->add_option("--out", spec.out_path, "report file destination");
    sub->add_option("--format", format, "report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--emit-curve", spec.curve_dir,
                    "directory for (x, f(x), g(x)) curve CSV files");
}

void print_summary(const CampaignSpec& spec, const CampaignResult& res) {
    const auto& s = res.summary;
    std::printf("psbound %s: total=%d passed=%d failed=%d informative=%d "
                "precondition_unmet=%d inconclusive=%d generation_aborts=%d\n",
                to_string(spec.command), s.total, s.passed, s.failed, s.informative,
                s.precondition_unmet, s.inconclusive, s.generation_aborts);
    int shown = 0;
    for (const auto& c : res.checks) {
        if (c.status == CheckStatus::Fail && shown < 10) {
            std::printf("  FAIL %s margin=%.6g tol=%.6g\n", c.label.c_str(), c.margin,
                        c.tolerance);
            ++shown;
        }
    }
    if (!res.results.is_null()) std::printf("%s\n", res.results.dump(2).c_str());
    std::printf("exit %d\n", res.exit_code);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("psbound ") + kVersion +
                 " - trace and operator inequality checker for quantum state discrimination "
                 "bounds"};
    app.require_subcommand(1);

    CampaignSpec spec;
    std::string format = "json";
    std::string strategy = "rejection";
    double tol = 0.0;
    bool tol_set = false;

    auto* verify = app.add_subcommand(
        "verify", "Powers-Stormer trace inequality campaign over random PD pairs");
    verify->add_option("--functions", spec.functions, "catalog functions (e.g. power:0.5,lambert_w)")
        ->delimiter(',')
        ->required();
    add_common(verify, spec, format, tol, tol_set);

    auto* chernoff =
        app.add_subcommand("chernoff", "quantum Chernoff bound and trace distance for two states");
    chernoff->add_option("--state-a", spec.state_a_path, "density matrix JSON")->required();
    chernoff->add_option("--state-b", spec.state_b_path, "density matrix JSON")->required();
    add_common(chernoff, spec, format, tol, tol_set);

    auto* bounds = app.add_subcommand(
        "bounds", "function-family discrimination bounds for two states");
    bounds->add_option("--state-a", spec.state_a_path, "density matrix JSON")->required();
    bounds->add_option("--state-b", spec.state_b_path, "density matrix JSON")->required();
    bounds->add_option("--functions", spec.functions, "catalog (default: powers + examples)")
        ->delimiter(',');
    add_common(bounds, spec, format, tol, tol_set);

    auto* scan = app.add_subcommand(
        "scan", "midpoint convexity scan of t -> tr(A^t B^(1-t))");
    scan->add_option("--grid", spec.grid_points, "grid points in (0,1)");
    scan->add_option("--state-a", spec.state_a_path, "optional fixed matrix JSON");
    scan->add_option("--state-b", spec.state_b_path, "optional fixed matrix JSON");
    add_common(scan, spec, format, tol, tol_set);

    auto* monotone = app.add_subcommand(
        "monotone", "Loewner-matrix and randomized matrix-monotonicity tests");
    monotone->add_option("--function,--functions", spec.functions, "functions to test")
        ->delimiter(',')
        ->required();
    monotone->add_option("--order", spec.loewner_order, "single Loewner order (default 2..6)");
    monotone->add_flag("--decreasing", spec.decreasing, "test the decreasing direction");
    add_common(monotone, spec, format, tol, tol_set);

    auto* os = app.add_subcommand(
        "os-check", "operator inequality checks: means, perspectives, counterexample");
    os->add_option("--functions", spec.functions,
                   "functions (default: sqrt, neg_log1p, a decreasing measure)")
        ->delimiter(',');
    os->add_option("--alpha", spec.alphas, "weights for the weighted-mean inequality")
        ->delimiter(',');
    os->add_option("--strategy", strategy, "anticommutator pair sampling strategy")
        ->check(CLI::IsMember({"commuting", "perturbative", "rejection"}));
    add_common(os, spec, format, tol, tol_set);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (verify->parsed()) spec.command = CampaignCommand::Verify;
    if (chernoff->parsed()) spec.command = CampaignCommand::Chernoff;
    if (bounds->parsed()) spec.command = CampaignCommand::Bounds;
    if (scan->parsed()) spec.command = CampaignCommand::Scan;
    if (monotone->parsed()) spec.command = CampaignCommand::Monotone;
    if (os->parsed()) spec.command = CampaignCommand::OsCheck;

    spec.format = format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
    if (tol_set) spec.tolerance_override = tol;
    if (strategy == "commuting") spec.strategy = PairStrategy::Commuting;
    if (strategy == "perturbative") spec.strategy = PairStrategy::Perturbative;
    if (strategy == "rejection") spec.strategy = PairStrategy::Rejection;

    try {
        const CampaignResult res = run_campaign(spec);
        print_summary(spec, res);
        return res.exit_code;
    } catch (const psbound::Error& e) {
        std::cerr << "psbound: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "psbound: unexpected error: " << e.what() << "\n";
        return 2;
    }
}
