#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psbound/random_models.hpp"
#include "psbound/report.hpp"

namespace psbound {

enum class CampaignCommand { Verify, Chernoff, Bounds, Scan, Monotone, OsCheck };
enum class ReportFormat { Json, Csv };

const char* to_string(CampaignCommand c);

/// Full description of one reproducible campaign. A fixed spec (including
/// the seed) yields a byte-identical report regardless of worker count.
struct CampaignSpec {
    CampaignCommand command = CampaignCommand::Verify;
    std::vector<std::string> functions;  // compact function specs
    std::vector<int> dims = {2, 3, 4};
    int trials = 100;
    std::uint64_t seed = 0;
    std::optional<double> tolerance_override;  // absolute additive tolerance
    std::vector<double> alphas = {0.0, 0.25, 0.5, 0.75, 1.0};
    PairStrategy strategy = PairStrategy::Rejection;
    bool decreasing = false;    // monotone command: test the decreasing direction
    int loewner_order = 0;      // monotone command: single order, 0 = orders 2..6
    int grid_points = 33;       // scan command
    std::string state_a_path;   // chernoff / bounds / scan
    std::string state_b_path;
    std::string out_path;       // report destination ("" = none)
    ReportFormat format = ReportFormat::Json;
    std::string curve_dir;      // emit (x, f, g) curves when non-empty
};

struct CampaignSummary {
    int total = 0;
    int passed = 0;
    int failed = 0;
    int informative = 0;
    int precondition_unmet = 0;
    int inconclusive = 0;
    int generation_aborts = 0;
};

struct CampaignResult {
    CampaignSummary summary;
    std::vector<CheckReport> checks;
    nlohmann::json results;  // command-specific scalar results (bounds etc.)
    int exit_code = 0;
};

/// Exit contract: 0 when every non-informative check passed, 1 on any hard
/// violation. (Configuration errors are reported as exceptions and mapped to
/// exit 2 by the CLI.)
int exit_code_for(const CampaignSummary& summary);

CampaignSummary summarize(const std::vector<CheckReport>& checks);

/// Executes the spec's command across functions x dims x trials. Trials fan
/// out over `workers` threads (0 = PSBOUND_WORKERS env or hardware
/// concurrency); per-trial seeds derive from (spec.seed, trial index), so the
/// assembled report does not depend on the worker count. Writes the report
/// file when out_path is set.
CampaignResult run_campaign(const CampaignSpec& spec, int workers = 0);

/// Full report document: provenance (spec, version), checks, summary.
nlohmann::json assemble_report(const CampaignSpec& spec, const CampaignResult& result);

std::string report_to_csv(const CampaignResult& result);

} // namespace psbound
