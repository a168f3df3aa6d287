#include "psbound/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "psbound/monotonicity.hpp"
#include "psbound/operator_geometry.hpp"
#include "psbound/report_io.hpp"
#include "psbound/trace_bounds.hpp"
#include "psbound/version.hpp"

namespace psbound {

const char* to_string(CampaignCommand c) {
    switch (c) {
        case CampaignCommand::Verify: return "verify";
        case CampaignCommand::Chernoff: return "chernoff";
        case CampaignCommand::Bounds: return "bounds";
        case CampaignCommand::Scan: return "scan";
        case CampaignCommand::Monotone: return "monotone";
        case CampaignCommand::OsCheck: return "os-check";
    }
    return "?";
}

int exit_code_for(const CampaignSummary& s) { return s.failed > 0 ? 1 : 0; }

CampaignSummary summarize(const std::vector<CheckReport>& checks) {
    CampaignSummary s;
    s.total = static_cast<int>(checks.size());
    for (const auto& c : checks) {
        switch (c.status) {
            case CheckStatus::Pass: ++s.passed; break;
            case CheckStatus::Fail: ++s.failed; break;
            case CheckStatus::Informative: ++s.informative; break;
            case CheckStatus::PreconditionUnmet: ++s.precondition_unmet; break;
            case CheckStatus::Inconclusive: ++s.inconclusive; break;
        }
    }
    return s;
}

namespace {

int resolve_workers(int workers) {
    if (workers > 0) return std::min(workers, 64);
    if (const char* env = std::getenv("PSBOUND_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return std::min(w, 64);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hc, 1u, 8u));
}

// Work-stealing loop over task indices; results must be written to
// index-addressed slots so that the merge is order-independent.
void parallel_for(int n, int workers, const std::function<void(int)>& body) {
    workers = std::min(workers, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    for (auto& t : pool) t.join();
}

void apply_tolerance_override(CheckReport& r, const std::optional<double>& ov) {
    if (!ov) return;
    if (r.status != CheckStatus::Pass && r.status != CheckStatus::Fail) return;
    r.tolerance = *ov;
    r.passed = r.margin >= -r.tolerance;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
}

struct FunctionEntry {
    std::string spec_text;
    ScalarFunction fn = ScalarFunction::identity();
    bool h_monotone = false;  // does f o g^{-1} pass the Loewner screens?
    std::string screen_note;
};

// Screens each function once: build h = f o g^{-1} and run the default
// Loewner grids of orders 2..6 inside h's domain. Failures downgrade later
// inequality violations to Informative, since the covering statement needs
// a matrix monotone h.
std::vector<FunctionEntry> load_functions(const std::vector<std::string>& specs, bool screen) {
    std::vector<FunctionEntry> out;
    out.reserve(specs.size());
    for (const auto& text : specs) {
        FunctionEntry e;
        e.spec_text = text;
        e.fn = function_from_string(text);
        if (screen) {
            try {
                const ScalarFunction h = compose_with_g_inverse(e.fn);
                bool ok = true;
                for (int order = 2; order <= 6 && ok; ++order) {
                    const auto pts = default_loewner_points(order, h.domain());
                    if (static_cast<int>(pts.size()) < order) continue;
                    // loose tolerance: h carries bisection noise of ~1e-7 on
                    // the central-difference diagonal
                    const HermitianMatrix L = loewner_matrix(h, pts);
                    if (min_eigenvalue(L) < -1e-5 * (1.0 + operator_norm(L))) {
                        ok = false;
                        e.screen_note = "h fails the order-" + std::to_string(order) +
                                        " Loewner test";
                    }
                }
                e.h_monotone = ok;
            } catch (const Error& err) {
                e.h_monotone = false;
                e.screen_note = err.what();
            }
        }
        out.push_back(std::move(e));
    }
    return out;
}

void maybe_mark_informative(CheckReport& r, const FunctionEntry& e) {
    if (r.status == CheckStatus::Fail && !e.h_monotone) {
        r.status = CheckStatus::Informative;
        if (!e.screen_note.empty()) r.label += " (" + e.screen_note + ")";
    }
}

struct TaskOutcome {
    CheckReport report;
    bool aborted = false;
};

// Generated operands re-validate their model invariant before use.
bool validate_pd(const HermitianMatrix& A) {
    return min_eigenvalue(A) > 0.0;
}

void run_trials(int n_tasks, int workers, std::vector<TaskOutcome>& slots,
                const std::function<CheckReport(int)>& task) {
    slots.resize(n_tasks);
    parallel_for(n_tasks, workers, [&](int i) {
        try {
            slots[i].report = task(i);
        } catch (const GenerationError& e) {
            slots[i].aborted = true;
            slots[i].report.label = std::string("generation-abort: ") + e.what();
            slots[i].report.status = CheckStatus::Inconclusive;
        } catch (const Error& e) {
            slots[i].report.label = std::string("error: ") + e.what();
            slots[i].report.status = CheckStatus::Inconclusive;
        }
    });
}

void collect(std::vector<TaskOutcome>& slots, CampaignResult& result) {
    for (auto& s : slots) {
        if (s.aborted) ++result.summary.generation_aborts;
        result.checks.push_back(std::move(s.report));
    }
    slots.clear();
}

std::vector<std::string> default_bound_catalog() {
    std::vector<std::string> v;
    for (int i = 1; i <= 9; ++i) {
        std::ostringstream s;
        s << "power:0." << i;
        v.push_back(s.str());
    }
    v.push_back("lambert_w");
    v.push_back("algebraic_example");
    return v;
}

HermitianMatrix load_density(const std::string& path) {
    const HermitianMatrix m = load_matrix_file(path);
    if (std::abs(trace(m) - 1.0) > 1e-8)
        throw SpecError("state file " + path + " is not trace one");
    if (!positivity(m).is_psd) throw SpecError("state file " + path + " is not PSD");
    return m;
}

void run_verify(const CampaignSpec& spec, int workers, CampaignResult& result) {
    const auto functions = load_functions(spec.functions, /*screen=*/true);
    if (functions.empty()) throw SpecError("verify: no functions given");

    struct Task {
        int fn, dim, trial;
    };
    std::vector<Task> tasks;
    for (int f = 0; f < static_cast<int>(functions.size()); ++f)
        for (int dim : spec.dims)
            for (int t = 0; t < spec.trials; ++t) tasks.push_back({f, dim, t});

    std::vector<TaskOutcome> slots;
    run_trials(static_cast<int>(tasks.size()), workers, slots, [&](int i) {
        const Task& task = tasks[i];
        const FunctionEntry& e = functions[task.fn];
        const std::uint64_t seed = derive_seed(spec.seed, i);
        const HermitianMatrix A = random_pd(task.dim, derive_seed(seed, 0));
        const HermitianMatrix B = random_pd(task.dim, derive_seed(seed, 1));
        if (!validate_pd(A) || !validate_pd(B))
            throw GenerationError("verify: generated operand failed the PD re-validation");

        CheckReport r = ps_check(e.fn, A, B);
        std::ostringstream label;
        label << "ps[" << e.spec_text << "][dim=" << task.dim << "][trial=" << task.trial << "]";
        r.label = label.str();
        r.seed = seed;
        apply_tolerance_override(r, spec.tolerance_override);
        maybe_mark_informative(r, e);
        if (r.status == CheckStatus::Fail || r.status == CheckStatus::Informative) {
            r.witness.emplace_back("A", A);
            r.witness.emplace_back("B", B);
        }
        return r;
    });
    collect(slots, result);
}

void run_scan(const CampaignSpec& spec, int workers, CampaignResult& result) {
    const std::vector<double> grid = uniform_convexity_grid(spec.grid_points);

    if (!spec.state_a_path.empty() || !spec.state_b_path.empty()) {
        const HermitianMatrix A = load_matrix_file(spec.state_a_path);
        const HermitianMatrix B = load_matrix_file(spec.state_b_path);
        result.checks.push_back(convexity_scan(A, B, grid));
        apply_tolerance_override(result.checks.back(), spec.tolerance_override);
        return;
    }

    struct Task {
        int dim, trial;
    };
    std::vector<Task> tasks;
    for (int dim : spec.dims)
        for (int t = 0; t < spec.trials; ++t) tasks.push_back({dim, t});

    std::vector<TaskOutcome> slots;
    run_trials(static_cast<int>(tasks.size()), workers, slots, [&](int i) {
        const Task& task = tasks[i];
        const std::uint64_t seed = derive_seed(spec.seed, i);
        const HermitianMatrix A = random_pd(task.dim, derive_seed(seed, 0));
        const HermitianMatrix B = random_pd(task.dim, derive_seed(seed, 1));
        if (!validate_pd(A) || !validate_pd(B))
            throw GenerationError("scan: generated operand failed the PD re-validation");
        CheckReport r = convexity_scan(A, B, grid);
        std::ostringstream label;
        label << r.label << "[dim=" << task.dim << "][trial=" << task.trial << "]";
        r.label = label.str();
        r.seed = seed;
        apply_tolerance_override(r, spec.tolerance_override);
        return r;
    });
    collect(slots, result);
}

void run_monotone(const CampaignSpec& spec, int workers, CampaignResult& result) {
    const auto functions = load_functions(spec.functions, /*screen=*/false);
    if (functions.empty()) throw SpecError("monotone: no functions given");

    for (size_t f = 0; f < functions.size(); ++f) {
        const FunctionEntry& e = functions[f];
        std::vector<int> orders;
        if (spec.loewner_order > 0)
            orders.push_back(spec.loewner_order);
        else
            for (int k = 2; k <= 6; ++k) orders.push_back(k);

        for (int order : orders) {
            const auto pts = default_loewner_points(order, e.fn.domain());
            CheckReport r;
            std::ostringstream label;
            label << "loewner[" << e.spec_text << "][order=" << order << "]";
            r.label = label.str();
            if (static_cast<int>(pts.size()) < order) {
                r.status = CheckStatus::Inconclusive;
                r.label += ": domain too narrow for the default grid";
                result.checks.push_back(std::move(r));
                continue;
            }
            // decreasing direction: f decreasing iff -f monotone, so test -L
            const HermitianMatrix L = loewner_matrix(e.fn, pts);
            const double margin = min_eigenvalue(spec.decreasing ? -1.0 * L : L);
            r.lhs = 0.0;
            r.rhs = margin;
            r.margin = margin;
            r.tolerance = default_psd_tolerance(operator_norm(L));
            r.passed = r.margin >= -r.tolerance;
            r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
            apply_tolerance_override(r, spec.tolerance_override);
            if (!r.passed) {
                r.witness.emplace_back("loewner_matrix", L);
                r.witness.emplace_back("points", HermitianMatrix::diagonal(pts));
            }
            result.checks.push_back(std::move(r));
        }
    }

    struct Task {
        int fn, dim;
    };
    std::vector<Task> tasks;
    for (int f = 0; f < static_cast<int>(functions.size()); ++f)
        for (int dim : spec.dims) tasks.push_back({f, dim});

    std::vector<TaskOutcome> slots;
    run_trials(static_cast<int>(tasks.size()), workers, slots, [&](int i) {
        const Task& task = tasks[i];
        const FunctionEntry& e = functions[task.fn];
        const std::uint64_t seed = derive_seed(spec.seed, i);
        const MonotonicityVerdict v =
            randomized_monotonicity_test(e.fn, task.dim, spec.trials, seed, spec.decreasing);
        CheckReport r;
        std::ostringstream label;
        label << "randomized[" << e.spec_text << "][dim=" << task.dim << "][trials=" << v.trials
              << "]";
        r.label = label.str();
        r.lhs = 0.0;
        r.rhs = v.margin;
        r.margin = v.margin;
        r.tolerance = 0.0;
        r.passed = !v.violated();
        r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
        r.seed = v.seed;
        if (v.violated() && v.witness_pair) {
            r.witness.emplace_back("A", v.witness_pair->first);
            r.witness.emplace_back("B", v.witness_pair->second);
        }
        return r;
    });
    collect(slots, result);
}

void run_chernoff(const CampaignSpec& spec, int, CampaignResult& result) {
    const HermitianMatrix rho = load_density(spec.state_a_path);
    const HermitianMatrix sigma = load_density(spec.state_b_path);

    const ChernoffResult ch = chernoff_bound(rho, sigma);
    const double phi = trace_distance(rho, sigma);
    result.results = {{"chernoff",
                       {{"value", ch.value},
                        {"argmin_s", ch.argmin_s},
                        {"grid_size", ch.grid_size},
                        {"refined", ch.refined}}},
                      {"trace_distance", phi}};
    CheckReport r = sandwich_check(rho, sigma);
    apply_tolerance_override(r, spec.tolerance_override);
    result.checks.push_back(std::move(r));
}

void run_bounds(const CampaignSpec& spec, int, CampaignResult& result) {
    const HermitianMatrix rho = load_density(spec.state_a_path);
    const HermitianMatrix sigma = load_density(spec.state_b_path);

    const std::vector<std::string> texts =
        spec.functions.empty() ? default_bound_catalog() : spec.functions;
    std::vector<ScalarFunction> catalog;
    catalog.reserve(texts.size());
    for (const auto& t : texts) catalog.push_back(function_from_string(t));

    const auto [value, best] = family_bound(catalog, rho, sigma);
    const ChernoffResult ch = chernoff_bound(rho, sigma);
    const double phi = trace_distance(rho, sigma);

    result.results = {{"family_bound", {{"value", value}, {"achieved_by", best.name()}}},
                      {"chernoff",
                       {{"value", ch.value},
                        {"argmin_s", ch.argmin_s},
                        {"grid_size", ch.grid_size},
                        {"refined", ch.refined}}},
                      {"trace_distance", phi}};

    CheckReport lower = make_check("chf-lower-bound[1 - phi <= CH_F]", 1.0 - phi, value,
                                   1e-8 * (1.0 + phi + std::abs(value)));
    apply_tolerance_override(lower, spec.tolerance_override);
    result.checks.push_back(std::move(lower));

    CheckReport sw = sandwich_check(rho, sigma);
    apply_tolerance_override(sw, spec.tolerance_override);
    result.checks.push_back(std::move(sw));
}

// Classification for the os-check command: which side of the section a
// function belongs to.
struct OsClass {
    bool mean_side = false;       // strictly positive, f(1) = 1: operator-mean inequality
    bool decreasing_side = false; // nonincreasing on the probe grid
    bool vanishes_at_zero = false;
};

OsClass classify_os(const ScalarFunction& f) {
    OsClass c;
    // behavior on the positive axis, where PD spectra live
    double prev = f.eval(1e-8);
    bool nondecreasing = true, nonincreasing = true, positive = prev > 0.0;
    for (int k = 1; k <= 48; ++k) {
        const double x = std::pow(10.0, -8.0 + 10.0 * k / 48.0);
        const double v = f.eval(x);
        if (v < prev - 1e-12) nondecreasing = false;
        if (v > prev + 1e-12) nonincreasing = false;
        positive = positive && v > 0.0;
        prev = v;
    }
    c.decreasing_side = nonincreasing;
    c.mean_side = nondecreasing && positive && std::abs(f.eval(1.0) - 1.0) <= 1e-10;

    const Domain dom = f.domain();
    const bool zero_in_domain = dom.lo < 0.0 || (dom.lo == 0.0 && !dom.lo_open);
    const double f0 = zero_in_domain ? f.eval(0.0) : f.eval(1e-9);
    c.vanishes_at_zero = std::abs(f0) <= 1e-6;
    return c;
}

void run_os_check(const CampaignSpec& spec, int workers, CampaignResult& result) {
    std::vector<std::string> texts = spec.functions;
    if (texts.empty()) texts = {"sqrt", "neg_log1p", "measure_dec:0.3:0.5,1.2:2,0.7"};
    const auto functions = load_functions(texts, /*screen=*/false);

    result.checks.push_back(second_variable_counterexample());

    struct Task {
        enum class Kind { Hkh, Theorem, Corollary, Rert } kind;
        int fn, dim, trial;
        double alpha;
    };
    std::vector<Task> tasks;
    std::vector<OsClass> classes;
    classes.reserve(functions.size());
    for (const auto& e : functions) classes.push_back(classify_os(e.fn));

    for (int f = 0; f < static_cast<int>(functions.size()); ++f) {
        for (int dim : spec.dims) {
            for (int t = 0; t < spec.trials; ++t) {
                if (classes[f].mean_side) tasks.push_back({Task::Kind::Hkh, f, dim, t, 0.0});
                if (classes[f].decreasing_side) {
                    for (double alpha : spec.alphas)
                        tasks.push_back({Task::Kind::Theorem, f, dim, t, alpha});
                    tasks.push_back({Task::Kind::Corollary, f, dim, t, 0.0});
                    if (functions[f].fn.kind() == ScalarFunction::Kind::DecreasingMeasure)
                        tasks.push_back({Task::Kind::Rert, f, dim, t, 0.0});
                }
            }
        }
    }

    std::vector<TaskOutcome> slots;
    run_trials(static_cast<int>(tasks.size()), workers, slots, [&](int i) {
        const Task& task = tasks[i];
        const FunctionEntry& e = functions[task.fn];
        const std::uint64_t seed = derive_seed(spec.seed, i);
        CheckReport r;
        switch (task.kind) {
            case Task::Kind::Hkh: {
                const AnticommutatorSample s =
                    random_anticommutator_pair(task.dim, seed, spec.strategy);
                r = hkh_check(e.fn, s.pair);
                std::ostringstream label;
                label << r.label << "[" << to_string(s.strategy) << "][dim=" << task.dim
                      << "][trial=" << task.trial << "][rejections=" << s.rejections << "]";
                r.label = label.str();
                break;
            }
            case Task::Kind::Theorem: {
                const HermitianMatrix A = random_pd(task.dim, derive_seed(seed, 0));
                const HermitianMatrix B = random_pd(task.dim, derive_seed(seed, 1));
                r = theorem_os_check(e.fn, A, B, task.alpha);
                std::ostringstream label;
                label << r.label << "[dim=" << task.dim << "][trial=" << task.trial << "]";
                r.label = label.str();
                if (r.status == CheckStatus::Fail && !classes[task.fn].vanishes_at_zero) {
                    r.status = CheckStatus::Informative;
                    r.label += " (f(0) != 0: outside the theorem's hypotheses)";
                }
                break;
            }
            case Task::Kind::Corollary: {
                const AnticommutatorSample s =
                    random_anticommutator_pair(task.dim, seed, spec.strategy);
                r = corollary_check(e.fn, s.pair);
                std::ostringstream label;
                label << r.label << "[" << to_string(s.strategy) << "][dim=" << task.dim
                      << "][trial=" << task.trial << "]";
                r.label = label.str();
                if (r.status == CheckStatus::Fail && !classes[task.fn].vanishes_at_zero) {
                    r.status = CheckStatus::Informative;
                    r.label += " (f(0) != 0: outside the corollary's hypotheses)";
                }
                break;
            }
            case Task::Kind::Rert: {
                const HermitianMatrix A = random_pd(task.dim, derive_seed(seed, 0));
                const HermitianMatrix B = random_pd(task.dim, derive_seed(seed, 1));
                r = rert_representation_check(e.fn, A, B);
                std::ostringstream label;
                label << r.label << "[dim=" << task.dim << "][trial=" << task.trial << "]";
                r.label = label.str();
                break;
            }
        }
        r.seed = seed;
        apply_tolerance_override(r, spec.tolerance_override);
        return r;
    });
    collect(slots, result);
}

} // namespace

nlohmann::json assemble_report(const CampaignSpec& spec, const CampaignResult& result) {
    nlohmann::json campaign{{"command", to_string(spec.command)},
                            {"functions", spec.functions},
                            {"dims", spec.dims},
                            {"trials", spec.trials},
                            {"seed", spec.seed},
                            {"alphas", spec.alphas},
                            {"strategy", to_string(spec.strategy)},
                            {"decreasing", spec.decreasing},
                            {"loewner_order", spec.loewner_order},
                            {"grid_points", spec.grid_points},
                            {"state_a", spec.state_a_path},
                            {"state_b", spec.state_b_path}};
    if (spec.tolerance_override)
        campaign["tolerance_override"] = *spec.tolerance_override;
    else
        campaign["tolerance_override"] = nullptr;

    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : result.checks) checks.push_back(check_to_json(c));

    return {{"psbound_version", kVersion},
            {"campaign", std::move(campaign)},
            {"results", result.results},
            {"checks", std::move(checks)},
            {"summary",
             {{"total", result.summary.total},
              {"passed", result.summary.passed},
              {"failed", result.summary.failed},
              {"informative", result.summary.informative},
              {"precondition_unmet", result.summary.precondition_unmet},
              {"inconclusive", result.summary.inconclusive},
              {"generation_aborts", result.summary.generation_aborts}}},
            {"exit_code", result.exit_code}};
}

std::string report_to_csv(const CampaignResult& result) {
    std::ostringstream out;
    out << check_csv_header() << '\n';
    for (const auto& c : result.checks) out << check_to_csv(c) << '\n';
    return out.str();
}

CampaignResult run_campaign(const CampaignSpec& spec, int workers) {
    if (spec.trials < 1) throw SpecError("campaign: trials must be >= 1");
    for (int d : spec.dims)
        if (d < 1) throw SpecError("campaign: dims must be >= 1");

    const int w = resolve_workers(workers);
    CampaignResult result;

    switch (spec.command) {
        case CampaignCommand::Verify: run_verify(spec, w, result); break;
        case CampaignCommand::Chernoff: run_chernoff(spec, w, result); break;
        case CampaignCommand::Bounds: run_bounds(spec, w, result); break;
        case CampaignCommand::Scan: run_scan(spec, w, result); break;
        case CampaignCommand::Monotone: run_monotone(spec, w, result); break;
        case CampaignCommand::OsCheck: run_os_check(spec, w, result); break;
    }

    const int aborts = result.summary.generation_aborts;
    result.summary = summarize(result.checks);
    result.summary.generation_aborts = aborts;
    result.exit_code = exit_code_for(result.summary);

    if (!spec.curve_dir.empty()) {
        for (const auto& text : spec.functions) {
            const ScalarFunction f = function_from_string(text);
            write_curve_csv(f, spec.curve_dir + "/curve_" + sanitize_for_filename(text) + ".csv");
        }
    }

    if (!spec.out_path.empty()) {
        std::ofstream out(spec.out_path);
        if (!out) throw SpecError("cannot write report file: " + spec.out_path);
        if (spec.format == ReportFormat::Json)
            out << assemble_report(spec, result).dump(2) << '\n';
        else
            out << report_to_csv(result);
    }
    return result;
}

} // namespace psbound
