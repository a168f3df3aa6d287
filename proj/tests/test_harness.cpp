#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "psbound/campaign.hpp"
#include "psbound/report_io.hpp"
#include "psbound/trace_bounds.hpp"

using namespace psbound;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/psbound_test_") + name;
}

} // namespace

TEST_CASE("CounterRng and derive_seed are deterministic and index-stable") {
    CounterRng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) != derive_seed(2, 2));

    CounterRng u(7);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.next_uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("random_pd: determinism, positivity, scalar case") {
    const HermitianMatrix a1 = random_pd(4, 42), a2 = random_pd(4, 42);
    CHECK(frobenius_norm(a1 - a2) == 0.0);

    CHECK(random_pd(1, 3).dim() == 1);
    CHECK(random_pd(1, 3)(0, 0).real() > 0.0);

    for (int t = 0; t < 20; ++t) CHECK(min_eigenvalue(random_pd(4, derive_seed(42, t))) > 0.0);
}

TEST_CASE("random_density: trace one, PSD, normalization idempotent") {
    CHECK(random_density(1, 5)(0, 0).real() == doctest::Approx(1.0));
    for (int t = 0; t < 20; ++t) {
        const HermitianMatrix rho = random_density(3, derive_seed(7, t));
        CHECK(std::abs(trace(rho) - 1.0) <= 1e-12);
        CHECK(min_eigenvalue(rho) > 0.0);
        const HermitianMatrix renorm = (1.0 / trace(rho)) * rho;
        CHECK(frobenius_norm(renorm - rho) <= 1e-15);
    }
}

TEST_CASE("random_loewner_ordered_pair: order holds") {
    for (int t = 0; t < 20; ++t) {
        auto [a, b] = random_loewner_ordered_pair(3, derive_seed(11, t));
        CHECK(min_eigenvalue(b - a) >= -1e-12);
    }
}

TEST_CASE("random_anticommutator_pair: all strategies satisfy the invariant") {
    for (PairStrategy s :
         {PairStrategy::Commuting, PairStrategy::Perturbative, PairStrategy::Rejection}) {
        for (int t = 0; t < 10; ++t) {
            const auto sample = random_anticommutator_pair(3, derive_seed(13, t), s);
            const double scale = (1.0 + operator_norm(sample.pair.A)) *
                                 (1.0 + operator_norm(sample.pair.B));
            CHECK(sample.pair.anticommutator_min_eig >= -1e-9 * scale);
            CHECK(min_eigenvalue(anticommutator(sample.pair.A, sample.pair.B)) >=
                  -1e-9 * scale);
            CHECK(min_eigenvalue(sample.pair.A) > 0.0);
            CHECK(min_eigenvalue(sample.pair.B) > 0.0);
        }
    }
    // A = B is always valid (2 A^2 is PSD)
    const HermitianMatrix A = random_pd(3, 77);
    CHECK(min_eigenvalue(anticommutator(A, A)) > 0.0);
}

TEST_CASE("exit-code reduction over synthetic reports") {
    CheckReport pass = make_check("ok", 0.0, 1.0, 1e-9);
    CheckReport fail = make_check("bad", 1.0, 0.0, 1e-9);
    CheckReport info = fail;
    info.status = CheckStatus::Informative;
    CheckReport unmet;
    unmet.status = CheckStatus::PreconditionUnmet;
    CheckReport inconclusive;
    inconclusive.status = CheckStatus::Inconclusive;

    CHECK(exit_code_for(summarize({pass, pass})) == 0);
    CHECK(exit_code_for(summarize({pass, fail})) == 1);
    CHECK(exit_code_for(summarize({pass, info, unmet, inconclusive})) == 0);

    const CampaignSummary s = summarize({pass, fail, info, unmet, inconclusive});
    CHECK(s.total == 5);
    CHECK(s.passed == 1);
    CHECK(s.failed == 1);
    CHECK(s.informative == 1);
    CHECK(s.precondition_unmet == 1);
    CHECK(s.inconclusive == 1);
}

TEST_CASE("verify campaign: clean run, forced failure, informative downgrade") {
    CampaignSpec spec;
    spec.command = CampaignCommand::Verify;
    spec.functions = {"power:0.5", "lambert_w"};
    spec.dims = {2, 3};
    spec.trials = 25;
    spec.seed = 99;

    const CampaignResult clean = run_campaign(spec, 1);
    CHECK(clean.exit_code == 0);
    CHECK(clean.summary.failed == 0);
    CHECK(clean.summary.total == 100);

    // an impossible tolerance turns every margin into a hard violation
    CampaignSpec forced = spec;
    forced.tolerance_override = -1e6;
    const CampaignResult broken = run_campaign(forced, 1);
    CHECK(broken.exit_code == 1);
    CHECK(broken.summary.failed == broken.summary.total);

    // power(2) violates the inequality, but its h fails the monotonicity
    // screen, so the violations are informative and the run stays green
    CampaignSpec informative = spec;
    informative.functions = {"power:2"};
    informative.trials = 40;
    const CampaignResult run = run_campaign(informative, 1);
    CHECK(run.exit_code == 0);
    CHECK(run.summary.failed == 0);
    CHECK(run.summary.informative > 0);
}

TEST_CASE("verify campaign: violated reports replay from the embedded witness") {
    CampaignSpec spec;
    spec.command = CampaignCommand::Verify;
    spec.functions = {"power:2"};
    spec.dims = {2};
    spec.trials = 40;
    spec.seed = 1234;
    const CampaignResult run = run_campaign(spec, 1);

    bool replayed = false;
    for (const auto& c : run.checks) {
        if (c.status != CheckStatus::Informative || c.witness.size() != 2) continue;
        const CheckReport again =
            ps_check(ScalarFunction::power(2.0), c.witness[0].second, c.witness[1].second);
        CHECK(again.margin == doctest::Approx(c.margin));
        CHECK(again.margin < 0.0);
        replayed = true;
        break;
    }
    CHECK(replayed);
}

TEST_CASE("campaign reports are byte-identical across runs and worker counts") {
    CampaignSpec spec;
    spec.command = CampaignCommand::Verify;
    spec.functions = {"power:0.3", "algebraic_example"};
    spec.dims = {2, 3};
    spec.trials = 30;
    spec.seed = 555;

    const CampaignResult r1 = run_campaign(spec, 1);
    const CampaignResult r4 = run_campaign(spec, 4);
    CHECK(assemble_report(spec, r1).dump() == assemble_report(spec, r4).dump());

    // PSBOUND_WORKERS path (workers = 0 reads the environment)
    setenv("PSBOUND_WORKERS", "2", 1);
    const CampaignResult renv = run_campaign(spec, 0);
    unsetenv("PSBOUND_WORKERS");
    CHECK(assemble_report(spec, r1).dump() == assemble_report(spec, renv).dump());

    spec.out_path = temp_path("rep1.json");
    run_campaign(spec, 2);
    const std::string b1 = slurp(spec.out_path);
    spec.out_path = temp_path("rep2.json");
    run_campaign(spec, 3);
    CHECK(b1 == slurp(spec.out_path));
}

TEST_CASE("csv report format") {
    CampaignSpec spec;
    spec.command = CampaignCommand::Scan;
    spec.dims = {2};
    spec.trials = 3;
    spec.seed = 9;
    spec.grid_points = 9;
    spec.format = ReportFormat::Csv;
    spec.out_path = temp_path("rep.csv");
    const CampaignResult r = run_campaign(spec, 1);
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(spec.out_path);
    CHECK(csv.rfind("label,lhs,rhs,margin,tolerance,passed,status,seed", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
}

TEST_CASE("chernoff and bounds commands on state files") {
    const std::string pa = temp_path("state_a.json");
    const std::string pb = temp_path("state_b.json");
    const HermitianMatrix rho = random_density(3, 404);
    save_matrix_file(rho, pa);
    save_matrix_file(rho, pb);

    CampaignSpec spec;
    spec.command = CampaignCommand::Chernoff;
    spec.state_a_path = pa;
    spec.state_b_path = pb;
    const CampaignResult r = run_campaign(spec, 1);
    CHECK(r.exit_code == 0);
    CHECK(r.results.at("chernoff").at("value").get<double>() == doctest::Approx(1.0));
    CHECK(r.results.at("trace_distance").get<double>() == doctest::Approx(0.0));

    CampaignSpec bounds = spec;
    bounds.command = CampaignCommand::Bounds;
    const CampaignResult rb = run_campaign(bounds, 1);
    CHECK(rb.exit_code == 0);
    CHECK(rb.results.at("family_bound").at("value").get<double>() == doctest::Approx(1.0));

    // non-density input is a configuration error
    save_matrix_file(random_pd(3, 405), pa);
    CHECK_THROWS_AS(run_campaign(spec, 1), SpecError);
}

TEST_CASE("monotone campaign: verdicts and exit codes") {
    CampaignSpec spec;
    spec.command = CampaignCommand::Monotone;
    spec.functions = {"power:2"};
    spec.loewner_order = 2;
    spec.dims = {2};
    spec.trials = 100;
    spec.seed = 7;
    const CampaignResult bad = run_campaign(spec, 1);
    CHECK(bad.exit_code == 1);
    CHECK(bad.summary.failed >= 1);

    spec.functions = {"sqrt"};
    spec.loewner_order = 0;
    const CampaignResult good = run_campaign(spec, 1);
    CHECK(good.exit_code == 0);
    CHECK(good.summary.failed == 0);

    spec.functions = {"measure_dec:0.3:0.5,1.2"};
    spec.decreasing = true;
    const CampaignResult dec = run_campaign(spec, 1);
    CHECK(dec.exit_code == 0);
}

TEST_CASE("os-check campaign with neg_log1p stays green and counts unmet trials") {
    CampaignSpec spec;
    spec.command = CampaignCommand::OsCheck;
    spec.functions = {"sqrt", "neg_log1p"};
    spec.dims = {2, 3};
    spec.trials = 10;
    spec.seed = 31337;
    spec.strategy = PairStrategy::Commuting;
    const CampaignResult r = run_campaign(spec, 1);
    CHECK(r.exit_code == 0);
    CHECK(r.summary.failed == 0);
    CHECK(r.summary.informative == 0);       // both functions satisfy their hypotheses
    CHECK(r.summary.precondition_unmet > 0);  // alpha = 0 or 1 rarely meets the precondition
}

TEST_CASE("os-check downgrades violations of f with f(0) != 0 to informative") {
    // a decreasing measure function with f(0) = 4.95 sits outside the
    // weighted-mean bound's hypotheses: its violations are findings, not
    // suite failures
    CampaignSpec spec;
    spec.command = CampaignCommand::OsCheck;
    spec.functions = {"measure_dec:0.3:0.5,1.2:2,0.7"};
    spec.dims = {2, 3};
    spec.trials = 15;
    spec.seed = 2718;
    spec.strategy = PairStrategy::Commuting;
    const CampaignResult r = run_campaign(spec, 1);
    CHECK(r.exit_code == 0);
    CHECK(r.summary.failed == 0);
    CHECK(r.summary.informative > 0);
}

TEST_CASE("function spec parsing: strings and JSON") {
    CHECK(function_from_string("power:0.5").eval(4.0) == doctest::Approx(2.0));
    CHECK(function_from_string("lambert_w").name() == "lambert_w");
    CHECK(function_from_string("measure_mon:0:1").eval(5.0) == doctest::Approx(5.0));
    CHECK(function_from_string("measure_dec:0:1,1").eval(1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(function_from_string("nope"), SpecError);
    CHECK_THROWS_AS(function_from_string("power:abc"), SpecError);

    CHECK(function_from_json({{"kind", "power"}, {"s", 0.5}}).eval(9.0) == doctest::Approx(3.0));
    CHECK(function_from_json({{"kind", "lambert_w"}}).name() == "lambert_w");
    const nlohmann::json mj = {{"kind", "measure"},
                               {"monotone", true},
                               {"alpha", 0.0},
                               {"beta", 1.0},
                               {"atoms", nlohmann::json::array({{1.0, 1.0}})}};
    CHECK(function_from_json(mj).eval(1.0) == doctest::Approx(1.5));
    CHECK_THROWS_AS(function_from_json({{"kind", "mystery"}}), SpecError);
}

TEST_CASE("curve emission writes x,f,g samples") {
    CampaignSpec spec;
    spec.command = CampaignCommand::Verify;
    spec.functions = {"lambert_w"};
    spec.dims = {2};
    spec.trials = 1;
    spec.curve_dir = "/tmp";
    run_campaign(spec, 1);
    const std::string csv = slurp("/tmp/curve_lambert_w.csv");
    CHECK(csv.rfind("x,f,g", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 302);  // header + 301 samples
}
