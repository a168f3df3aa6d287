// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one [PASS]/[FAIL] line per criterion. Exit code = number of failed
// criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "psbound/campaign.hpp"
#include "psbound/monotonicity.hpp"
#include "psbound/operator_geometry.hpp"
#include "psbound/random_models.hpp"
#include "psbound/report_io.hpp"
#include "psbound/trace_bounds.hpp"

using namespace psbound;

namespace {

constexpr std::uint64_t kSeed = 0x5eedba5eULL;

int g_failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    if (!ok) ++g_failures;
}

std::vector<std::string> catalog_texts() {
    std::vector<std::string> v;
    for (int i = 1; i <= 9; ++i) v.push_back("power:0." + std::to_string(i));
    v.push_back("lambert_w");
    v.push_back("algebraic_example");
    return v;
}

std::vector<ScalarFunction> catalog_functions() {
    std::vector<ScalarFunction> v;
    for (const auto& t : catalog_texts()) v.push_back(function_from_string(t));
    return v;
}

// 1. Powers-Stormer suite: 11 functions x dims 2..6 x 1000 Wishart pairs,
//    zero violations at 1e-8 scale, under 3 minutes.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();

    CampaignSpec spec;
    spec.command = CampaignCommand::Verify;
    spec.functions = catalog_texts();
    spec.dims = {2, 3, 4, 5, 6};
    spec.trials = 1000;
    spec.seed = kSeed;
    const CampaignResult res = run_campaign(spec);

    int violations = 0;
    for (const auto& c : res.checks)
        if (c.margin < -c.tolerance) ++violations;

    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "Powers-Stormer suite: %d checks, %d violations, %.1f s (budget 180 s)",
                  res.summary.total, violations, secs);
    report(1, res.summary.total == 55000 && violations == 0 && secs < 180.0, buf);
}

// 2. Equality case: |rhs - lhs| <= 1e-9 trA with A = B for all cataloged f.
void criterion_2() {
    int bad = 0;
    auto cat = catalog_functions();
    cat.push_back(ScalarFunction::sqrt());
    cat.push_back(ScalarFunction::identity());
    cat.push_back(ScalarFunction::reciprocal());
    cat.push_back(ScalarFunction::constant(2.0));
    cat.push_back(
        from_discrete_measure(MeasureKind::Monotone, {0.1, 0.4, {{0.5, 1.2}, {2.0, 0.7}}}));
    cat.push_back(from_discrete_measure(MeasureKind::Decreasing, {0.3, 0.0, {{1.0, 1.0}}}));
    for (int t = 0; t < 100; ++t) {
        const int dim = 2 + t % 4;
        const HermitianMatrix A = random_pd(dim, derive_seed(kSeed + 2, t));
        for (const auto& f : cat) {
            const CheckReport r = ps_check(f, A, A);
            if (std::abs(r.rhs - r.lhs) > 1e-9 * trace(A)) ++bad;
        }
    }
    report(2, bad == 0,
           "equality case margin <= 1e-9 trA over 100 trials x " + std::to_string(cat.size()) +
               " functions (" + std::to_string(bad) + " over budget)");
}

// 3. Example fidelity: h for the algebraic example matches 2x/(x+1) on
//    (0, 50]; h for Lambert W matches log on the image grid.
void criterion_3() {
    const ScalarFunction h_alg = compose_with_g_inverse(ScalarFunction::algebraic_example());
    double worst_alg = 0.0;
    for (int k = 1; k <= 200; ++k) {
        const double x = 50.0 * k / 200.0;
        worst_alg = std::max(worst_alg, std::abs(h_alg.eval(x) - 2.0 * x / (x + 1.0)));
    }

    const ScalarFunction h_w = compose_with_g_inverse(ScalarFunction::lambert_w());
    double worst_w = 0.0;
    for (int k = 0; k < 200; ++k) {
        // image of g = x/W(x) starts at 1
        const double y = std::exp(std::log(1.0 + 1e-6) +
                                  (std::log(1e5) - std::log(1.0 + 1e-6)) * k / 199.0);
        worst_w = std::max(worst_w, std::abs(h_w.eval(y) - std::log(y)));
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "composite fidelity: |h_alg - 2x/(x+1)| <= %.2e, |h_W - log| <= %.2e",
                  worst_alg, worst_w);
    report(3, worst_alg <= 1e-8 && worst_w <= 1e-8, buf);
}

// 4. Lambert W accuracy on a 500-point log grid over [0, 1e6], plus the
//    bisection oracle at x = 1.
void criterion_4() {
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const double x =
            k == 0 ? 0.0 : std::exp(std::log(1e-8) + (std::log(1e6) - std::log(1e-8)) * (k - 1) / 498.0);
        const double w = lambert_w0(x);
        worst = std::max(worst, std::abs(w * std::exp(w) - x) / (1.0 + x));
    }

    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid * std::exp(mid) < 1.0 ? lo : hi) = mid;
    }
    const double oracle_dev = std::abs(lambert_w0(1.0) - 0.5 * (lo + hi));

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "Lambert W: max residual %.2e (<= 1e-12), |W(1) - bisection| = %.2e", worst,
                  oracle_dev);
    report(4, worst <= 1e-12 && oracle_dev <= 1e-12, buf);
}

// 5. Lemma functionals nonnegative over 1000 seeded trials, dims 2..5.
void criterion_5() {
    const ScalarFunction fdec =
        from_discrete_measure(MeasureKind::Decreasing, {0.3, 0.0, {{0.5, 1.2}, {2.0, 0.7}}});
    const ScalarFunction gmon =
        from_discrete_measure(MeasureKind::Monotone, {0.1, 0.4, {{0.5, 1.2}, {2.0, 0.7}}});
    int bad = 0;
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const int dim = 2 + t % 4;
        const auto [v1, v2] =
            lemma_functionals(fdec, gmon, random_pd(dim, derive_seed(kSeed + 5, 2 * t)),
                              random_pd(dim, derive_seed(kSeed + 5, 2 * t + 1)));
        worst = std::min({worst, v1, v2});
        if (v1 < -1e-9 * (1.0 + std::abs(v1)) || v2 < -1e-9 * (1.0 + std::abs(v2))) ++bad;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "lemma functionals >= -1e-9 scale over 1000 trials (min %.2e)",
                  worst);
    report(5, bad == 0, buf);
}

// 6. Chernoff sandwich on 500 density pairs; grid-oracle agreement on 20.
void criterion_6() {
    int bad_sandwich = 0;
    for (int t = 0; t < 500; ++t) {
        const int dim = 2 + t % 3;
        if (!sandwich_check(random_density(dim, derive_seed(kSeed + 6, 2 * t)),
                            random_density(dim, derive_seed(kSeed + 6, 2 * t + 1)))
                 .passed)
            ++bad_sandwich;
    }

    // independent oracle: spectral double sum over a 1e5-point grid
    int bad_oracle = 0;
    double worst_rel = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int dim = 2 + t % 3;
        const HermitianMatrix A = random_density(dim, derive_seed(kSeed + 16, 2 * t));
        const HermitianMatrix B = random_density(dim, derive_seed(kSeed + 16, 2 * t + 1));
        const SpectralDecomposition da = eigh(A), db = eigh(B);

        std::vector<double> overlap(static_cast<size_t>(dim) * dim);
        for (int k = 0; k < dim; ++k)
            for (int l = 0; l < dim; ++l) {
                Complex dot(0.0, 0.0);
                for (int i = 0; i < dim; ++i) dot += std::conj(da.vec(i, k)) * db.vec(i, l);
                overlap[static_cast<size_t>(k) * dim + l] = std::norm(dot);
            }
        double oracle = 1e300;
        for (int i = 0; i < 100000; ++i) {
            const double s = 1e-3 + (1.0 - 2e-3) * i / 99999.0;
            double c = 0.0;
            for (int k = 0; k < dim; ++k)
                for (int l = 0; l < dim; ++l)
                    c += std::pow(da.eigenvalues[k], s) * std::pow(db.eigenvalues[l], 1.0 - s) *
                         overlap[static_cast<size_t>(k) * dim + l];
            oracle = std::min(oracle, c);
        }
        const double rel = std::abs(chernoff_bound(A, B).value - oracle) / oracle;
        worst_rel = std::max(worst_rel, rel);
        if (rel > 1e-6) ++bad_oracle;
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "sandwich: %d/500 failures; oracle agreement worst rel dev %.2e", bad_sandwich,
                  worst_rel);
    report(6, bad_sandwich == 0 && bad_oracle == 0, buf);
}

// 7. Midpoint convexity of t -> tr(A^t B^{1-t}) on 200 PD pairs.
void criterion_7() {
    const auto grid = uniform_convexity_grid(33);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
        const int dim = 2 + t % 3;
        if (!convexity_scan(random_pd(dim, derive_seed(kSeed + 7, 2 * t)),
                            random_pd(dim, derive_seed(kSeed + 7, 2 * t + 1)), grid)
                 .passed)
            ++bad;
    }
    report(7, bad == 0,
           "midpoint convexity on 200 pairs, 33-point grids (" + std::to_string(bad) +
               " failures)");
}

// 8. Monotonicity discrimination: power(2) flagged with the hand-checkable
//    Loewner witness and a fast randomized witness; sqrt and a measure-built
//    monotone function stay clean over 2000 trials.
void criterion_8() {
    bool ok = true;
    std::string detail;

    const HermitianMatrix L = loewner_matrix(ScalarFunction::power(2.0), {1.0, 2.0});
    ok &= std::abs(L(0, 0).real() - 2.0) <= 1e-9 && std::abs(L(0, 1).real() - 3.0) <= 1e-12 &&
          std::abs(L(1, 1).real() - 4.0) <= 1e-9;
    ok &= loewner_matrix_test(ScalarFunction::power(2.0), {1.0, 2.0}).violated();

    const auto rand_sq =
        randomized_monotonicity_test(ScalarFunction::power(2.0), 2, 100, kSeed + 8, false);
    ok &= rand_sq.violated() && rand_sq.trials <= 100;
    detail += "power(2) witness in " + std::to_string(rand_sq.trials) + " trials";

    const auto rand_sqrt =
        randomized_monotonicity_test(ScalarFunction::sqrt(), 4, 2000, kSeed + 9, false);
    const ScalarFunction mono =
        from_discrete_measure(MeasureKind::Monotone, {0.1, 0.4, {{0.5, 1.2}, {2.0, 0.7}}});
    const auto rand_mono = randomized_monotonicity_test(mono, 4, 2000, kSeed + 10, false);
    ok &= !rand_sqrt.violated() && !rand_mono.violated();
    detail += "; sqrt and measure-built clean over 2000 trials each";

    report(8, ok, detail);
}

// 9. The fixed second-variable counterexample is confirmed.
void criterion_9() {
    const CheckReport r = second_variable_counterexample();
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "A <= C with P(I,C) - P(I,A) dipping %.4f below zero (status %s)", r.margin,
                  to_string(r.status));
    report(9, r.passed, buf);
}

// 10. Operator-mean inequality with f = sqrt over 500 anticommutator-positive
//     pairs drawn from all three strategies, dims 2..4.
void criterion_10() {
    const PairStrategy strategies[] = {PairStrategy::Commuting, PairStrategy::Perturbative,
                                       PairStrategy::Rejection};
    int bad = 0;
    for (int t = 0; t < 500; ++t) {
        const PairStrategy s = strategies[t % 3];
        const int dim = 2 + (t / 3) % 3;
        const auto sample = random_anticommutator_pair(dim, derive_seed(kSeed + 11, t), s);
        if (!hkh_check(ScalarFunction::sqrt(), sample.pair).passed) ++bad;
    }
    report(10, bad == 0,
           "A + B - |A-B| <= 2 A#B on 500 pairs, all strategies (" + std::to_string(bad) +
               " failures)");
}

// 11. Weighted-mean bound and its corollary with f = -log(1+x): zero
//     violations among precondition-met trials; unmet counted separately.
void criterion_11() {
    const ScalarFunction f = ScalarFunction::neg_log1p();
    const double alphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    int met = 0, unmet = 0, bad = 0;
    for (int t = 0; t < 500; ++t) {
        const int dim = 2 + t % 3;
        const HermitianMatrix A = random_pd(dim, derive_seed(kSeed + 12, 2 * t));
        const HermitianMatrix B = random_pd(dim, derive_seed(kSeed + 12, 2 * t + 1));
        for (double alpha : alphas) {
            const CheckReport r = theorem_os_check(f, A, B, alpha);
            if (r.status == CheckStatus::PreconditionUnmet)
                ++unmet;
            else {
                ++met;
                if (!r.passed) ++bad;
            }
        }
    }
    int cor_bad = 0;
    for (int t = 0; t < 500; ++t) {
        const int dim = 2 + t % 3;
        const auto sample = random_anticommutator_pair(
            dim, derive_seed(kSeed + 13, t),
            t % 2 ? PairStrategy::Commuting : PairStrategy::Rejection);
        if (!corollary_check(f, sample.pair).passed) ++cor_bad;
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "weighted-mean bound: %d met / %d unmet, %d violations; corollary: %d/500 "
                  "violations",
                  met, unmet, bad, cor_bad);
    report(11, bad == 0 && cor_bad == 0 && met > 0, buf);
}

// 12. Perspective vs parallel-sum representation for three measure functions.
void criterion_12() {
    const std::vector<ScalarFunction> fs = {
        from_discrete_measure(MeasureKind::Decreasing, {0.3, 0.0, {{0.5, 1.2}, {2.0, 0.7}}}),
        from_discrete_measure(MeasureKind::Decreasing, {0.0, 0.0, {{1.0, 1.0}}}),
        from_discrete_measure(MeasureKind::Decreasing, {1.0, 0.0, {{0.25, 0.5}, {4.0, 2.0}}}),
    };
    int bad = 0;
    for (size_t i = 0; i < fs.size(); ++i)
        for (int t = 0; t < 100; ++t) {
            const int dim = 2 + t % 3;
            const CheckReport r = rert_representation_check(
                fs[i], random_pd(dim, derive_seed(kSeed + 14 + i, 2 * t)),
                random_pd(dim, derive_seed(kSeed + 14 + i, 2 * t + 1)));
            if (!r.passed) ++bad;
        }
    report(12, bad == 0,
           "parallel-sum representation on 3 functions x 100 pairs (" + std::to_string(bad) +
               " failures)");
}

// 13. Byte-identical reports for the same seed, across worker counts.
void criterion_13() {
    CampaignSpec verify;
    verify.command = CampaignCommand::Verify;
    verify.functions = {"power:0.3", "lambert_w", "algebraic_example"};
    verify.dims = {2, 3, 4};
    verify.trials = 200;
    verify.seed = kSeed + 15;

    const std::string v1 = assemble_report(verify, run_campaign(verify, 1)).dump();
    const std::string v4 = assemble_report(verify, run_campaign(verify, 4)).dump();
    const std::string v4b = assemble_report(verify, run_campaign(verify, 4)).dump();

    CampaignSpec os;
    os.command = CampaignCommand::OsCheck;
    os.dims = {2, 3};
    os.trials = 25;
    os.seed = kSeed + 16;
    os.strategy = PairStrategy::Rejection;
    const std::string o1 = assemble_report(os, run_campaign(os, 1)).dump();
    const std::string o3 = assemble_report(os, run_campaign(os, 3)).dump();

    const bool ok = v1 == v4 && v4 == v4b && o1 == o3;
    report(13, ok, "byte-identical reports across reruns and worker counts 1/3/4");
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();

    std::printf("%s: %d of 13 criteria failed\n", g_failures == 0 ? "OK" : "FAILURES",
                g_failures);
    return g_failures;
}
