#include "psbound/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "psbound/random_models.hpp"

namespace psbound {

HermitianMatrix loewner_matrix(const ScalarFunction& f, const std::vector<double>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 1) throw SpecError("loewner_matrix: empty point set");
    for (int i = 0; i + 1 < n; ++i) {
        if (points[i + 1] == points[i]) throw SpecError("loewner_matrix: duplicate points");
        if (points[i + 1] < points[i])
            throw SpecError("loewner_matrix: points must be strictly increasing");
    }

    std::vector<Complex> entries(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double h = 1e-6 * (1.0 + std::abs(points[i]));
        const double deriv = (f.eval(points[i] + h) - f.eval(points[i] - h)) / (2.0 * h);
        entries[static_cast<size_t>(i) * n + i] = deriv;
        for (int j = 0; j < i; ++j) {
            const double dd = (f.eval(points[i]) - f.eval(points[j])) / (points[i] - points[j]);
            entries[static_cast<size_t>(i) * n + j] = dd;
            entries[static_cast<size_t>(j) * n + i] = dd;
        }
    }
    return HermitianMatrix(n, std::move(entries));
}

MonotonicityVerdict loewner_matrix_test(const ScalarFunction& f,
                                        const std::vector<double>& points) {
    const HermitianMatrix L = loewner_matrix(f, points);
    return loewner_matrix_test(f, points, default_psd_tolerance(operator_norm(L)));
}

MonotonicityVerdict loewner_matrix_test(const ScalarFunction& f,
                                        const std::vector<double>& points, double tol) {
    const HermitianMatrix L = loewner_matrix(f, points);
    const double m = min_eigenvalue(L);

    MonotonicityVerdict v;
    v.method = MonotonicityVerdict::Method::Loewner;
    v.order = static_cast<int>(points.size());
    v.margin = m;
    v.conclusion = m >= -tol ? MonotonicityVerdict::Conclusion::Consistent
                             : MonotonicityVerdict::Conclusion::Violated;
    if (v.violated()) v.witness_points = points;
    return v;
}

double monotone_pair_margin(const ScalarFunction& f, const HermitianMatrix& A,
                            const HermitianMatrix& B, bool decreasing) {
    const HermitianMatrix fa = apply_function(A, f);
    const HermitianMatrix fb = apply_function(B, f);
    const HermitianMatrix diff = decreasing ? fa - fb : fb - fa;
    return min_eigenvalue(diff);
}

namespace {

// Affine placement of an ordered pair into the interior of a restricted
// domain; identity when the domain is already [0, inf)-like.
void place_in_domain(const Domain& dom, HermitianMatrix& A, HermitianMatrix& B) {
    const bool lo_ok = dom.lo <= 0.0 && !dom.lo_open;
    const bool hi_ok = std::isinf(dom.hi);
    if (lo_ok && hi_ok) return;

    const double a = std::isinf(dom.lo) ? 0.0 : dom.lo + 1e-2 * (1.0 + std::abs(dom.lo));
    const double b = std::isinf(dom.hi) ? a + 50.0 : dom.lo + 0.9 * (dom.hi - dom.lo);
    const double top = operator_norm(B);
    const double c = (b - a) / std::max(top, 1e-12);
    const HermitianMatrix shift = a * HermitianMatrix::identity(A.dim());
    A = shift + c * A;
    B = shift + c * B;
}

} // namespace

MonotonicityVerdict randomized_monotonicity_test(const ScalarFunction& f, int dim, int trials,
                                                 std::uint64_t seed, bool decreasing) {
    if (dim < 2) throw SpecError("randomized_monotonicity_test: dim must be >= 2");

    MonotonicityVerdict v;
    v.method = MonotonicityVerdict::Method::Randomized;
    v.order = dim;
    v.seed = seed;
    v.margin = 0.0;

    const Domain dom = f.domain();
    for (int t = 0; t < trials; ++t) {
        auto [A, B] = random_loewner_ordered_pair(dim, derive_seed(seed, t));
        place_in_domain(dom, A, B);
        const HermitianMatrix fa = apply_function(A, f);
        const HermitianMatrix fb = apply_function(B, f);
        const SpectralDecomposition dd = eigh(decreasing ? fa - fb : fb - fa);
        const double m = dd.eigenvalues.front();
        const double tol = default_psd_tolerance(
            std::max(std::abs(dd.eigenvalues.front()), std::abs(dd.eigenvalues.back())));
        v.trials = t + 1;
        if (m < -tol) {
            v.conclusion = MonotonicityVerdict::Conclusion::Violated;
            v.margin = m;
            v.witness_pair = std::make_pair(A, B);
            v.seed = derive_seed(seed, t);
            return v;
        }
        v.margin = std::min(v.margin, m);
    }
    v.conclusion = MonotonicityVerdict::Conclusion::Consistent;
    return v;
}

std::vector<double> default_loewner_points(int size, const Domain& dom) {
    double lo = 1e-2, hi = 1e2;
    // keep a central-difference margin inside the domain
    if (!std::isinf(dom.lo)) lo = std::max(lo, dom.lo + 1e-3 * (1.0 + std::abs(dom.lo)));
    if (!std::isinf(dom.hi)) hi = std::min(hi, dom.hi - 1e-3 * (1.0 + std::abs(dom.hi)));
    if (!(hi > lo)) return {};

    std::vector<double> pts(size);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < size; ++i)
        pts[i] = std::exp(llo + (lhi - llo) * i / std::max(size - 1, 1));
    return pts;
}

std::vector<double> uniform_convexity_grid(int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i + 1) / (n + 1);
    return g;
}

CheckReport convexity_scan(const HermitianMatrix& A, const HermitianMatrix& B,
                           const std::vector<double>& grid) {
    if (A.dim() != B.dim()) throw DimensionError("convexity_scan: dimension mismatch");
    const SpectralDecomposition da = eigh(A), db = eigh(B);
    if (da.eigenvalues.front() <= 0.0 || db.eigenvalues.front() <= 0.0)
        throw DomainError("convexity_scan: inputs must be positive definite");
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] <= 0.0 || grid[i] >= 1.0)
            throw SpecError("convexity_scan: grid must lie in (0,1)");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw SpecError("convexity_scan: grid must be ascending");
    }

    const int n = static_cast<int>(grid.size());
    std::vector<double> c(n);
    std::vector<double> pa(da.eigenvalues.size()), pb(db.eigenvalues.size());
    for (int k = 0; k < n; ++k) {
        const double t = grid[k];
        for (size_t i = 0; i < pa.size(); ++i) pa[i] = std::pow(da.eigenvalues[i], t);
        for (size_t i = 0; i < pb.size(); ++i) pb[i] = std::pow(db.eigenvalues[i], 1.0 - t);
        c[k] = trace_product(da.reconstruct(pa), db.reconstruct(pb));
    }

    double cmax = 0.0;
    for (double x : c) cmax = std::max(cmax, std::abs(x));
    const double tol = 1e-9 * (1.0 + cmax);

    double worst = std::numeric_limits<double>::infinity();
    double worst_mid = 0.0, worst_avg = 0.0;
    int pairs = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
            const double mid = 0.5 * (grid[i] + grid[j]);
            // locate the midpoint on the grid, if present
            const auto it = std::lower_bound(grid.begin(), grid.end(), mid - 1e-12);
            if (it == grid.end() || std::abs(*it - mid) > 1e-12 * (1.0 + mid)) continue;
            const int k = static_cast<int>(it - grid.begin());
            const double avg = 0.5 * (c[i] + c[j]);
            const double margin = avg - c[k];
            ++pairs;
            if (margin < worst) {
                worst = margin;
                worst_mid = c[k];
                worst_avg = avg;
            }
        }
    }

    CheckReport r;
    std::ostringstream label;
    label << "convexity-scan[grid=" << n << ",pairs=" << pairs << "]";
    r.label = label.str();
    if (pairs == 0) {
        r.status = CheckStatus::Inconclusive;
        r.passed = false;
        return r;
    }
    r.lhs = worst_mid;
    r.rhs = worst_avg;
    r.margin = worst;
    r.tolerance = tol;
    r.passed = worst >= -tol;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

} // namespace psbound
