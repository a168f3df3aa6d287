#include "psbound/trace_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace psbound {

namespace {

constexpr double kChernoffEps = 1e-3;
constexpr int kChernoffGrid = 257;

double golden_min(const std::function<double(double)>& f, double a, double b, double tol,
                  int max_iters, double& best_x, double& best_f) {
    const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - (b - a) * inv_gr;
    double d = a + (b - a) * inv_gr;
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iters && (b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_gr;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_gr;
            fd = f(d);
        }
    }
    if (fc < fd) {
        best_x = c;
        best_f = fc;
    } else {
        best_x = d;
        best_f = fd;
    }
    return best_f;
}

} // namespace

double ps_lhs(const HermitianMatrix& A, const HermitianMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionError("ps_lhs: dimension mismatch");
    return trace(A) + trace(B) - trace_norm(A - B);
}

double ps_rhs(const ScalarFunction& f, const HermitianMatrix& A, const HermitianMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionError("ps_rhs: dimension mismatch");
    const ScalarFunction g = companion_g(f);
    return 2.0 * trace_product(apply_function(A, f), apply_function(B, g));
}

CheckReport ps_check(const ScalarFunction& f, const HermitianMatrix& A, const HermitianMatrix& B) {
    CheckReport r;
    r.label = "ps[" + f.name() + "]";
    try {
        r.lhs = ps_lhs(A, B);
        r.rhs = ps_rhs(f, A, B);
    } catch (const DomainError& e) {
        r.status = CheckStatus::Inconclusive;
        r.passed = false;
        r.label += std::string(": ") + e.what();
        return r;
    }
    r.margin = r.rhs - r.lhs;
    r.tolerance = 1e-8 * (1.0 + std::abs(r.lhs) + std::abs(r.rhs));
    r.passed = r.margin >= -r.tolerance;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

CheckReport ps_three_matrix_check(const ScalarFunction& f, const HermitianMatrix& A,
                                  const HermitianMatrix& B, const HermitianMatrix& X) {
    CheckReport r;
    r.label = "ps3[" + f.name() + "]";
    try {
        const ScalarFunction g = companion_g(f);
        const HermitianMatrix sqrt_x = apply_function(X, ScalarFunction::sqrt());
        r.lhs = trace_product(A, X) + trace_product(X, B) -
                trace(congruence(sqrt_x, abs_value(A - B)));
        r.rhs = 2.0 * trace_product3(apply_function(A, f), X, apply_function(B, g)).real();
    } catch (const DomainError& e) {
        r.status = CheckStatus::Inconclusive;
        r.passed = false;
        r.label += std::string(": ") + e.what();
        return r;
    }
    r.margin = r.rhs - r.lhs;
    r.tolerance = 1e-8 * (1.0 + std::abs(r.lhs) + std::abs(r.rhs));
    r.passed = r.margin >= -r.tolerance;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

std::pair<double, double> lemma_functionals(const ScalarFunction& f_dec,
                                            const ScalarFunction& g_mon,
                                            const HermitianMatrix& A, const HermitianMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionError("lemma_functionals: dimension mismatch");
    const HermitianMatrix P = positive_part_projection(B - A);
    const HermitianMatrix dg = apply_function(B, g_mon) - apply_function(A, g_mon);
    const HermitianMatrix df = apply_function(A, f_dec) - apply_function(B, f_dec);

    const Complex v1 = trace_product3(P, A, dg);
    const Complex v2 = trace_product3(P, A, df);

    const double scale1 = 1.0 + std::abs(v1) + frobenius_norm(A) * frobenius_norm(dg);
    const double scale2 = 1.0 + std::abs(v2) + frobenius_norm(A) * frobenius_norm(df);
    if (std::abs(v1.imag()) > 1e-10 * scale1 || std::abs(v2.imag()) > 1e-10 * scale2) {
        std::ostringstream msg;
        msg << "lemma_functionals: unexpected imaginary residue (" << v1.imag() << ", "
            << v2.imag() << ")";
        throw Error(msg.str());
    }
    return {v1.real(), v2.real()};
}

double chernoff_s(const HermitianMatrix& A, const HermitianMatrix& B, double s) {
    if (A.dim() != B.dim()) throw DimensionError("chernoff_s: dimension mismatch");
    if (!(s > 0.0 && s < 1.0)) throw DomainError("chernoff_s: s must lie in (0,1)");
    return trace_product(apply_function(A, ScalarFunction::power(s)),
                         apply_function(B, ScalarFunction::power(1.0 - s)));
}

ChernoffResult chernoff_bound(const HermitianMatrix& A, const HermitianMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionError("chernoff_bound: dimension mismatch");

    // one decomposition per operand; the grid scan only re-maps eigenvalues
    const SpectralDecomposition da = eigh(A), db = eigh(B);
    const double band_a = 1e-12 * (1.0 + std::abs(da.eigenvalues.back()));
    const double band_b = 1e-12 * (1.0 + std::abs(db.eigenvalues.back()));
    if (da.eigenvalues.front() < -band_a || db.eigenvalues.front() < -band_b)
        throw DomainError("chernoff_bound: arguments must be PSD");
    std::vector<double> pa(da.eigenvalues.size()), pb(db.eigenvalues.size());
    const auto c_of = [&](double s) {
        for (size_t i = 0; i < pa.size(); ++i)
            pa[i] = da.eigenvalues[i] > 0.0 ? std::pow(da.eigenvalues[i], s) : 0.0;
        for (size_t i = 0; i < pb.size(); ++i)
            pb[i] = db.eigenvalues[i] > 0.0 ? std::pow(db.eigenvalues[i], 1.0 - s) : 0.0;
        return trace_product(da.reconstruct(pa), db.reconstruct(pb));
    };

    const double lo = kChernoffEps, hi = 1.0 - kChernoffEps;
    ChernoffResult res;
    res.grid_size = kChernoffGrid;

    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<double> svals(kChernoffGrid);
    for (int i = 0; i < kChernoffGrid; ++i) {
        svals[i] = lo + (hi - lo) * i / (kChernoffGrid - 1);
        const double v = c_of(svals[i]);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    res.value = best_val;
    res.argmin_s = svals[best];

    // golden-section refinement on the bracketing interval (c is convex in s)
    const double a = svals[std::max(best - 1, 0)];
    const double b = svals[std::min(best + 1, kChernoffGrid - 1)];
    double gx = res.argmin_s, gf = best_val;
    golden_min(c_of, a, b, 1e-10, 200, gx, gf);
    if (gf < res.value) {
        res.value = gf;
        res.argmin_s = gx;
    }
    res.refined = true;
    return res;
}

std::pair<double, ScalarFunction> family_bound(const std::vector<ScalarFunction>& catalog,
                                               const HermitianMatrix& A,
                                               const HermitianMatrix& B) {
    if (catalog.empty()) throw SpecError("family_bound: empty catalog");
    double best = std::numeric_limits<double>::infinity();
    size_t best_i = 0;
    for (size_t i = 0; i < catalog.size(); ++i) {
        const ScalarFunction g = companion_g(catalog[i]);
        const double v =
            trace_product(apply_function(A, catalog[i]), apply_function(B, g));
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    return {best, catalog[best_i]};
}

double trace_distance(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionError("trace_distance: dimension mismatch");
    if (std::abs(trace(rho) - 1.0) > 1e-8 || std::abs(trace(sigma) - 1.0) > 1e-8)
        throw SpecError("trace_distance: arguments must have unit trace");
    return 0.5 * trace_norm(rho - sigma);
}

CheckReport sandwich_check(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
    const double phi = trace_distance(rho, sigma);
    const double ch = chernoff_bound(rho, sigma).value;
    const double lower = 1.0 - ch;
    const double upper = std::sqrt(std::max(0.0, 1.0 - ch * ch));

    const double m1 = phi - lower;
    const double m2 = upper - phi;

    CheckReport r;
    std::ostringstream label;
    label << "sandwich[phi=" << phi << ",ch=" << ch << "]";
    r.label = label.str();
    r.lhs = lower;
    r.rhs = upper;
    r.margin = std::min(m1, m2);
    r.tolerance = 1e-8 * (1.0 + phi + ch);
    r.passed = r.margin >= -r.tolerance;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

} // namespace psbound
