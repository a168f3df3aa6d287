#include "psbound/operator_geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace psbound {

namespace {

constexpr double kConditionCap = 1e12;

// A^{1/2} and A^{-1/2} from one decomposition; rejects singular or
// ill-conditioned input (no silent ridge: that would corrupt margins).
void sqrt_and_inv_sqrt(const HermitianMatrix& A, const char* who, HermitianMatrix& root,
                       HermitianMatrix& inv_root) {
    const SpectralDecomposition d = eigh(A);
    const double lo = d.eigenvalues.front(), hi = d.eigenvalues.back();
    if (!(lo > 0.0) || hi / lo > kConditionCap) {
        std::ostringstream msg;
        msg << who << ": operand singular or ill-conditioned (min eig " << lo
            << ", condition " << (lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity())
            << ")";
        throw ConditioningError(msg.str());
    }
    std::vector<double> r(d.eigenvalues.size()), ir(d.eigenvalues.size());
    for (size_t k = 0; k < r.size(); ++k) {
        r[k] = std::sqrt(d.eigenvalues[k]);
        ir[k] = 1.0 / r[k];
    }
    root = d.reconstruct(r);
    inv_root = d.reconstruct(ir);
}

} // namespace

HermitianMatrix anticommutator(const HermitianMatrix& A, const HermitianMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionError("anticommutator: dimension mismatch");
    const int n = A.dim();
    std::vector<Complex> out(static_cast<size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex aik = A(i, k);
            for (int j = 0; j < n; ++j)
                out[static_cast<size_t>(i) * n + j] += aik * B(k, j);
        }
    // AB + (AB)* = AB + BA
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const Complex s = out[static_cast<size_t>(i) * n + j] +
                              std::conj(out[static_cast<size_t>(j) * n + i]);
            out[static_cast<size_t>(i) * n + j] = s;
            out[static_cast<size_t>(j) * n + i] = std::conj(s);
        }
    return HermitianMatrix(n, std::move(out));
}

HermitianMatrix inverse_pd(const HermitianMatrix& A) {
    const SpectralDecomposition d = eigh(A);
    const double lo = d.eigenvalues.front(), hi = d.eigenvalues.back();
    if (!(lo > 0.0) || hi / lo > kConditionCap)
        throw ConditioningError("inverse_pd: operand singular or ill-conditioned");
    std::vector<double> inv(d.eigenvalues.size());
    for (size_t k = 0; k < inv.size(); ++k) inv[k] = 1.0 / d.eigenvalues[k];
    return d.reconstruct(inv);
}

HermitianMatrix operator_mean(const ScalarFunction& f, const HermitianMatrix& A,
                              const HermitianMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionError("operator_mean: dimension mismatch");
    HermitianMatrix root(A.dim()), inv_root(A.dim());
    sqrt_and_inv_sqrt(A, "operator_mean", root, inv_root);
    const HermitianMatrix inner = congruence(inv_root, B);
    return congruence(root, apply_function(inner, f));
}

HermitianMatrix perspective(const ScalarFunction& f, const HermitianMatrix& A,
                            const HermitianMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionError("perspective: dimension mismatch");
    HermitianMatrix root(B.dim()), inv_root(B.dim());
    sqrt_and_inv_sqrt(B, "perspective", root, inv_root);
    const HermitianMatrix inner = congruence(inv_root, A);
    return congruence(root, apply_function(inner, f));
}

HermitianMatrix parallel_sum(const HermitianMatrix& A, const HermitianMatrix& B) {
    return inverse_pd(inverse_pd(A) + inverse_pd(B));
}

HermitianMatrix weighted_mean(const HermitianMatrix& A, const HermitianMatrix& B, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw DomainError("weighted_mean: alpha must lie in [0,1]");
    return (1.0 - alpha) * A + alpha * B;
}

CheckReport hkh_check(const ScalarFunction& f, const AnticommutatorPair& pair) {
    if (std::abs(f.eval(1.0) - 1.0) > 1e-10)
        throw SpecError("hkh_check: f(1) must equal 1");

    const HermitianMatrix lhs = pair.A + pair.B - abs_value(pair.A - pair.B);
    const HermitianMatrix diff = 2.0 * operator_mean(f, pair.A, pair.B) - lhs;

    CheckReport r;
    r.label = "hkh[" + f.name() + "]";
    r.lhs = 0.0;
    r.rhs = min_eigenvalue(diff);
    r.margin = r.rhs;
    r.tolerance = default_psd_tolerance(operator_norm(pair.A) + operator_norm(pair.B));
    r.passed = r.margin >= -r.tolerance;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

CheckReport theorem_os_check(const ScalarFunction& f, const HermitianMatrix& A,
                             const HermitianMatrix& B, double alpha) {
    const double alpha0 = std::max(alpha, 1.0 - alpha);
    const HermitianMatrix rhs_mat = weighted_mean(A, B, alpha) - alpha0 * abs_value(A - B);

    CheckReport r;
    std::ostringstream label;
    label << "theorem-os[" << f.name() << ",alpha=" << alpha << "]";
    r.label = label.str();
    r.tolerance = default_psd_tolerance(operator_norm(A) + operator_norm(B));

    const double rhs_min = min_eigenvalue(rhs_mat);
    if (rhs_min < -r.tolerance) {
        r.status = CheckStatus::PreconditionUnmet;
        r.passed = false;
        r.margin = rhs_min;
        r.rhs = rhs_min;
        return r;
    }

    const HermitianMatrix diff = rhs_mat - perspective(f, A, B);
    r.lhs = 0.0;
    r.rhs = min_eigenvalue(diff);
    r.margin = r.rhs;
    r.passed = r.margin >= -r.tolerance;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

CheckReport corollary_check(const ScalarFunction& f, const AnticommutatorPair& pair) {
    const HermitianMatrix diff =
        pair.A + pair.B - abs_value(pair.A - pair.B) - 2.0 * perspective(f, pair.A, pair.B);

    CheckReport r;
    r.label = "corollary[" + f.name() + "]";
    r.lhs = 0.0;
    r.rhs = min_eigenvalue(diff);
    r.margin = r.rhs;
    r.tolerance = default_psd_tolerance(operator_norm(pair.A) + operator_norm(pair.B));
    r.passed = r.margin >= -r.tolerance;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

CheckReport second_variable_report(const ScalarFunction& f, const HermitianMatrix& A,
                                   const HermitianMatrix& C) {
    CheckReport r;
    r.label = "second-variable[" + f.name() + "]";
    r.tolerance = default_psd_tolerance(operator_norm(A) + operator_norm(C));

    const double order_margin = min_eigenvalue(C - A);
    r.lhs = order_margin;
    if (order_margin < -r.tolerance) {
        r.status = CheckStatus::PreconditionUnmet;
        r.passed = false;
        r.label += ": A <= C does not hold";
        return r;
    }

    const HermitianMatrix eye = HermitianMatrix::identity(A.dim());
    const HermitianMatrix diff = perspective(f, eye, C) - perspective(f, eye, A);
    const double diff_min = min_eigenvalue(diff);

    // margin: how far P_f(I,C) - P_f(I,A) dips below zero
    r.rhs = -diff_min;
    r.margin = -diff_min;
    r.passed = r.margin > r.tolerance;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
    if (!r.passed) r.label += ": not a counterexample (difference is PSD)";
    r.witness.emplace_back("A", A);
    r.witness.emplace_back("C", C);
    return r;
}

CheckReport second_variable_counterexample() {
    const double eps = 1e-4;
    const HermitianMatrix A(2, {Complex(1.0 + eps, 0.0), Complex(1.0, 0.0), Complex(1.0, 0.0),
                                Complex(1.0 + eps, 0.0)});
    const HermitianMatrix C(2, {Complex(2.0 + eps, 0.0), Complex(1.0, 0.0), Complex(1.0, 0.0),
                                Complex(1.0 + eps, 0.0)});
    return second_variable_report(ScalarFunction::reciprocal(), A, C);
}

CheckReport rert_representation_check(const ScalarFunction& f_dec, const HermitianMatrix& A,
                                      const HermitianMatrix& B) {
    const DiscreteMeasureSpec* m = f_dec.measure();
    if (m == nullptr || f_dec.kind() != ScalarFunction::Kind::DecreasingMeasure)
        throw SpecError("rert_representation_check: needs a decreasing-measure function");

    const HermitianMatrix lhs = perspective(f_dec, A, B);

    const HermitianMatrix bab = congruence(B, inverse_pd(A));  // B A^{-1} B
    HermitianMatrix rhs = m->alpha * B;
    for (const auto& [lam, w] : m->atoms)
        rhs = rhs + (w * (lam + 1.0) / lam) * parallel_sum(lam * bab, B);

    double dev = 0.0;
    const HermitianMatrix diff = lhs - rhs;
    for (const auto& z : diff.entries()) dev = std::max(dev, std::abs(z));

    CheckReport r;
    r.label = "rert[" + f_dec.name() + "]";
    r.lhs = dev;
    r.rhs = 0.0;
    r.margin = -dev;
    r.tolerance = 1e-8 * (1.0 + operator_norm(lhs));
    r.passed = dev <= r.tolerance;
    r.status = r.passed ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

} // namespace psbound
