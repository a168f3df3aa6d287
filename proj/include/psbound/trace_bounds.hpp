#pragma once

#include <utility>
#include <vector>

#include "psbound/hermitian.hpp"
#include "psbound/report.hpp"
#include "psbound/scalar_function.hpp"

namespace psbound {

/// Minimum of s -> tr(A^s B^{1-s}) over the open unit interval.
struct ChernoffResult {
    double value = 0.0;
    double argmin_s = 0.5;
    int grid_size = 0;
    bool refined = false;
};

/// tr(A+B) - tr|A-B| for PSD A, B of equal dimension.
double ps_lhs(const HermitianMatrix& A, const HermitianMatrix& B);

/// 2 tr(f(A) g(B)) with g the companion of f.
double ps_rhs(const ScalarFunction& f, const HermitianMatrix& A, const HermitianMatrix& B);

/// Trace inequality tr(A+B) - tr|A-B| <= 2 tr(f(A) g(B)); tolerance
/// 1e-8 * (1 + |lhs| + |rhs|). Propagated domain errors yield an
/// Inconclusive report, not a failure.
CheckReport ps_check(const ScalarFunction& f, const HermitianMatrix& A, const HermitianMatrix& B);

/// Three-matrix variant: tr(AX + XB) - tr(X^{1/2}|A-B|X^{1/2}) vs
/// 2 tr(f(A) X g(B)). The three-factor trace is complex in general; the
/// report compares against its real part. With X = I this reduces exactly
/// to ps_check.
CheckReport ps_three_matrix_check(const ScalarFunction& f, const HermitianMatrix& A,
                                  const HermitianMatrix& B, const HermitianMatrix& X);

/// The pair (tr(P A (g(B) - g(A))), tr(P A (f(A) - f(B)))) with P the
/// projection on the range of (B-A)_+. Both traces are real-valued for
/// Hermitian inputs; the imaginary residue is asserted below 1e-10 * scale.
std::pair<double, double> lemma_functionals(const ScalarFunction& f_dec,
                                            const ScalarFunction& g_mon,
                                            const HermitianMatrix& A, const HermitianMatrix& B);

/// tr(A^s B^{1-s}) for s in (0,1); 0^t = 0 for t > 0.
double chernoff_s(const HermitianMatrix& A, const HermitianMatrix& B, double s);

/// Minimizes chernoff_s over [1e-3, 1 - 1e-3]: 257-point uniform scan, then
/// golden-section refinement of the bracketing interval.
ChernoffResult chernoff_bound(const HermitianMatrix& A, const HermitianMatrix& B);

/// min over the catalog of tr(f(A) g(B)) together with the achieving f.
std::pair<double, ScalarFunction> family_bound(const std::vector<ScalarFunction>& catalog,
                                               const HermitianMatrix& A,
                                               const HermitianMatrix& B);

/// ||rho - sigma||_1 / 2 for density matrices (trace 1 within 1e-8).
double trace_distance(const HermitianMatrix& rho, const HermitianMatrix& sigma);

/// Verifies 1 - CH <= phi <= sqrt(1 - CH^2) with CH from chernoff_bound;
/// the reported margin is the smaller of the two inequality margins.
CheckReport sandwich_check(const HermitianMatrix& rho, const HermitianMatrix& sigma);

} // namespace psbound
