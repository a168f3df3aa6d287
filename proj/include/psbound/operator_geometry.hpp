#pragma once

#include "psbound/hermitian.hpp"
#include "psbound/report.hpp"
#include "psbound/scalar_function.hpp"

namespace psbound {

/// Pair of positive definite matrices whose anticommutator AB + BA is PSD
/// (at tolerance); the minimum anticommutator eigenvalue is recorded.
struct AnticommutatorPair {
    HermitianMatrix A = HermitianMatrix(1);
    HermitianMatrix B = HermitianMatrix(1);
    double anticommutator_min_eig = 0.0;
};

/// AB + BA, exactly Hermitian by construction.
HermitianMatrix anticommutator(const HermitianMatrix& A, const HermitianMatrix& B);

/// Inverse of a positive definite matrix via eigendecomposition. Rejects
/// singular or ill-conditioned input (condition number > 1e12) instead of
/// regularizing it.
HermitianMatrix inverse_pd(const HermitianMatrix& A);

/// Kubo-Ando style mean sigma_f(A, B) = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}.
HermitianMatrix operator_mean(const ScalarFunction& f, const HermitianMatrix& A,
                              const HermitianMatrix& B);

/// Noncommutative perspective P_f(A, B) = B^{1/2} f(B^{-1/2} A B^{-1/2}) B^{1/2}
/// (first argument in the numerator slot: P_{1/x}(I, A) = A^2).
HermitianMatrix perspective(const ScalarFunction& f, const HermitianMatrix& A,
                            const HermitianMatrix& B);

/// Parallel sum A : B = (A^{-1} + B^{-1})^{-1}.
HermitianMatrix parallel_sum(const HermitianMatrix& A, const HermitianMatrix& B);

/// Weighted arithmetic mean (1 - alpha) A + alpha B, alpha in [0, 1].
HermitianMatrix weighted_mean(const HermitianMatrix& A, const HermitianMatrix& B, double alpha);

/// Loewner inequality A + B - |A-B| <= 2 sigma_f(A, B) for strictly positive
/// monotone-kind f with f(1) = 1, on an anticommutator-positive pair.
/// margin = min eigenvalue of the difference.
CheckReport hkh_check(const ScalarFunction& f, const AnticommutatorPair& pair);

/// P_f(A, B) <= (1-alpha) A + alpha B - max(alpha, 1-alpha) |A-B| whenever the
/// right side is PSD; otherwise the report status is PreconditionUnmet.
CheckReport theorem_os_check(const ScalarFunction& f, const HermitianMatrix& A,
                             const HermitianMatrix& B, double alpha);

/// A + B - |A-B| >= 2 P_f(A, B) on an anticommutator-positive pair, for
/// decreasing-kind f with f(0) = 0.
CheckReport corollary_check(const ScalarFunction& f, const AnticommutatorPair& pair);

/// Checks whether (A, C) witnesses failure of second-variable monotonicity of
/// P_f: A <= C yet P_f(I, C) - P_f(I, A) has a negative eigenvalue. The
/// report passes when the non-inequality is confirmed; margin is how far the
/// bottom eigenvalue of the difference dips below zero.
CheckReport second_variable_report(const ScalarFunction& f, const HermitianMatrix& A,
                                   const HermitianMatrix& C);

/// The fixed pair A = [[1,1],[1,1]] + 1e-4 I, C = [[2,1],[1,1]] + 1e-4 I with
/// f = 1/x: confirms A <= C while P_f(I, A) is not <= P_f(I, C).
CheckReport second_variable_counterexample();

/// For a decreasing-measure f, compares P_f(A, B) against its parallel-sum
/// representation alpha B + sum_i w_i ((lambda_i+1)/lambda_i) ((lambda_i B A^{-1} B) : B).
/// margin is minus the largest entrywise deviation.
CheckReport rert_representation_check(const ScalarFunction& f_dec, const HermitianMatrix& A,
                                      const HermitianMatrix& B);

} // namespace psbound
