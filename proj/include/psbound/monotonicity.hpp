#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "psbound/hermitian.hpp"
#include "psbound/report.hpp"
#include "psbound/scalar_function.hpp"

namespace psbound {

/// Outcome of a matrix-monotonicity probe. A Violated conclusion certifies
/// non-monotonicity at the stated order and carries a witness that can be
/// re-checked independently; Consistent is evidence only, never proof.
struct MonotonicityVerdict {
    enum class Method { Loewner, Randomized };
    enum class Conclusion { Consistent, Violated };

    Method method = Method::Loewner;
    int order = 0;
    Conclusion conclusion = Conclusion::Consistent;
    double margin = 0.0;  // min eigenvalue of the test matrix
    int trials = 0;       // randomized: trials executed before stopping

    std::vector<double> witness_points;  // Loewner point set
    std::optional<std::pair<HermitianMatrix, HermitianMatrix>> witness_pair;
    std::optional<std::uint64_t> seed;

    bool violated() const { return conclusion == Conclusion::Violated; }
};

/// Loewner divided-difference matrix L_ij = (f(x_i) - f(x_j)) / (x_i - x_j)
/// for i != j; diagonal = central-difference derivative with h = 1e-6(1+|x|).
HermitianMatrix loewner_matrix(const ScalarFunction& f, const std::vector<double>& points);

/// PSD test of the Loewner matrix over the given strictly increasing points.
MonotonicityVerdict loewner_matrix_test(const ScalarFunction& f,
                                        const std::vector<double>& points, double tol);

/// Same with the default scale-relative PSD tolerance.
MonotonicityVerdict loewner_matrix_test(const ScalarFunction& f,
                                        const std::vector<double>& points);

/// Min eigenvalue of f(B) - f(A) (or f(A) - f(B) when decreasing): the margin
/// of the pair as an order-dim monotonicity witness. Negative means violated.
double monotone_pair_margin(const ScalarFunction& f, const HermitianMatrix& A,
                            const HermitianMatrix& B, bool decreasing);

/// Samples ordered pairs A <= B (B = A + R R*) with spectra placed inside the
/// domain of f and checks the monotonicity direction; stops at the first
/// witness. Per-trial randomness derives from (seed, trial index).
MonotonicityVerdict randomized_monotonicity_test(const ScalarFunction& f, int dim, int trials,
                                                 std::uint64_t seed, bool decreasing);

/// Log-spaced default point set over [1e-2, 1e2] clipped into the domain.
std::vector<double> default_loewner_points(int size, const Domain& dom);

/// Midpoint-convexity scan of c(t) = tr(A^t B^{1-t}) over an ascending grid
/// in (0,1): checks c((t_i+t_j)/2) <= (c(t_i)+c(t_j))/2 for every grid pair
/// whose midpoint is itself on the grid; reports the worst margin.
CheckReport convexity_scan(const HermitianMatrix& A, const HermitianMatrix& B,
                           const std::vector<double>& grid);

/// Uniform grid t_k = k/(n+1), k = 1..n (midpoint-closed for same-parity pairs).
std::vector<double> uniform_convexity_grid(int n);

} // namespace psbound
