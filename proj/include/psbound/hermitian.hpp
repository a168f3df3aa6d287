#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "psbound/errors.hpp"

namespace psbound {

using Complex = std::complex<double>;

class ScalarFunction;

/// Dense complex square matrix with Hermitian symmetry enforced at
/// construction: the stored entries are (M + M*)/2 and the asymmetry of the
/// input is recorded. Immutable after construction.
class HermitianMatrix {
public:
    /// Zero matrix of the given dimension (dim >= 1).
    explicit HermitianMatrix(int dim);

    /// Row-major entries; symmetrized as (M + M*)/2.
    HermitianMatrix(int dim, std::vector<Complex> entries);

    static HermitianMatrix identity(int dim);
    static HermitianMatrix diagonal(const std::vector<double>& d);

    int dim() const noexcept { return dim_; }
    const Complex& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * dim_ + j]; }
    const std::vector<Complex>& entries() const noexcept { return e_; }

    /// Largest |M_ij - conj(M_ji)| observed in the constructor input.
    double asymmetry() const noexcept { return asymmetry_; }

private:
    int dim_;
    double asymmetry_ = 0.0;
    std::vector<Complex> e_;
};

/// Eigenvalues (ascending) with an orthonormal set of column eigenvectors.
struct SpectralDecomposition {
    int dim = 0;
    std::vector<double> eigenvalues;  // ascending
    std::vector<Complex> vectors;     // row-major; column k = k-th eigenvector

    Complex vec(int i, int k) const { return vectors[static_cast<size_t>(i) * dim + k]; }

    /// U diag(d) U* for a replacement diagonal d (e.g. a function of the
    /// eigenvalues). Exactly Hermitian by construction.
    HermitianMatrix reconstruct(const std::vector<double>& d) const;
};

struct PositivityVerdict {
    bool is_psd = false;
    double min_eigenvalue = 0.0;
    double tolerance_used = 0.0;
};

/// Cyclic complex Jacobi eigendecomposition. Converges when the off-diagonal
/// Frobenius mass drops below 1e-13 * ||A||_F; default sweep budget 64.
SpectralDecomposition eigh(const HermitianMatrix& A);
SpectralDecomposition eigh(const HermitianMatrix& A, int max_sweeps);

/// U diag(f(lambda_i)) U*. Eigenvalues slightly below the domain edge (within
/// 1e-12 * (1 + ||A||_op)) are clamped to the edge so PSD inputs with
/// rounding-level negative eigenvalues stay usable; anything further out
/// raises DomainError naming the offending eigenvalue.
HermitianMatrix apply_function(const HermitianMatrix& A, const ScalarFunction& f);

/// (A*A)^{1/2}: same eigenvectors, eigenvalues |lambda_i|.
HermitianMatrix abs_value(const HermitianMatrix& A);

/// Jordan decomposition (A_plus, A_minus): both PSD, A = A_plus - A_minus,
/// A_plus * A_minus = 0.
std::pair<HermitianMatrix, HermitianMatrix> jordan_parts(const HermitianMatrix& A);

/// Orthogonal projection onto the span of eigenvectors with eigenvalue above
/// the positivity cutoff 1e-12 * (1 + ||A||_op).
HermitianMatrix positive_part_projection(const HermitianMatrix& A);

/// Trace norm ||A||_1 = sum |lambda_i|.
double trace_norm(const HermitianMatrix& A);

/// Loewner order test: is B - A PSD at the given tolerance?
PositivityVerdict loewner_leq(const HermitianMatrix& A, const HermitianMatrix& B, double tol);

/// Same with the scale-relative default tolerance 1e-9 * (1 + ||B - A||_op).
PositivityVerdict loewner_leq(const HermitianMatrix& A, const HermitianMatrix& B);

/// PSD test of a single matrix at the given tolerance.
PositivityVerdict positivity(const HermitianMatrix& D, double tol);

/// PSD test with the default scale-relative tolerance.
PositivityVerdict positivity(const HermitianMatrix& D);

/// Kronecker product; dim = dimA * dimB, tr(A (x) B) = trA * trB.
HermitianMatrix kron(const HermitianMatrix& A, const HermitianMatrix& B);

HermitianMatrix operator+(const HermitianMatrix& A, const HermitianMatrix& B);
HermitianMatrix operator-(const HermitianMatrix& A, const HermitianMatrix& B);
HermitianMatrix operator*(double c, const HermitianMatrix& A);

double trace(const HermitianMatrix& A);

/// Real part of tr(M N), computed as sum_ij M_ij N_ji without forming the
/// product. Exact mathematically for a Hermitian pair.
double trace_product(const HermitianMatrix& M, const HermitianMatrix& N);

/// tr(P Q R) for three Hermitian factors; complex in general.
Complex trace_product3(const HermitianMatrix& P, const HermitianMatrix& Q,
                       const HermitianMatrix& R);

/// S X S for Hermitian S and X (result Hermitian).
HermitianMatrix congruence(const HermitianMatrix& S, const HermitianMatrix& X);

double frobenius_norm(const HermitianMatrix& A);
double operator_norm(const HermitianMatrix& A);
double min_eigenvalue(const HermitianMatrix& A);

/// Default PSD tolerance 1e-9 * (1 + op_norm).
double default_psd_tolerance(double op_norm);

} // namespace psbound
