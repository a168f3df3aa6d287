#include "psbound/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "psbound/scalar_function.hpp"

namespace psbound {

namespace {

size_t idx(int n, int i, int j) { return static_cast<size_t>(i) * n + j; }

double off_diagonal_norm(int n, const std::vector<Complex>& m) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += std::norm(m[idx(n, i, j)]);
    return std::sqrt(s);
}

double frobenius(int n, const std::vector<Complex>& m) {
    double s = 0.0;
    for (const auto& z : m) s += std::norm(z);
    (void)n;
    return std::sqrt(s);
}

// One complex Jacobi rotation annihilating m[p][q] (p < q). J differs from
// the identity by J[p][p] = J[q][q] = c, J[q][p] = s, J[p][q] = -conj(s);
// M <- J* M J and V <- V J.
void jacobi_rotate(int n, std::vector<Complex>& m, std::vector<Complex>& v, int p, int q) {
    const Complex beta = m[idx(n, p, q)];
    const double abs_b = std::abs(beta);
    if (abs_b == 0.0) return;

    const double alpha = m[idx(n, p, p)].real();
    const double gamma = m[idx(n, q, q)].real();
    const Complex phase = beta / abs_b;

    const double tau = (gamma - alpha) / (2.0 * abs_b);
    const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                  : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const Complex s = (t * c) * std::conj(phase);

    // columns (right-multiply by J)
    for (int k = 0; k < n; ++k) {
        const Complex mp = m[idx(n, k, p)];
        const Complex mq = m[idx(n, k, q)];
        m[idx(n, k, p)] = mp * c + mq * s;
        m[idx(n, k, q)] = -mp * std::conj(s) + mq * c;
    }
    // rows (left-multiply by J*)
    for (int k = 0; k < n; ++k) {
        const Complex mp = m[idx(n, p, k)];
        const Complex mq = m[idx(n, q, k)];
        m[idx(n, p, k)] = c * mp + std::conj(s) * mq;
        m[idx(n, q, k)] = -s * mp + c * mq;
    }
    // hygiene: the rotated block is diagonal and real by construction
    m[idx(n, p, q)] = Complex(0.0, 0.0);
    m[idx(n, q, p)] = Complex(0.0, 0.0);
    m[idx(n, p, p)] = Complex(m[idx(n, p, p)].real(), 0.0);
    m[idx(n, q, q)] = Complex(m[idx(n, q, q)].real(), 0.0);

    for (int k = 0; k < n; ++k) {
        const Complex vp = v[idx(n, k, p)];
        const Complex vq = v[idx(n, k, q)];
        v[idx(n, k, p)] = vp * c + vq * s;
        v[idx(n, k, q)] = -vp * std::conj(s) + vq * c;
    }
}

std::vector<Complex> raw_matmul(int n, const std::vector<Complex>& a,
                                const std::vector<Complex>& b) {
    std::vector<Complex> r(static_cast<size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex aik = a[idx(n, i, k)];
            if (aik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) r[idx(n, i, j)] += aik * b[idx(n, k, j)];
        }
    return r;
}

} // namespace

HermitianMatrix::HermitianMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw SpecError("HermitianMatrix: dim must be >= 1");
    e_.assign(static_cast<size_t>(dim) * dim, Complex(0.0, 0.0));
}

HermitianMatrix::HermitianMatrix(int dim, std::vector<Complex> entries) : dim_(dim) {
    if (dim < 1) throw SpecError("HermitianMatrix: dim must be >= 1");
    if (entries.size() != static_cast<size_t>(dim) * dim)
        throw DimensionError("HermitianMatrix: entry count does not match dim*dim");
    e_ = std::move(entries);
    double worst = 0.0;
    for (int i = 0; i < dim; ++i) {
        e_[idx(dim, i, i)] = Complex(e_[idx(dim, i, i)].real(), 0.0);
        for (int j = i + 1; j < dim; ++j) {
            const Complex a = e_[idx(dim, i, j)];
            const Complex b = e_[idx(dim, j, i)];
            worst = std::max(worst, std::abs(a - std::conj(b)));
            const Complex sym = 0.5 * (a + std::conj(b));
            e_[idx(dim, i, j)] = sym;
            e_[idx(dim, j, i)] = std::conj(sym);
        }
    }
    asymmetry_ = worst;
}

HermitianMatrix HermitianMatrix::identity(int dim) {
    HermitianMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.e_[idx(dim, i, i)] = Complex(1.0, 0.0);
    return m;
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
    HermitianMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim_; ++i) m.e_[idx(m.dim_, i, i)] = Complex(d[i], 0.0);
    return m;
}

HermitianMatrix SpectralDecomposition::reconstruct(const std::vector<double>& d) const {
    const int n = dim;
    std::vector<Complex> out(static_cast<size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Complex sum(0.0, 0.0);
            for (int k = 0; k < n; ++k) sum += vec(i, k) * d[k] * std::conj(vec(j, k));
            if (i == j) sum = Complex(sum.real(), 0.0);
            out[idx(n, i, j)] = sum;
            out[idx(n, j, i)] = std::conj(sum);
        }
    }
    return HermitianMatrix(n, std::move(out));
}

SpectralDecomposition eigh(const HermitianMatrix& A) { return eigh(A, 64); }

SpectralDecomposition eigh(const HermitianMatrix& A, int max_sweeps) {
    const int n = A.dim();
    std::vector<Complex> m = A.entries();
    std::vector<Complex> v(static_cast<size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) v[idx(n, i, i)] = Complex(1.0, 0.0);

    const double threshold = 1e-13 * frobenius(n, m);
    const double skip = threshold / (2.0 * n);

    double off = off_diagonal_norm(n, m);
    int sweep = 0;
    while (off > threshold && sweep < max_sweeps) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(m[idx(n, p, q)]) > skip) jacobi_rotate(n, m, v, p, q);
        ++sweep;
        off = off_diagonal_norm(n, m);
    }
    if (off > threshold) {
        std::ostringstream msg;
        msg << "eigh: Jacobi sweeps exhausted (" << max_sweeps
            << "), off-diagonal residual " << off;
        throw ConvergenceError(msg.str(), off);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return m[idx(n, a, a)].real() < m[idx(n, b, b)].real(); });

    SpectralDecomposition d;
    d.dim = n;
    d.eigenvalues.resize(n);
    d.vectors.assign(static_cast<size_t>(n) * n, Complex(0.0, 0.0));
    for (int k = 0; k < n; ++k) {
        d.eigenvalues[k] = m[idx(n, order[k], order[k])].real();
        for (int i = 0; i < n; ++i) d.vectors[idx(n, i, k)] = v[idx(n, i, order[k])];
    }
    return d;
}

HermitianMatrix apply_function(const HermitianMatrix& A, const ScalarFunction& f) {
    const SpectralDecomposition d = eigh(A);
    const double op = std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
    const double clamp_band = 1e-12 * (1.0 + op);
    const Domain dom = f.domain();

    std::vector<double> mapped(d.eigenvalues.size());
    for (size_t k = 0; k < d.eigenvalues.size(); ++k) {
        double x = d.eigenvalues[k];
        if (!dom.lo_open && x < dom.lo && x >= dom.lo - clamp_band) x = dom.lo;
        if (!dom.hi_open && x > dom.hi && x <= dom.hi + clamp_band) x = dom.hi;
        try {
            mapped[k] = f.eval(x);
        } catch (const DomainError&) {
            std::ostringstream msg;
            msg << "apply_function: eigenvalue " << d.eigenvalues[k] << " outside domain of "
                << f.name();
            throw DomainError(msg.str());
        }
    }
    return d.reconstruct(mapped);
}

HermitianMatrix abs_value(const HermitianMatrix& A) {
    const SpectralDecomposition d = eigh(A);
    std::vector<double> m(d.eigenvalues.size());
    for (size_t k = 0; k < m.size(); ++k) m[k] = std::abs(d.eigenvalues[k]);
    return d.reconstruct(m);
}

std::pair<HermitianMatrix, HermitianMatrix> jordan_parts(const HermitianMatrix& A) {
    const SpectralDecomposition d = eigh(A);
    std::vector<double> plus(d.eigenvalues.size()), minus(d.eigenvalues.size());
    for (size_t k = 0; k < plus.size(); ++k) {
        plus[k] = std::max(d.eigenvalues[k], 0.0);
        minus[k] = std::max(-d.eigenvalues[k], 0.0);
    }
    return {d.reconstruct(plus), d.reconstruct(minus)};
}

HermitianMatrix positive_part_projection(const HermitianMatrix& A) {
    const SpectralDecomposition d = eigh(A);
    const double op = std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
    const double cutoff = 1e-12 * (1.0 + op);
    std::vector<double> ind(d.eigenvalues.size());
    for (size_t k = 0; k < ind.size(); ++k) ind[k] = d.eigenvalues[k] > cutoff ? 1.0 : 0.0;
    return d.reconstruct(ind);
}

double trace_norm(const HermitianMatrix& A) {
    const SpectralDecomposition d = eigh(A);
    double s = 0.0;
    for (double x : d.eigenvalues) s += std::abs(x);
    return s;
}

PositivityVerdict positivity(const HermitianMatrix& D, double tol) {
    const SpectralDecomposition d = eigh(D);
    PositivityVerdict v;
    v.min_eigenvalue = d.eigenvalues.front();
    v.tolerance_used = tol;
    v.is_psd = v.min_eigenvalue >= -tol;
    return v;
}

PositivityVerdict positivity(const HermitianMatrix& D) {
    const SpectralDecomposition d = eigh(D);
    const double op = std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
    PositivityVerdict v;
    v.min_eigenvalue = d.eigenvalues.front();
    v.tolerance_used = default_psd_tolerance(op);
    v.is_psd = v.min_eigenvalue >= -v.tolerance_used;
    return v;
}

PositivityVerdict loewner_leq(const HermitianMatrix& A, const HermitianMatrix& B, double tol) {
    if (A.dim() != B.dim()) throw DimensionError("loewner_leq: dimension mismatch");
    return positivity(B - A, tol);
}

PositivityVerdict loewner_leq(const HermitianMatrix& A, const HermitianMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionError("loewner_leq: dimension mismatch");
    return positivity(B - A);
}

HermitianMatrix kron(const HermitianMatrix& A, const HermitianMatrix& B) {
    const int na = A.dim(), nb = B.dim(), n = na * nb;
    std::vector<Complex> out(static_cast<size_t>(n) * n);
    for (int i1 = 0; i1 < na; ++i1)
        for (int i2 = 0; i2 < nb; ++i2)
            for (int j1 = 0; j1 < na; ++j1)
                for (int j2 = 0; j2 < nb; ++j2)
                    out[idx(n, i1 * nb + i2, j1 * nb + j2)] = A(i1, j1) * B(i2, j2);
    return HermitianMatrix(n, std::move(out));
}

HermitianMatrix operator+(const HermitianMatrix& A, const HermitianMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionError("operator+: dimension mismatch");
    std::vector<Complex> out(A.entries());
    for (size_t i = 0; i < out.size(); ++i) out[i] += B.entries()[i];
    return HermitianMatrix(A.dim(), std::move(out));
}

HermitianMatrix operator-(const HermitianMatrix& A, const HermitianMatrix& B) {
    if (A.dim() != B.dim()) throw DimensionError("operator-: dimension mismatch");
    std::vector<Complex> out(A.entries());
    for (size_t i = 0; i < out.size(); ++i) out[i] -= B.entries()[i];
    return HermitianMatrix(A.dim(), std::move(out));
}

HermitianMatrix operator*(double c, const HermitianMatrix& A) {
    std::vector<Complex> out(A.entries());
    for (auto& z : out) z *= c;
    return HermitianMatrix(A.dim(), std::move(out));
}

double trace(const HermitianMatrix& A) {
    double s = 0.0;
    for (int i = 0; i < A.dim(); ++i) s += A(i, i).real();
    return s;
}

double trace_product(const HermitianMatrix& M, const HermitianMatrix& N) {
    if (M.dim() != N.dim()) throw DimensionError("trace_product: dimension mismatch");
    const int n = M.dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += (M(i, j) * N(j, i)).real();
    return s;
}

Complex trace_product3(const HermitianMatrix& P, const HermitianMatrix& Q,
                       const HermitianMatrix& R) {
    if (P.dim() != Q.dim() || Q.dim() != R.dim())
        throw DimensionError("trace_product3: dimension mismatch");
    const int n = P.dim();
    const std::vector<Complex> pq = raw_matmul(n, P.entries(), Q.entries());
    Complex s(0.0, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += pq[idx(n, i, j)] * R(j, i);
    return s;
}

HermitianMatrix congruence(const HermitianMatrix& S, const HermitianMatrix& X) {
    if (S.dim() != X.dim()) throw DimensionError("congruence: dimension mismatch");
    const int n = S.dim();
    const std::vector<Complex> sx = raw_matmul(n, S.entries(), X.entries());
    std::vector<Complex> sxs = raw_matmul(n, sx, S.entries());
    return HermitianMatrix(n, std::move(sxs));
}

double frobenius_norm(const HermitianMatrix& A) { return frobenius(A.dim(), A.entries()); }

double operator_norm(const HermitianMatrix& A) {
    const SpectralDecomposition d = eigh(A);
    return std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
}

double min_eigenvalue(const HermitianMatrix& A) { return eigh(A).eigenvalues.front(); }

double default_psd_tolerance(double op_norm) { return 1e-9 * (1.0 + op_norm); }

} // namespace psbound
