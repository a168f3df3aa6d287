#include "psbound/random_models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace psbound {

namespace {

std::uint64_t splitmix_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

} // namespace

std::uint64_t CounterRng::next_u64() {
    ++counter_;
    return splitmix_finalize(key_ + counter_ * kGolden);
}

double CounterRng::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    // Box-Muller; u1 bounded away from 0
    const double u1 = std::max(next_uniform(), 0x1.0p-53);
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
}

Complex CounterRng::next_complex_normal() {
    const double re = next_normal();
    const double im = next_normal();
    return Complex(re, im);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix_finalize(seed ^ splitmix_finalize(index + kGolden));
}

const char* to_string(PairStrategy s) {
    switch (s) {
        case PairStrategy::Commuting: return "commuting";
        case PairStrategy::Perturbative: return "perturbative";
        case PairStrategy::Rejection: return "rejection";
    }
    return "?";
}

namespace {

std::vector<Complex> ginibre(int dim, CounterRng& rng) {
    std::vector<Complex> g(static_cast<size_t>(dim) * dim);
    for (auto& z : g) z = rng.next_complex_normal();
    return g;
}

// G G* (PSD by construction)
HermitianMatrix wishart(int dim, CounterRng& rng) {
    const std::vector<Complex> g = ginibre(dim, rng);
    std::vector<Complex> out(static_cast<size_t>(dim) * dim, Complex(0.0, 0.0));
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) {
            Complex s(0.0, 0.0);
            for (int k = 0; k < dim; ++k)
                s += g[static_cast<size_t>(i) * dim + k] *
                     std::conj(g[static_cast<size_t>(j) * dim + k]);
            out[static_cast<size_t>(i) * dim + j] = s;
            out[static_cast<size_t>(j) * dim + i] = std::conj(s);
        }
    return HermitianMatrix(dim, std::move(out));
}

} // namespace

HermitianMatrix random_hermitian(int dim, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<Complex> g = ginibre(dim, rng);
    return HermitianMatrix(dim, std::move(g));  // constructor symmetrizes
}

HermitianMatrix random_pd(int dim, std::uint64_t seed) {
    if (dim < 1) throw SpecError("random_pd: dim must be >= 1");
    CounterRng rng(seed);
    const HermitianMatrix w = wishart(dim, rng);
    const double ridge = 1e-6 * trace(w) / dim;
    return w + ridge * HermitianMatrix::identity(dim);
}

HermitianMatrix random_density(int dim, std::uint64_t seed) {
    const HermitianMatrix a = random_pd(dim, seed);
    return (1.0 / trace(a)) * a;
}

std::pair<HermitianMatrix, HermitianMatrix> random_loewner_ordered_pair(int dim,
                                                                        std::uint64_t seed) {
    const HermitianMatrix a = random_pd(dim, derive_seed(seed, 0));
    CounterRng rng(derive_seed(seed, 1));
    const HermitianMatrix e = wishart(dim, rng);
    return {a, a + e};
}

AnticommutatorSample random_anticommutator_pair(int dim, std::uint64_t seed,
                                                PairStrategy strategy,
                                                const SpectrumBounds& bounds) {
    AnticommutatorSample out;
    out.strategy = strategy;

    const auto validate = [&](const HermitianMatrix& A, const HermitianMatrix& B,
                              double& min_eig) {
        min_eig = min_eigenvalue(anticommutator(A, B));
        const double scale = (1.0 + operator_norm(A)) * (1.0 + operator_norm(B));
        return min_eig >= -1e-9 * scale;
    };

    switch (strategy) {
        case PairStrategy::Commuting: {
            const SpectralDecomposition basis = eigh(random_pd(dim, derive_seed(seed, 0)));
            CounterRng rng(derive_seed(seed, 1));
            std::vector<double> da(dim), db(dim);
            for (int i = 0; i < dim; ++i)
                da[i] = bounds.lo + (bounds.hi - bounds.lo) * rng.next_uniform();
            for (int i = 0; i < dim; ++i)
                db[i] = bounds.lo + (bounds.hi - bounds.lo) * rng.next_uniform();
            out.pair.A = basis.reconstruct(da);
            out.pair.B = basis.reconstruct(db);
            double m = 0.0;
            if (!validate(out.pair.A, out.pair.B, m))
                throw GenerationError("random_anticommutator_pair: commuting pair failed validation");
            out.pair.anticommutator_min_eig = m;
            return out;
        }
        case PairStrategy::Perturbative: {
            const HermitianMatrix a = random_pd(dim, derive_seed(seed, 0));
            CounterRng rng(derive_seed(seed, 1));
            const HermitianMatrix e = wishart(dim, rng);
            double eps = 0.1 * rng.next_uniform() * operator_norm(a) /
                         std::max(operator_norm(e), 1e-300);
            for (int attempt = 0; attempt < 60; ++attempt) {
                const HermitianMatrix b = a + eps * e;
                double m = 0.0;
                if (validate(a, b, m)) {
                    out.pair.A = a;
                    out.pair.B = b;
                    out.pair.anticommutator_min_eig = m;
                    out.rejections = attempt;
                    return out;
                }
                eps *= 0.5;
            }
            throw GenerationError(
                "random_anticommutator_pair: perturbation would not shrink into validity");
        }
        case PairStrategy::Rejection: {
            constexpr int kBudget = 10000;
            for (int attempt = 0; attempt < kBudget; ++attempt) {
                const HermitianMatrix a = random_pd(dim, derive_seed(seed, 2 * attempt));
                const HermitianMatrix b = random_pd(dim, derive_seed(seed, 2 * attempt + 1));
                const double m = min_eigenvalue(anticommutator(a, b));
                if (m >= 0.0) {
                    out.pair.A = a;
                    out.pair.B = b;
                    out.pair.anticommutator_min_eig = m;
                    out.rejections = attempt;
                    return out;
                }
            }
            std::ostringstream msg;
            msg << "random_anticommutator_pair: rejection budget (" << kBudget
                << ") exhausted at dim " << dim
                << "; try the commuting or perturbative strategy";
            throw GenerationError(msg.str());
        }
    }
    throw SpecError("random_anticommutator_pair: unknown strategy");
}

} // namespace psbound
