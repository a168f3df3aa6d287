#pragma once

#include <cstdint>
#include <utility>

#include "psbound/hermitian.hpp"
#include "psbound/operator_geometry.hpp"

namespace psbound {

/// Counter-based 64-bit generator (splitmix64 finalizer over key + counter):
/// stateless in the counter, so trial i of a campaign can be reproduced in
/// isolation. Also provides Box-Muller normals.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(seed) {}

    std::uint64_t next_u64();
    double next_uniform();  // [0, 1)
    double next_normal();   // N(0, 1)
    Complex next_complex_normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

/// Deterministic per-trial seed: a 64-bit hash of (seed, index), so parallel
/// and serial campaign runs agree.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

enum class PairStrategy { Commuting, Perturbative, Rejection };

const char* to_string(PairStrategy s);

struct SpectrumBounds {
    double lo = 0.1;
    double hi = 10.0;
};

/// Hermitian matrix with independent complex standard normal entries
/// symmetrized; used as a generic test matrix.
HermitianMatrix random_hermitian(int dim, std::uint64_t seed);

/// G G* + 1e-6 tr(G G*)/dim * I for Ginibre G: positive definite.
HermitianMatrix random_pd(int dim, std::uint64_t seed);

/// random_pd normalized by its trace: PSD with trace one.
HermitianMatrix random_density(int dim, std::uint64_t seed);

/// (A, B) with B = A + R R*, so A <= B in the Loewner order.
std::pair<HermitianMatrix, HermitianMatrix> random_loewner_ordered_pair(int dim,
                                                                        std::uint64_t seed);

struct AnticommutatorSample {
    AnticommutatorPair pair;
    PairStrategy strategy = PairStrategy::Rejection;
    int rejections = 0;
};

/// Samples a PD pair with PSD anticommutator.
///   Commuting:    shared random eigenbasis, independent spectra in bounds.
///   Perturbative: B = A + eps R R* with eps <= 0.1 ||A||, halved on failure.
///   Rejection:    fresh PD pairs kept when AB + BA >= 0; budget 1e4 draws,
///                 GenerationError past the budget.
AnticommutatorSample random_anticommutator_pair(int dim, std::uint64_t seed,
                                                PairStrategy strategy,
                                                const SpectrumBounds& bounds = {});

} // namespace psbound
