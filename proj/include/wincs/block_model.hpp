#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wincs/spectrum.hpp"

namespace wincs {

using BigInt = boost::multiprecision::cpp_int;

// (K, C)-sparse model parameters: K_S nonzeros arranged in exactly C
// separated contiguous blocks of an N_S-bin spectrum.
struct KCParams {
    std::size_t signal_length = 0;   // N_S
    std::size_t total_nonzeros = 0;  // K_S
    std::size_t block_count = 0;     // C

    void validate() const;
};

// Subspace count held as a natural log, with the exact integer attached at
// small sizes. Counts overflow fixed-width integers quickly.
struct LogCount {
    double ln_value = 0.0;
    std::optional<BigInt> exact_value;
};

// Ordered disjoint runs of nonzero bins, each separated by at least one
// zero bin.
struct BlockStructure {
    std::size_t total_length = 0;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;  // (start, length)

    std::size_t total_nonzeros() const;
    void validate() const;
};

struct BoundInputs {
    double ric = 0.5;               // delta in (0, 1)
    double ensemble_constant = 1.0; // c > 0
    double confidence_exponent = 0; // t >= 0

    void validate() const;
};

struct BlockExtraction {
    BlockStructure structure;
    bool empty = false;  // no bin survived the floor
};

// Per-C subspace counts and normalized probabilities for K_c components
// spread over 1..K_c groups.
struct DistributionProfile {
    std::vector<double> ln_counts;      // index C-1
    std::vector<double> probabilities;  // sums to 1
};

// ln C(n, k); exact for any size via lgamma.
double log_binomial(std::size_t n, std::size_t k);
BigInt exact_binomial(std::size_t n, std::size_t k);

// Number of supports admitted by the (K, C) model:
// C(N_S + 1 - K_S, C) * C(K_S - 1, C - 1).
LogCount subspace_count_kc(const KCParams& params);

struct StandardCount {
    LogCount count;                 // exact C(N_S, K_S) in log space
    double stirling_approx_ln = 0;  // ln((N_S e / K_S)^{K_S})
};
StandardCount subspace_count_standard(std::size_t signal_length, std::size_t nonzeros);

// Exhaustive 2^N enumeration of supports with exactly C runs totaling K
// ones. Independent oracle; refuses N > 20.
BigInt brute_force_count(const KCParams& params);

// Measurement count from the union-of-subspaces bound:
// ceil(2/(c delta) (ln(2m) + K ln(12/delta) + t)), evaluated in log space.
std::size_t sample_bound(const LogCount& count, std::size_t nonzeros, const BoundInputs& inputs);

// Unit-constant asymptotic trend K_S + C ln(N_S / C).
double sample_bound_asymptotic(std::size_t signal_length, std::size_t nonzeros,
                               std::size_t blocks);

// Probabilities of K_c equal-size-B components landing in C = 1..K_c
// separated groups, counts normalized per configuration.
DistributionProfile freq_distribution_profile(std::size_t signal_length,
                                              std::size_t component_count,
                                              std::size_t block_size);

// Placements of K_c identical separated size-B blocks: C(N_s + 1 - K_c B, K_c).
LogCount ultra_sparse_count(std::size_t signal_length, std::size_t components,
                            std::size_t block_size);

// Threshold at peak + noise_floor_db (strict), merge surviving adjacent bins
// into maximal runs. gap_merge > 0 additionally bridges sub-threshold gaps of
// at most that many bins.
BlockExtraction blocks_from_spectrum(const Spectrum& spectrum, double noise_floor_db,
                                     std::size_t gap_merge = 0);

// KCParams describing an extracted structure (blocks must be non-empty).
KCParams params_from_blocks(const BlockStructure& structure);

}  // namespace wincs
