#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wincs/block_model.hpp"
#include "wincs/measurement.hpp"

namespace wincs {

// A measured instance y = Psi s (+ noise), where s is the windowed unitary
// spectrum of the time signal. Recovery estimates s against the Gaussian
// dictionary; the window only matters when mapping back to the time domain.
struct SparseInstance {
    Eigen::MatrixXd dictionary;  // Psi, M x N
    Window window;
    Eigen::VectorXcd measurements;  // length M
    std::optional<Eigen::VectorXcd> truth_spectrum;
    std::optional<BlockStructure> truth_blocks;
    double noise_std = 0.0;

    std::size_t rows() const { return static_cast<std::size_t>(dictionary.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(dictionary.cols()); }
};

// Builds measurements (and the truth spectrum) from a time signal through
// the windowed operator. Noise of std noise_std is added per complex
// measurement, seeded.
SparseInstance make_instance(const MeasurementOperator& op, const std::vector<double>& signal,
                             double noise_std = 0.0, std::uint64_t noise_seed = 0);

struct RecoveryResult {
    std::vector<std::size_t> support;  // selected spectrum bins, ascending
    Eigen::VectorXcd estimate;         // length N
    double residual_norm = 0.0;
    std::size_t iterations = 0;
    std::optional<double> nmse;
    bool regularized = false;               // rank-deficient refit fell back to ridge
    std::vector<double> residual_history;   // per completed iteration
};

// Greedy max-correlation recovery with per-iteration least-squares refit.
RecoveryResult omp(const SparseInstance& instance, std::size_t sparsity_budget);

// Greedy over sliding contiguous blocks of block_length bins, selected by
// aggregate correlation energy; block_length 1 coincides with omp. Picks
// continue past block_budget (up to block_budget * block_length) while the
// residual persists, so a misaligned early pick can be compensated.
RecoveryResult block_omp(const SparseInstance& instance, std::size_t block_budget,
                         std::size_t block_length);

// Original-signal reconstruction: invert the unitary transform, then divide
// by the window with a 1e-6 floor on |w_i|; floored samples are zeroed and
// reported.
struct TimeReconstruction {
    std::vector<double> samples;
    std::vector<std::size_t> zeroed_samples;
};
TimeReconstruction reconstruct_time(const Window& window, const Eigen::VectorXcd& spectrum_estimate);

struct SweepRow {
    std::size_t measurements = 0;
    std::size_t successes = 0;
    std::size_t trials = 0;
    double success_rate = 0.0;
};

// Success-rate-vs-M experiment: per (M, trial), a fresh ensemble measures the
// windowed signal and block recovery runs with the block budget taken from
// the noise-floored truth spectrum. Success means nmse < 1e-3 (noiseless) or
// within 3 dB of the noise-energy fraction (noisy). use_block_omp=false runs
// plain omp with the matching sparsity budget instead.
std::vector<SweepRow> measurement_sweep(const MultiToneSpec& spec, WindowKind window,
                                        double floor_db, const std::vector<std::size_t>& m_grid,
                                        std::size_t trials, std::uint64_t seed,
                                        bool use_block_omp = true);

}  // namespace wincs
