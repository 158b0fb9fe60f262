#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "wincs/window.hpp"

namespace wincs {

// M x N matrix of i.i.d. N(0, 1/M) entries, deterministic per seed.
struct GaussianEnsemble {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::uint64_t seed = 0;
    Eigen::MatrixXd entries;
};

// Theta_FW = Psi * F * D_w with F the unitary DFT matrix and D_w the window
// diagonal. The assembled matrix is kept for repeated application.
struct MeasurementOperator {
    GaussianEnsemble ensemble;
    Window window;
    Eigen::MatrixXcd composition;

    std::size_t rows() const { return ensemble.rows; }
    std::size_t cols() const { return ensemble.cols; }
};

// Empirical min/max energy ratios over random sparse probes, with the
// windowed reference bounds (1 -+ delta_ref) * wsc alongside.
struct RipEstimate {
    std::size_t sparsity = 0;
    std::size_t trials = 0;
    double empirical_lower = 0.0;
    double empirical_upper = 0.0;
    double theoretical_lower = 0.0;
    double theoretical_upper = 0.0;
    double delta_ref = 0.0;

    double midpoint() const { return 0.5 * (empirical_lower + empirical_upper); }
};

Eigen::MatrixXcd unitary_dft_matrix(std::size_t n);

GaussianEnsemble sample_ensemble(std::size_t rows, std::size_t cols, std::uint64_t seed);

MeasurementOperator compose_windowed(const GaussianEnsemble& ensemble, const Window& window);

// Sequential route: Psi applied to the unitary DFT of the windowed signal.
// Agrees with composition * x to rounding error.
Eigen::VectorXcd apply_sequential(const MeasurementOperator& op, const Eigen::VectorXcd& x);

// Monte-Carlo mean of ||Psi D_w x||^2 over fresh ensembles. Converges to
// sum_i w_i^2 x_i^2 (the unitary DFT drops out of the energy).
double two_stability_energy(const MeasurementOperator& op, const Eigen::VectorXd& x,
                            std::size_t trials);

// Min/max of ||Theta_FW x||^2 over random k-sparse unit probes with uniform
// support and Gaussian amplitudes.
RipEstimate rip_empirical(const MeasurementOperator& op, std::size_t sparsity,
                          std::size_t trials, std::uint64_t seed, double delta_ref = 0.3);

std::pair<double, double> rip_reference_bounds(const Window& window, double delta_ref);

// Lower bound max(0, 1 - 2 (12/delta)^k exp(-c0(delta/2) n)) on the RIP
// success probability; default c0(e) = e^2/16 - e^3/48.
double rip_success_probability(double delta, std::size_t sparsity, std::size_t measurements,
                               double (*c0)(double) = nullptr);

}  // namespace wincs
