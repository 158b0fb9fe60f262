#include "wincs/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wincs/rng.hpp"

namespace wincs {

Eigen::MatrixXcd unitary_dft_matrix(std::size_t n) {
    Eigen::MatrixXcd f(n, n);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            f(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
                scale * std::polar(1.0, step * static_cast<double>((k * i) % n));
    return f;
}

GaussianEnsemble sample_ensemble(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    if (rows < 1 || rows > cols)
        throw std::invalid_argument("sample_ensemble: need 1 <= M <= N");
    GaussianEnsemble e{rows, cols, seed, Eigen::MatrixXd(rows, cols)};
    auto rng = trial_rng(seed, 0);
    std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(static_cast<double>(rows)));
    for (std::size_t j = 0; j < rows; ++j)
        for (std::size_t i = 0; i < cols; ++i)
            e.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = gauss(rng);
    return e;
}

MeasurementOperator compose_windowed(const GaussianEnsemble& ensemble, const Window& window) {
    window.validate();
    if (window.length() != ensemble.cols)
        throw std::invalid_argument("compose_windowed: window length must equal ensemble cols");
    const std::size_t n = ensemble.cols;
    Eigen::MatrixXcd fw = unitary_dft_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        fw.col(static_cast<Eigen::Index>(i)) *= window.coefficients[i];
    MeasurementOperator op{ensemble, window, {}};
    op.composition = ensemble.entries * fw;
    return op;
}

Eigen::VectorXcd apply_sequential(const MeasurementOperator& op, const Eigen::VectorXcd& x) {
    const std::size_t n = op.cols();
    if (static_cast<std::size_t>(x.size()) != n)
        throw std::invalid_argument("apply_sequential: dimension mismatch");
    cvec windowed(n);
    for (std::size_t i = 0; i < n; ++i)
        windowed[i] = x(static_cast<Eigen::Index>(i)) * op.window.coefficients[i];
    const Spectrum spec = dft(windowed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::VectorXcd transformed(n);
    for (std::size_t k = 0; k < n; ++k)
        transformed(static_cast<Eigen::Index>(k)) = spec.bins[k] * scale;
    return op.ensemble.entries * transformed;
}

double two_stability_energy(const MeasurementOperator& op, const Eigen::VectorXd& x,
                            std::size_t trials) {
    if (trials < 10000)
        throw std::invalid_argument("two_stability_energy: need at least 1e4 trials");
    const std::size_t m = op.rows();
    const std::size_t n = op.cols();
    if (static_cast<std::size_t>(x.size()) != n)
        throw std::invalid_argument("two_stability_energy: dimension mismatch");

    Eigen::VectorXd z(n);
    for (std::size_t i = 0; i < n; ++i)
        z(static_cast<Eigen::Index>(i)) =
            op.window.coefficients[i] * x(static_cast<Eigen::Index>(i));

    const double sd = 1.0 / std::sqrt(static_cast<double>(m));
    double sum = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = trial_rng(op.ensemble.seed, t + 1);
        std::normal_distribution<double> gauss(0.0, sd);
        double energy = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                dot += gauss(rng) * z(static_cast<Eigen::Index>(i));
            energy += dot * dot;
        }
        sum += energy;
    }
    return sum / static_cast<double>(trials);
}

RipEstimate rip_empirical(const MeasurementOperator& op, std::size_t sparsity,
                          std::size_t trials, std::uint64_t seed, double delta_ref) {
    if (sparsity < 1 || sparsity > op.rows())
        throw std::invalid_argument("rip_empirical: need 1 <= k <= M");
    if (trials < 1000) throw std::invalid_argument("rip_empirical: need at least 1e3 trials");

    const std::size_t n = op.cols();
    RipEstimate est;
    est.sparsity = sparsity;
    est.trials = trials;
    est.delta_ref = delta_ref;
    std::tie(est.theoretical_lower, est.theoretical_upper) =
        rip_reference_bounds(op.window, delta_ref);

    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    std::vector<std::size_t> support(sparsity);
    Eigen::VectorXcd amplitudes(static_cast<Eigen::Index>(sparsity));
    for (std::size_t t = 0; t < trials; ++t) {
        auto rng = trial_rng(seed, t);
        // uniform random k-subset via partial Fisher-Yates over indices
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        for (std::size_t i = 0; i < sparsity; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(pool[i], pool[pick(rng)]);
            support[i] = pool[i];
        }
        std::normal_distribution<double> gauss(0.0, 1.0);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < sparsity; ++i) {
            const double a = gauss(rng);
            amplitudes(static_cast<Eigen::Index>(i)) = a;
            norm2 += a * a;
        }
        const double inv_norm = 1.0 / std::sqrt(norm2);
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(op.rows()));
        for (std::size_t i = 0; i < sparsity; ++i)
            y += op.composition.col(static_cast<Eigen::Index>(support[i])) *
                 (amplitudes(static_cast<Eigen::Index>(i)) * inv_norm);
        const double ratio = y.squaredNorm();
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    est.empirical_lower = lo;
    est.empirical_upper = hi;
    return est;
}

std::pair<double, double> rip_reference_bounds(const Window& window, double delta_ref) {
    if (delta_ref <= 0.0 || delta_ref >= 1.0)
        throw std::invalid_argument("rip_reference_bounds: delta_ref must be in (0, 1)");
    const double center = wsc(window);
    return {(1.0 - delta_ref) * center, (1.0 + delta_ref) * center};
}

namespace {
double default_c0(double eps) { return eps * eps / 16.0 - eps * eps * eps / 48.0; }
}  // namespace

double rip_success_probability(double delta, std::size_t sparsity, std::size_t measurements,
                               double (*c0)(double)) {
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("rip_success_probability: delta must be in (0, 1)");
    if (sparsity < 1 || measurements < 1)
        throw std::invalid_argument("rip_success_probability: k and n must be >= 1");
    if (c0 == nullptr) c0 = default_c0;
    const double ln_fail = std::log(2.0) +
                           static_cast<double>(sparsity) * std::log(12.0 / delta) -
                           c0(delta / 2.0) * static_cast<double>(measurements);
    return std::max(0.0, 1.0 - std::exp(ln_fail));
}

}  // namespace wincs
