#include "wincs/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wincs/rng.hpp"

namespace wincs {

namespace {

Eigen::VectorXcd windowed_unitary_spectrum(const Window& window,
                                           const std::vector<double>& signal) {
    const std::size_t n = signal.size();
    cvec windowed(n);
    for (std::size_t i = 0; i < n; ++i) windowed[i] = signal[i] * window.coefficients[i];
    const Spectrum spec = dft(windowed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::VectorXcd out(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k)
        out(static_cast<Eigen::Index>(k)) = spec.bins[k] * scale;
    return out;
}

// Least-squares refit of y on the support columns; falls back to ridge when
// the submatrix is rank-deficient.
Eigen::VectorXcd refit(const Eigen::MatrixXd& dictionary, const std::vector<std::size_t>& support,
                       const Eigen::VectorXcd& y, bool& regularized) {
    const Eigen::Index k = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd a(dictionary.rows(), k);
    for (Eigen::Index i = 0; i < k; ++i)
        a.col(i) = dictionary.col(static_cast<Eigen::Index>(support[static_cast<std::size_t>(i)]));
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < k) {
        regularized = true;
        Eigen::MatrixXd gram = a.transpose() * a;
        gram.diagonal().array() += 1e-10;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
        Eigen::VectorXd re = ldlt.solve(a.transpose() * y.real());
        Eigen::VectorXd im = ldlt.solve(a.transpose() * y.imag());
        return re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
    }
    Eigen::VectorXd re = qr.solve(y.real());
    Eigen::VectorXd im = qr.solve(y.imag());
    return re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
}

RecoveryResult greedy_recover(const SparseInstance& instance, std::size_t budget,
                              std::size_t block_length) {
    const std::size_t m = instance.rows();
    const std::size_t n = instance.cols();
    if (block_length < 1 || block_length > n)
        throw std::invalid_argument("recovery: block length must be in [1, N]");
    if (budget * block_length > m)
        throw std::invalid_argument("recovery: budget * block length must be <= M");

    RecoveryResult result;
    result.estimate = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
    Eigen::VectorXcd residual = instance.measurements;
    const double y_norm = instance.measurements.norm();
    result.residual_norm = y_norm;
    std::vector<bool> selected(n, false);
    std::vector<std::size_t> support;

    // A misaligned block pick cannot be revisited, so the loop may keep
    // selecting (up to budget * block_length picks) while the residual
    // persists; support growth stays capped at M for the refit.
    const std::size_t max_iterations = budget * block_length;
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        if (result.residual_norm <= 1e-12 * std::max(1.0, y_norm)) break;

        // per-column correlation energy against the residual
        Eigen::VectorXcd corr = instance.dictionary.transpose() * residual;
        std::vector<double> col_energy(n);
        for (std::size_t j = 0; j < n; ++j)
            col_energy[j] = std::norm(corr(static_cast<Eigen::Index>(j)));

        std::size_t best_start = n;
        double best_score = 0.0;
        for (std::size_t start = 0; start + block_length <= n; ++start) {
            std::size_t new_count = 0;
            double score = 0.0;
            for (std::size_t j = start; j < start + block_length; ++j) {
                score += col_energy[j];
                if (!selected[j]) ++new_count;
            }
            if (new_count == 0 || support.size() + new_count > m) continue;
            if (score > best_score) {
                best_score = score;
                best_start = start;
            }
        }
        if (best_start == n || best_score <= 0.0) break;

        for (std::size_t j = best_start; j < best_start + block_length; ++j) {
            if (!selected[j]) {
                selected[j] = true;
                support.push_back(j);
            }
        }
        std::sort(support.begin(), support.end());

        const Eigen::VectorXcd coeffs =
            refit(instance.dictionary, support, instance.measurements, result.regularized);
        result.estimate.setZero();
        for (std::size_t i = 0; i < support.size(); ++i)
            result.estimate(static_cast<Eigen::Index>(support[i])) =
                coeffs(static_cast<Eigen::Index>(i));
        residual = instance.measurements - instance.dictionary * result.estimate;
        result.residual_norm = residual.norm();
        result.residual_history.push_back(result.residual_norm);
        result.iterations = iter + 1;
    }

    result.support = std::move(support);
    if (instance.truth_spectrum) {
        const double denom = instance.truth_spectrum->squaredNorm();
        result.nmse = denom > 0.0
                          ? (result.estimate - *instance.truth_spectrum).squaredNorm() / denom
                          : result.estimate.squaredNorm();
    }
    return result;
}

}  // namespace

SparseInstance make_instance(const MeasurementOperator& op, const std::vector<double>& signal,
                             double noise_std, std::uint64_t noise_seed) {
    if (signal.size() != op.cols())
        throw std::invalid_argument("make_instance: signal length must equal operator cols");
    SparseInstance instance;
    instance.dictionary = op.ensemble.entries;
    instance.window = op.window;
    instance.noise_std = noise_std;
    Eigen::VectorXcd truth = windowed_unitary_spectrum(op.window, signal);
    instance.measurements = instance.dictionary * truth;
    if (noise_std > 0.0) {
        auto rng = trial_rng(noise_seed, 0);
        std::normal_distribution<double> gauss(0.0, noise_std / std::sqrt(2.0));
        for (Eigen::Index j = 0; j < instance.measurements.size(); ++j)
            instance.measurements(j) += cplx(gauss(rng), gauss(rng));
    }
    instance.truth_spectrum = std::move(truth);
    return instance;
}

RecoveryResult omp(const SparseInstance& instance, std::size_t sparsity_budget) {
    return greedy_recover(instance, sparsity_budget, 1);
}

RecoveryResult block_omp(const SparseInstance& instance, std::size_t block_budget,
                         std::size_t block_length) {
    return greedy_recover(instance, block_budget, block_length);
}

TimeReconstruction reconstruct_time(const Window& window,
                                    const Eigen::VectorXcd& spectrum_estimate) {
    window.validate();
    const std::size_t n = window.length();
    if (static_cast<std::size_t>(spectrum_estimate.size()) != n)
        throw std::invalid_argument("reconstruct_time: dimension mismatch");
    const double scale = std::sqrt(static_cast<double>(n));
    Spectrum spec;
    spec.bins.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        spec.bins[k] = spectrum_estimate(static_cast<Eigen::Index>(k)) * scale;
    const cvec windowed = idft(spec);

    TimeReconstruction out;
    out.samples.resize(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(window.coefficients[i]) < 1e-6) {
            out.zeroed_samples.push_back(i);
        } else {
            out.samples[i] = windowed[i].real() / window.coefficients[i];
        }
    }
    return out;
}

std::vector<SweepRow> measurement_sweep(const MultiToneSpec& spec, WindowKind window,
                                        double floor_db, const std::vector<std::size_t>& m_grid,
                                        std::size_t trials, std::uint64_t seed,
                                        bool use_block_omp) {
    spec.validate();
    if (trials < 20) throw std::invalid_argument("measurement_sweep: need at least 20 trials");
    for (std::size_t i = 1; i < m_grid.size(); ++i)
        if (m_grid[i] <= m_grid[i - 1])
            throw std::invalid_argument("measurement_sweep: m_grid must be ascending");
    if (m_grid.empty() || m_grid.back() > spec.grid.length)
        throw std::invalid_argument("measurement_sweep: m_grid must be nonempty with M <= N");

    const std::size_t n = spec.grid.length;
    const Window w = generate_window(window, n);

    // truth block structure comes from the noiseless windowed spectrum
    MultiToneSpec clean = spec;
    clean.noise_std = 0.0;
    const std::vector<double> clean_signal = synthesize(clean, seed);
    const Eigen::VectorXcd truth = windowed_unitary_spectrum(w, clean_signal);
    Spectrum truth_spec;
    truth_spec.bins.assign(truth.data(), truth.data() + truth.size());
    const BlockExtraction extraction = blocks_from_spectrum(truth_spec, floor_db);
    if (extraction.empty)
        throw std::invalid_argument("measurement_sweep: no spectrum bin above the floor");
    const std::size_t block_count = extraction.structure.blocks.size();
    std::size_t block_length = 0;
    for (const auto& [start, len] : extraction.structure.blocks)
        block_length = std::max(block_length, len);
    const std::size_t nonzeros = extraction.structure.total_nonzeros();

    // The model truth is the floored spectrum: bins below the noise floor are
    // treated as zero and their energy counts as noise, together with any
    // measurement noise. Success means landing within 3 dB of that floor.
    Eigen::VectorXcd truth_blocked = Eigen::VectorXcd::Zero(truth.size());
    for (const auto& [start, len] : extraction.structure.blocks)
        for (std::size_t k = start; k < start + len; ++k)
            truth_blocked(static_cast<Eigen::Index>(k)) = truth(static_cast<Eigen::Index>(k));
    const double signal_energy = truth_blocked.squaredNorm();
    double noise_energy = (truth - truth_blocked).squaredNorm();
    noise_energy += static_cast<double>(n) * spec.noise_std * spec.noise_std;
    const double success_nmse = std::max(1e-3, 2.0 * noise_energy / signal_energy);

    std::vector<SweepRow> rows;
    for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
        const std::size_t m = m_grid[mi];
        SweepRow row;
        row.measurements = m;
        row.trials = trials;
        for (std::size_t t = 0; t < trials; ++t) {
            std::uint64_t cell = seed;
            const std::uint64_t cell_seed =
                splitmix64(cell) ^ (mi * 0x9e3779b97f4a7c15ULL + t);
            const GaussianEnsemble ensemble = sample_ensemble(m, n, cell_seed);
            const std::vector<double> signal =
                spec.noise_std > 0.0 ? synthesize(spec, cell_seed + 1) : clean_signal;

            SparseInstance instance;
            instance.dictionary = ensemble.entries;
            instance.window = w;
            instance.truth_spectrum = truth_blocked;
            instance.truth_blocks = extraction.structure;
            instance.measurements = ensemble.entries * windowed_unitary_spectrum(w, signal);

            const std::size_t budget_cap = use_block_omp ? block_count : nonzeros;
            const std::size_t unit = use_block_omp ? block_length : 1;
            if (budget_cap * unit > m) continue;  // infeasible at this M: counted as failure

            const RecoveryResult result = use_block_omp
                                              ? block_omp(instance, block_count, block_length)
                                              : omp(instance, nonzeros);
            if (result.nmse && *result.nmse < success_nmse) ++row.successes;
        }
        row.success_rate = static_cast<double>(row.successes) / static_cast<double>(trials);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace wincs
