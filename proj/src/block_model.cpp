#include "wincs/block_model.hpp"

#include <cmath>
#include <stdexcept>

namespace wincs {

void KCParams::validate() const {
    if (block_count < 1 || block_count > total_nonzeros)
        throw std::invalid_argument("KCParams: need 1 <= C <= K_S");
    if (total_nonzeros > signal_length)
        throw std::invalid_argument("KCParams: need K_S <= N_S");
    if (signal_length + 1 - total_nonzeros < block_count)
        throw std::invalid_argument("KCParams: not enough gaps to separate C blocks");
}

std::size_t BlockStructure::total_nonzeros() const {
    std::size_t sum = 0;
    for (const auto& [start, len] : blocks) sum += len;
    return sum;
}

void BlockStructure::validate() const {
    std::size_t prev_end = 0;
    bool first = true;
    for (const auto& [start, len] : blocks) {
        if (len == 0) throw std::invalid_argument("BlockStructure: zero-length block");
        if (!first && start < prev_end + 1)
            throw std::invalid_argument("BlockStructure: blocks must be separated by a zero bin");
        if (start + len > total_length)
            throw std::invalid_argument("BlockStructure: block exceeds total_length");
        prev_end = start + len;
        first = false;
    }
}

void BoundInputs::validate() const {
    if (ric <= 0.0 || ric >= 1.0) throw std::invalid_argument("BoundInputs: ric must be in (0, 1)");
    if (ensemble_constant <= 0.0)
        throw std::invalid_argument("BoundInputs: ensemble_constant must be > 0");
    if (confidence_exponent < 0.0)
        throw std::invalid_argument("BoundInputs: confidence_exponent must be >= 0");
}

double log_binomial(std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("log_binomial: k > n gives a zero count");
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

BigInt exact_binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result *= static_cast<unsigned long>(n - k + i);
        result /= static_cast<unsigned long>(i);
    }
    return result;
}

namespace {

constexpr std::size_t kExactLimit = 64;

LogCount make_count(double ln_value, std::optional<BigInt> exact) {
    return LogCount{ln_value, std::move(exact)};
}

}  // namespace

LogCount subspace_count_kc(const KCParams& params) {
    params.validate();
    const std::size_t n = params.signal_length;
    const std::size_t k = params.total_nonzeros;
    const std::size_t c = params.block_count;
    const double ln = log_binomial(n + 1 - k, c) + log_binomial(k - 1, c - 1);
    std::optional<BigInt> exact;
    if (n <= kExactLimit) exact = exact_binomial(n + 1 - k, c) * exact_binomial(k - 1, c - 1);
    return make_count(ln, std::move(exact));
}

StandardCount subspace_count_standard(std::size_t signal_length, std::size_t nonzeros) {
    if (nonzeros > signal_length)
        throw std::invalid_argument("subspace_count_standard: K_S must be <= N_S");
    StandardCount out;
    out.count.ln_value = log_binomial(signal_length, nonzeros);
    if (signal_length <= kExactLimit)
        out.count.exact_value = exact_binomial(signal_length, nonzeros);
    out.stirling_approx_ln =
        nonzeros == 0 ? 0.0
                      : static_cast<double>(nonzeros) *
                            (1.0 + std::log(static_cast<double>(signal_length) /
                                            static_cast<double>(nonzeros)));
    return out;
}

BigInt brute_force_count(const KCParams& params) {
    params.validate();
    const std::size_t n = params.signal_length;
    if (n > 20) throw std::invalid_argument("brute_force_count: refusing N_S > 20");
    BigInt count = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        std::size_t ones = 0, runs = 0;
        bool in_run = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1ULL << i)) {
                ++ones;
                if (!in_run) ++runs;
                in_run = true;
            } else {
                in_run = false;
            }
        }
        if (ones == params.total_nonzeros && runs == params.block_count) ++count;
    }
    return count;
}

std::size_t sample_bound(const LogCount& count, std::size_t nonzeros, const BoundInputs& inputs) {
    inputs.validate();
    const double delta = inputs.ric;
    const double rhs = 2.0 / (inputs.ensemble_constant * delta) *
                       (std::log(2.0) + count.ln_value +
                        static_cast<double>(nonzeros) * std::log(12.0 / delta) +
                        inputs.confidence_exponent);
    return static_cast<std::size_t>(std::ceil(rhs));
}

double sample_bound_asymptotic(std::size_t signal_length, std::size_t nonzeros,
                               std::size_t blocks) {
    if (blocks == 0 || blocks > nonzeros || nonzeros > signal_length)
        throw std::invalid_argument("sample_bound_asymptotic: need C <= K_S <= N_S");
    return static_cast<double>(nonzeros) +
           static_cast<double>(blocks) *
               std::log(static_cast<double>(signal_length) / static_cast<double>(blocks));
}

DistributionProfile freq_distribution_profile(std::size_t signal_length,
                                              std::size_t component_count,
                                              std::size_t block_size) {
    if (component_count == 0 || block_size == 0)
        throw std::invalid_argument("freq_distribution_profile: K_c and B must be >= 1");
    if (component_count * block_size > signal_length)
        throw std::invalid_argument("freq_distribution_profile: K_c * B must be <= N");

    const std::size_t total = component_count * block_size;  // sum of block sizes, fixed
    const double ln_kc_fact = std::lgamma(static_cast<double>(component_count) + 1.0);

    DistributionProfile out;
    out.ln_counts.resize(component_count);
    std::vector<double> weights(component_count, 0.0);
    double ln_max = -1e300;
    for (std::size_t c = 1; c <= component_count; ++c) {
        double ln;
        if (signal_length + 1 - total < c) {
            ln = -1e300;  // configuration cannot fit; count 0
        } else {
            ln = log_binomial(signal_length + 1 - total, c) +
                 log_binomial(component_count - 1, c - 1) + ln_kc_fact;
        }
        out.ln_counts[c - 1] = ln;
        ln_max = std::max(ln_max, ln);
    }
    double norm = 0.0;
    for (std::size_t c = 0; c < component_count; ++c) {
        weights[c] = std::exp(out.ln_counts[c] - ln_max);
        norm += weights[c];
    }
    out.probabilities.resize(component_count);
    for (std::size_t c = 0; c < component_count; ++c) out.probabilities[c] = weights[c] / norm;
    return out;
}

LogCount ultra_sparse_count(std::size_t signal_length, std::size_t components,
                            std::size_t block_size) {
    if (components == 0 || block_size == 0)
        throw std::invalid_argument("ultra_sparse_count: K_c and B_s must be >= 1");
    if (components * block_size > signal_length)
        throw std::invalid_argument("ultra_sparse_count: K_c * B_s must be <= N_s");
    const std::size_t slots = signal_length + 1 - components * block_size;
    if (slots < components)
        throw std::invalid_argument("ultra_sparse_count: blocks cannot fit separated");
    std::optional<BigInt> exact;
    if (signal_length <= kExactLimit) exact = exact_binomial(slots, components);
    return make_count(log_binomial(slots, components), std::move(exact));
}

BlockExtraction blocks_from_spectrum(const Spectrum& spectrum, double noise_floor_db,
                                     std::size_t gap_merge) {
    if (noise_floor_db >= 0.0)
        throw std::invalid_argument("blocks_from_spectrum: noise_floor_db must be < 0");
    const std::size_t n = spectrum.size();
    if (n == 0) throw std::invalid_argument("blocks_from_spectrum: empty spectrum");

    const double peak = spectrum.peak_magnitude();
    const double threshold = peak * std::pow(10.0, noise_floor_db / 20.0);

    std::vector<bool> keep(n, false);
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
        keep[k] = spectrum.magnitude(k) > threshold;
        any = any || keep[k];
    }

    BlockExtraction out;
    out.structure.total_length = n;
    if (!any) {
        out.empty = true;
        return out;
    }
    if (gap_merge > 0) {
        std::size_t last_kept = n;  // n means none yet
        for (std::size_t k = 0; k < n; ++k) {
            if (!keep[k]) continue;
            if (last_kept != n && k - last_kept - 1 <= gap_merge)
                for (std::size_t j = last_kept + 1; j < k; ++j) keep[j] = true;
            last_kept = k;
        }
    }
    std::size_t start = 0;
    bool in_run = false;
    for (std::size_t k = 0; k <= n; ++k) {
        const bool on = k < n && keep[k];
        if (on && !in_run) {
            start = k;
            in_run = true;
        } else if (!on && in_run) {
            out.structure.blocks.emplace_back(start, k - start);
            in_run = false;
        }
    }
    out.structure.validate();
    return out;
}

KCParams params_from_blocks(const BlockStructure& structure) {
    structure.validate();
    if (structure.blocks.empty())
        throw std::invalid_argument("params_from_blocks: empty block structure");
    KCParams params;
    params.signal_length = structure.total_length;
    params.total_nonzeros = structure.total_nonzeros();
    params.block_count = structure.blocks.size();
    params.validate();
    return params;
}

}  // namespace wincs
