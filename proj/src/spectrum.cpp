#include "wincs/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wincs/rng.hpp"

namespace wincs {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void SamplingGrid::validate() const {
    if (sample_rate <= 0.0) throw std::invalid_argument("SamplingGrid: sample_rate must be > 0");
    if (length < 8) throw std::invalid_argument("SamplingGrid: length must be >= 8");
}

void MultiToneSpec::validate() const {
    grid.validate();
    if (tones.empty()) throw std::invalid_argument("MultiToneSpec: at least one tone required");
    double prev = -1.0;
    for (const auto& t : tones) {
        if (t.amplitude <= 0.0) throw std::invalid_argument("MultiToneSpec: amplitude must be > 0");
        if (t.frequency < 0.0 || t.frequency >= grid.sample_rate / 2.0)
            throw std::invalid_argument("MultiToneSpec: frequency must lie in [0, f_s/2)");
        if (t.frequency <= prev)
            throw std::invalid_argument("MultiToneSpec: tone frequencies must be strictly increasing");
        prev = t.frequency;
    }
    if (noise_std < 0.0) throw std::invalid_argument("MultiToneSpec: noise_std must be >= 0");
}

double Spectrum::peak_magnitude() const {
    double peak = 0.0;
    for (const auto& b : bins) peak = std::max(peak, std::abs(b));
    return peak;
}

std::vector<double> synthesize(const MultiToneSpec& spec, std::uint64_t seed) {
    spec.validate();
    const std::size_t n = spec.grid.length;
    std::vector<double> out(n, 0.0);
    for (const auto& tone : spec.tones) {
        const double omega = kTwoPi * tone.frequency / spec.grid.sample_rate;
        for (std::size_t i = 0; i < n; ++i)
            out[i] += tone.amplitude * std::cos(omega * static_cast<double>(i) + tone.phase);
    }
    if (spec.noise_std > 0.0) {
        auto rng = trial_rng(seed, 0);
        std::normal_distribution<double> gauss(0.0, spec.noise_std);
        for (auto& v : out) v += gauss(rng);
    }
    return out;
}

Spectrum dft(const cvec& signal) {
    const std::size_t n = signal.size();
    if (n == 0) throw std::invalid_argument("dft: empty signal");
    Spectrum spec;
    spec.bins.resize(n);
    const double step = -kTwoPi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            // angle reduced mod N before the trig call to hold precision at large k*n
            const double cycles = static_cast<double>((k * i) % n);
            acc += signal[i] * std::polar(1.0, step * cycles);
        }
        spec.bins[k] = acc;
    }
    return spec;
}

Spectrum dft(std::span<const double> signal) {
    cvec z(signal.begin(), signal.end());
    return dft(z);
}

cvec idft(const Spectrum& spectrum) {
    const std::size_t n = spectrum.bins.size();
    if (n == 0) throw std::invalid_argument("idft: empty spectrum");
    cvec out(n);
    const double step = kTwoPi / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double cycles = static_cast<double>((k * i) % n);
            acc += spectrum.bins[k] * std::polar(1.0, step * cycles);
        }
        out[i] = acc / static_cast<double>(n);
    }
    return out;
}

MismatchDelta mismatch_delta(double frequency, const SamplingGrid& grid) {
    grid.validate();
    if (frequency < 0.0 || frequency >= grid.sample_rate / 2.0)
        throw std::invalid_argument("mismatch_delta: frequency must lie in [0, f_s/2)");
    const double bins = frequency / grid.bin_width();
    // half-integer ties resolve to the upper bin with delta = -0.5
    const long nearest = static_cast<long>(std::floor(bins + 0.5));
    return MismatchDelta{nearest, bins - static_cast<double>(nearest)};
}

std::vector<double> leakage_magnitude(double amplitude, const MismatchDelta& delta,
                                      std::size_t length) {
    if (length < 8) throw std::invalid_argument("leakage_magnitude: length must be >= 8");
    const double n = static_cast<double>(length);
    std::vector<double> out(length);
    for (std::size_t k = 0; k < length; ++k) {
        double offset = delta.delta_bins -
                        (static_cast<double>(k) - static_cast<double>(delta.nearest_bin));
        // both sin terms are |.|-periodic in offset with period N
        offset -= n * std::round(offset / n);
        if (std::abs(offset) < 1e-12) {
            out[k] = amplitude * n;  // coherent sum at the removable singularity
        } else {
            out[k] = amplitude * std::abs(std::sin(std::numbers::pi * offset)) /
                     std::abs(std::sin(std::numbers::pi * offset / n));
        }
    }
    return out;
}

}  // namespace wincs
