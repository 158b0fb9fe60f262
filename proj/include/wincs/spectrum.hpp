#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace wincs {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

struct SamplingGrid {
    double sample_rate = 1.0;  // f_s, Hz
    std::size_t length = 0;    // N samples

    double bin_width() const { return sample_rate / static_cast<double>(length); }
    void validate() const;
};

struct ToneComponent {
    double amplitude = 1.0;  // linear units, > 0
    double frequency = 0.0;  // Hz, in [0, f_s/2)
    double phase = 0.0;      // radians
};

struct MultiToneSpec {
    SamplingGrid grid;
    std::vector<ToneComponent> tones;  // frequencies strictly increasing
    double noise_std = 0.0;            // additive white Gaussian, linear units

    void validate() const;
};

// Nearest DFT bin and signed fractional offset, delta in [-0.5, 0.5).
struct MismatchDelta {
    long nearest_bin = 0;
    double delta_bins = 0.0;
};

struct Spectrum {
    cvec bins;

    std::size_t size() const { return bins.size(); }
    double magnitude(std::size_t k) const { return std::abs(bins[k]); }
    double peak_magnitude() const;
};

// Sum of real cosine tones plus seeded Gaussian noise. Bitwise reproducible
// for a fixed seed.
std::vector<double> synthesize(const MultiToneSpec& spec, std::uint64_t seed);

// Unnormalized forward DFT, X[k] = sum_n x[n] exp(-i 2 pi k n / N).
// Direct evaluation; desk-scale lengths keep this cheap and trivially
// checkable against the definition.
Spectrum dft(const cvec& signal);
Spectrum dft(std::span<const double> signal);

// Inverse of dft(): x[n] = (1/N) sum_k X[k] exp(+i 2 pi k n / N).
cvec idft(const Spectrum& spectrum);

MismatchDelta mismatch_delta(double frequency, const SamplingGrid& grid);

// Magnitude of the length-N Dirichlet kernel centered on an off-grid tone:
// bin k carries A |sin(pi (delta - m))| / |sin(pi (delta - m) / N)| with
// m = k - nearest_bin, and the removable singularity evaluates to A*N.
std::vector<double> leakage_magnitude(double amplitude, const MismatchDelta& delta,
                                      std::size_t length);

}  // namespace wincs
