#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "wincs/spectrum.hpp"

namespace wincs {

enum class WindowKind {
    Rectangular,
    Triangular,
    Hamming,
    Hann,
    Blackman,
    Gaussian,
    Custom,
};

enum class Continuity {
    Discontinuous,
    ZerothOrder,
    FirstOrder,
};

// Peak-normalized symmetric taper.
struct Window {
    std::vector<double> coefficients;

    std::size_t length() const { return coefficients.size(); }
    void validate() const;
};

// Fraction-of-bins measure; `floored` marks the no-bin-above-threshold case
// where the log10(1/N) floor is reported instead.
struct NzeResult {
    double log10_fraction = 0.0;
    bool floored = false;
};

struct WindowMetrics {
    double ezc = 0.0;
    double wsc = 0.0;
    double nze = 0.0;
    Continuity continuity = Continuity::Discontinuous;
};

// Symmetric (non-periodic) window of `length` samples. `gaussian_sigma` is
// the Gaussian shape parameter as a fraction of the record duration and is
// ignored for the other kinds.
Window generate_window(WindowKind kind, std::size_t length, double gaussian_sigma = 0.2);

Window custom_window(std::vector<double> coefficients);

// log10 of the integral of the window over the first 1/20 of the normalized
// record, trapezoid rule on the leading samples.
double ezc(const Window& window);

// Window Scaling Coefficient: arithmetic mean of the coefficients.
double wsc(const Window& window);

// Synthesizes the tones, windows them, and reports log10 of the fraction of
// DFT bins whose magnitude exceeds peak + threshold_db.
NzeResult nze(const Window& window, const MultiToneSpec& tones, double threshold_db);

Continuity continuity_class(WindowKind kind);

// Table-style boundary-continuity flag: true iff the window goes to zero at
// the record edges.
bool boundary_continuous(WindowKind kind);

WindowMetrics window_metrics(const Window& window, WindowKind kind,
                             const MultiToneSpec& tones, double threshold_db);

std::string window_name(WindowKind kind);
WindowKind parse_window_kind(const std::string& name);

// The six named kinds in the order used by reports.
const std::vector<WindowKind>& named_window_kinds();

}  // namespace wincs
