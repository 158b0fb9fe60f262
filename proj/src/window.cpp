#include "wincs/window.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wincs {

void Window::validate() const {
    const std::size_t n = coefficients.size();
    if (n < 4) throw std::invalid_argument("Window: length must be >= 4");
    double peak = 0.0;
    for (double c : coefficients) {
        if (c < 0.0 || c > 1.0 + 1e-12)
            throw std::invalid_argument("Window: coefficients must lie in [0, 1]");
        peak = std::max(peak, c);
    }
    if (std::abs(peak - 1.0) > 1e-12)
        throw std::invalid_argument("Window: coefficients must be peak-normalized");
    for (std::size_t i = 0; i < n / 2; ++i)
        if (std::abs(coefficients[i] - coefficients[n - 1 - i]) > 1e-12)
            throw std::invalid_argument("Window: coefficients must be symmetric");
}

Window generate_window(WindowKind kind, std::size_t length, double gaussian_sigma) {
    if (length < 4) throw std::invalid_argument("generate_window: length must be >= 4");
    if (kind == WindowKind::Custom)
        throw std::invalid_argument("generate_window: use custom_window for Custom kind");
    if (gaussian_sigma <= 0.0)
        throw std::invalid_argument("generate_window: gaussian_sigma must be > 0");

    const double span = static_cast<double>(length - 1);
    std::vector<double> w(length);
    for (std::size_t i = 0; i < length; ++i) {
        const double u = static_cast<double>(i) / span;  // normalized position in [0, 1]
        switch (kind) {
            case WindowKind::Rectangular:
                w[i] = 1.0;
                break;
            case WindowKind::Triangular:
                w[i] = 1.0 - std::abs(2.0 * u - 1.0);
                break;
            case WindowKind::Hamming:
                w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * u);
                break;
            case WindowKind::Hann:
                w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * u);
                break;
            case WindowKind::Blackman:
                w[i] = 0.42 - 0.5 * std::cos(2.0 * std::numbers::pi * u) +
                       0.08 * std::cos(4.0 * std::numbers::pi * u);
                break;
            case WindowKind::Gaussian: {
                const double t = (u - 0.5) / gaussian_sigma;
                w[i] = std::exp(-0.5 * t * t);
                break;
            }
            case WindowKind::Custom:
                break;
        }
    }
    // peak-normalize; even lengths straddle the analytic maximum
    const double peak = *std::max_element(w.begin(), w.end());
    for (auto& v : w) v = std::clamp(v / peak, 0.0, 1.0);
    // clean up symmetry to the last bit
    for (std::size_t i = 0; i < length / 2; ++i) {
        const double m = 0.5 * (w[i] + w[length - 1 - i]);
        w[i] = m;
        w[length - 1 - i] = m;
    }
    Window out{std::move(w)};
    out.validate();
    return out;
}

Window custom_window(std::vector<double> coefficients) {
    Window out{std::move(coefficients)};
    out.validate();
    return out;
}

double ezc(const Window& window) {
    window.validate();
    const std::size_t n = window.length();
    // first floor(N/20)+1 samples mapped uniformly onto [0, 0.05]
    const std::size_t m = std::max<std::size_t>(n / 20 + 1, 2);
    const double h = 0.05 / static_cast<double>(m - 1);
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i)
        integral += 0.5 * h * (window.coefficients[i] + window.coefficients[i + 1]);
    if (integral <= 0.0) throw std::runtime_error("ezc: nonpositive edge integral");
    return std::log10(integral);
}

double wsc(const Window& window) {
    window.validate();
    double sum = 0.0;
    for (double c : window.coefficients) sum += c;
    return sum / static_cast<double>(window.length());
}

NzeResult nze(const Window& window, const MultiToneSpec& tones, double threshold_db) {
    window.validate();
    tones.validate();
    if (threshold_db >= 0.0) throw std::invalid_argument("nze: threshold_db must be < 0");
    if (tones.grid.length != window.length())
        throw std::invalid_argument("nze: window length must match the sampling grid");

    const std::vector<double> signal = synthesize(tones, 0);
    cvec windowed(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i)
        windowed[i] = signal[i] * window.coefficients[i];
    const Spectrum spectrum = dft(windowed);

    const double peak = spectrum.peak_magnitude();
    const double threshold = peak * std::pow(10.0, threshold_db / 20.0);
    std::size_t above = 0;
    for (std::size_t k = 0; k < spectrum.size(); ++k)
        if (spectrum.magnitude(k) > threshold) ++above;

    const double n = static_cast<double>(spectrum.size());
    if (above == 0) return NzeResult{std::log10(1.0 / n), true};
    return NzeResult{std::log10(static_cast<double>(above) / n), false};
}

Continuity continuity_class(WindowKind kind) {
    switch (kind) {
        case WindowKind::Rectangular:
        case WindowKind::Hamming:
        case WindowKind::Gaussian:
            return Continuity::Discontinuous;
        case WindowKind::Triangular:
        case WindowKind::Hann:
            return Continuity::ZerothOrder;
        case WindowKind::Blackman:
            return Continuity::FirstOrder;
        case WindowKind::Custom:
            break;
    }
    throw std::invalid_argument("continuity_class: unsupported for Custom windows");
}

bool boundary_continuous(WindowKind kind) {
    return continuity_class(kind) != Continuity::Discontinuous;
}

WindowMetrics window_metrics(const Window& window, WindowKind kind,
                             const MultiToneSpec& tones, double threshold_db) {
    WindowMetrics m;
    m.ezc = ezc(window);
    m.wsc = wsc(window);
    m.nze = nze(window, tones, threshold_db).log10_fraction;
    m.continuity = continuity_class(kind);
    return m;
}

std::string window_name(WindowKind kind) {
    switch (kind) {
        case WindowKind::Rectangular: return "rectangular";
        case WindowKind::Triangular: return "triangular";
        case WindowKind::Hamming: return "hamming";
        case WindowKind::Hann: return "hann";
        case WindowKind::Blackman: return "blackman";
        case WindowKind::Gaussian: return "gaussian";
        case WindowKind::Custom: return "custom";
    }
    return "unknown";
}

WindowKind parse_window_kind(const std::string& name) {
    std::string s;
    for (char c : name) s.push_back(static_cast<char>(std::tolower(c)));
    if (s == "rectangular" || s == "rect" || s == "none") return WindowKind::Rectangular;
    if (s == "triangular" || s == "triangle" || s == "bartlett") return WindowKind::Triangular;
    if (s == "hamming") return WindowKind::Hamming;
    if (s == "hann" || s == "hanning") return WindowKind::Hann;
    if (s == "blackman") return WindowKind::Blackman;
    if (s == "gaussian" || s == "gauss") return WindowKind::Gaussian;
    throw std::invalid_argument("unknown window kind: " + name);
}

const std::vector<WindowKind>& named_window_kinds() {
    static const std::vector<WindowKind> kinds = {
        WindowKind::Rectangular, WindowKind::Triangular, WindowKind::Hamming,
        WindowKind::Hann,        WindowKind::Blackman,   WindowKind::Gaussian,
    };
    return kinds;
}

}  // namespace wincs
