// wincs: windowed compressed spectrum sensing experiment runner.
//
// Subcommands emit machine-readable tables (CSV or JSON) plus optional SVG
// plots. Every output embeds the run configuration and seed, so re-running
// with the echoed flags reproduces the file.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wincs/block_model.hpp"
#include "wincs/measurement.hpp"
#include "wincs/recovery.hpp"
#include "wincs/svg_plot.hpp"
#include "wincs/table_io.hpp"

namespace {

using namespace wincs;

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitIoFailure = 3;

struct CommonOpts {
    std::size_t n = 1024;
    std::size_t m = 256;
    std::size_t k = 16;
    std::size_t trials = 2000;
    std::uint64_t seed = 1;
    double floor_db = -50.0;
    double threshold_db = -60.0;
    std::string out;
    std::string format = "csv";
    bool plot = false;
    std::string windows;         // comma-separated subset; empty = all six
    std::vector<double> tones;   // tone positions in bins
};

std::vector<WindowKind> selected_windows(const std::string& spec) {
    if (spec.empty()) return named_window_kinds();
    std::vector<WindowKind> kinds;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) kinds.push_back(parse_window_kind(item));
    }
    if (kinds.empty()) throw std::invalid_argument("no window kinds selected");
    return kinds;
}

MultiToneSpec tone_spec(std::size_t n, const std::vector<double>& bins, double noise_std = 0.0) {
    MultiToneSpec spec;
    spec.grid = SamplingGrid{static_cast<double>(n), n};  // 1 Hz bins
    for (double b : bins) spec.tones.push_back(ToneComponent{1.0, b, 0.0});
    spec.noise_std = noise_std;
    return spec;
}

std::string out_path(const CommonOpts& opts, const std::string& stem) {
    if (!opts.out.empty()) return opts.out;
    return stem + "." + opts.format;
}

std::string plot_path(const std::string& table_path, const std::string& suffix) {
    const auto dot = table_path.rfind('.');
    const std::string stem = dot == std::string::npos ? table_path : table_path.substr(0, dot);
    return stem + suffix + ".svg";
}

ConfigEcho base_config(const std::string& command, const CommonOpts& opts) {
    ConfigEcho cfg;
    cfg.emplace_back("command", command);
    cfg.emplace_back("seed", std::to_string(opts.seed));
    return cfg;
}

int cmd_windows(const CommonOpts& opts) {
    const std::size_t n = opts.n;
    const double tone_bin = static_cast<double>(n) / 8.0 + 0.5;
    const MultiToneSpec tones = tone_spec(n, {tone_bin});

    Table table;
    table.columns = {"window", "ezc", "wsc", "nze", "continuity", "boundary_continuous"};
    SvgPlot shape_plot("Window shapes", "normalized position", "coefficient");
    SvgPlot spectrum_plot("Window log-magnitude spectra", "bin", "dB");

    for (WindowKind kind : selected_windows(opts.windows)) {
        const Window w = generate_window(kind, n);
        const WindowMetrics metrics = window_metrics(w, kind, tones, opts.threshold_db);
        const char* cont = metrics.continuity == Continuity::Discontinuous ? "discontinuous"
                           : metrics.continuity == Continuity::ZerothOrder ? "zeroth-order"
                                                                           : "first-order";
        table.rows.push_back({window_name(kind), format_number(metrics.ezc),
                              format_number(metrics.wsc), format_number(metrics.nze), cont,
                              boundary_continuous(kind) ? "true" : "false"});
        if (opts.plot) {
            std::vector<double> xs(n), ys(n);
            for (std::size_t i = 0; i < n; ++i) {
                xs[i] = static_cast<double>(i) / static_cast<double>(n - 1);
                ys[i] = w.coefficients[i];
            }
            shape_plot.add_series(window_name(kind), xs, ys);

            const Spectrum spec = dft(std::span<const double>(w.coefficients));
            const double peak = spec.peak_magnitude();
            const std::size_t half = n / 2;
            std::vector<double> bx(half), by(half);
            for (std::size_t kbin = 0; kbin < half; ++kbin) {
                bx[kbin] = static_cast<double>(kbin);
                by[kbin] = 20.0 * std::log10(std::max(spec.magnitude(kbin) / peak, 1e-9));
            }
            spectrum_plot.add_series(window_name(kind), bx, by);
        }
    }

    ConfigEcho cfg = base_config("windows", opts);
    cfg.emplace_back("n", std::to_string(n));
    cfg.emplace_back("tone_bin", format_number(tone_bin));
    cfg.emplace_back("threshold_db", format_number(opts.threshold_db));
    cfg.emplace_back("windows", opts.windows.empty() ? "all" : opts.windows);
    cfg.emplace_back("format", opts.format);

    const std::string path = out_path(opts, "windows");
    write_table_file(path, opts.format, table, cfg, opts.seed);
    if (opts.plot) {
        shape_plot.write(plot_path(path, "_shape"));
        spectrum_plot.write(plot_path(path, "_spectrum"));
    }
    return kExitOk;
}

int cmd_rip(const CommonOpts& opts) {
    if (opts.m > opts.n) throw std::invalid_argument("rip: need M <= N");
    if (opts.k > opts.m) throw std::invalid_argument("rip: need k <= M");

    const GaussianEnsemble ensemble = sample_ensemble(opts.m, opts.n, opts.seed);
    Table table;
    table.columns = {"window", "wsc",   "ulref",    "ubref",  "ulexp",
                     "ubexp",  "midpoint", "mean_w_sq"};
    for (WindowKind kind : selected_windows(opts.windows)) {
        const Window w = generate_window(kind, opts.n);
        const MeasurementOperator op = compose_windowed(ensemble, w);
        const RipEstimate est = rip_empirical(op, opts.k, opts.trials, opts.seed + 1);
        double mean_sq = 0.0;
        for (double c : w.coefficients) mean_sq += c * c;
        mean_sq /= static_cast<double>(w.length());
        table.rows.push_back({window_name(kind), format_number(wsc(w)),
                              format_number(est.theoretical_lower),
                              format_number(est.theoretical_upper),
                              format_number(est.empirical_lower),
                              format_number(est.empirical_upper),
                              format_number(est.midpoint()), format_number(mean_sq)});
    }

    ConfigEcho cfg = base_config("rip", opts);
    cfg.emplace_back("n", std::to_string(opts.n));
    cfg.emplace_back("m", std::to_string(opts.m));
    cfg.emplace_back("k", std::to_string(opts.k));
    cfg.emplace_back("trials", std::to_string(opts.trials));
    cfg.emplace_back("delta_ref", "0.3");
    cfg.emplace_back("format", opts.format);

    write_table_file(out_path(opts, "rip"), opts.format, table, cfg, opts.seed);
    return kExitOk;
}

int cmd_leakage(const CommonOpts& opts, double bin) {
    const std::size_t n = opts.n;
    SamplingGrid grid{static_cast<double>(n), n};
    const double freq = bin;  // 1 Hz bins
    const MismatchDelta delta = mismatch_delta(freq, grid);
    const std::vector<double> closed = leakage_magnitude(1.0, delta, n);

    // direct DFT of the sampled complex exponential at the same frequency
    cvec tone(n);
    for (std::size_t i = 0; i < n; ++i)
        tone[i] = std::polar(1.0, 2.0 * std::numbers::pi * freq * static_cast<double>(i) /
                                      grid.sample_rate);
    const Spectrum direct = dft(tone);

    Table table;
    table.columns = {"bin", "closed_form", "direct_dft", "abs_error"};
    double max_err = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double err = std::abs(closed[k] - direct.magnitude(k));
        max_err = std::max(max_err, err);
        table.rows.push_back({std::to_string(k), format_number(closed[k]),
                              format_number(direct.magnitude(k)), format_number(err)});
    }

    ConfigEcho cfg = base_config("leakage", opts);
    cfg.emplace_back("n", std::to_string(n));
    cfg.emplace_back("tone_bin", format_number(bin));
    cfg.emplace_back("delta", format_number(delta.delta_bins));
    cfg.emplace_back("max_abs_error", format_number(max_err));
    cfg.emplace_back("format", opts.format);

    const std::string path = out_path(opts, "leakage");
    write_table_file(path, opts.format, table, cfg, opts.seed);
    if (opts.plot) {
        SvgPlot plot("Off-grid leakage: closed form vs direct DFT", "bin", "magnitude (dB)");
        std::vector<double> xs(n), closed_db(n), direct_db(n);
        for (std::size_t k = 0; k < n; ++k) {
            xs[k] = static_cast<double>(k);
            closed_db[k] = 20.0 * std::log10(std::max(closed[k], 1e-12));
            direct_db[k] = 20.0 * std::log10(std::max(direct.magnitude(k), 1e-12));
        }
        plot.add_series("closed form", xs, closed_db);
        plot.add_series("direct DFT", xs, direct_db);
        plot.write(plot_path(path, ""));
    }
    return kExitOk;
}

int cmd_subspaces(const CommonOpts& opts, std::size_t kc, std::size_t max_block) {
    Table table;
    table.columns = {"block_size", "groups", "ln_count", "probability"};
    SvgPlot plot("Frequency-distribution probabilities", "block size", "probability");
    std::vector<std::vector<double>> prob_by_c(kc);
    std::vector<double> xs;

    for (std::size_t b = 1; b <= max_block; ++b) {
        const DistributionProfile profile = freq_distribution_profile(opts.n, kc, b);
        xs.push_back(static_cast<double>(b));
        for (std::size_t c = 1; c <= kc; ++c) {
            table.rows.push_back({std::to_string(b), std::to_string(c),
                                  format_number(profile.ln_counts[c - 1]),
                                  format_number(profile.probabilities[c - 1])});
            prob_by_c[c - 1].push_back(profile.probabilities[c - 1]);
        }
    }

    ConfigEcho cfg = base_config("subspaces", opts);
    cfg.emplace_back("n", std::to_string(opts.n));
    cfg.emplace_back("kc", std::to_string(kc));
    cfg.emplace_back("max_block", std::to_string(max_block));
    cfg.emplace_back("format", opts.format);

    const std::string path = out_path(opts, "subspaces");
    write_table_file(path, opts.format, table, cfg, opts.seed);
    if (opts.plot) {
        for (std::size_t c = 1; c <= kc; ++c)
            plot.add_series("C=" + std::to_string(c), xs, prob_by_c[c - 1]);
        plot.write(plot_path(path, ""));
    }
    return kExitOk;
}

int cmd_bounds(const CommonOpts& opts, double ric, double c_const, double t_exp) {
    const std::size_t n = opts.n;
    const std::vector<double> tone_bins =
        opts.tones.empty()
            ? std::vector<double>{static_cast<double>(n) * 0.1 + 0.5,
                                  static_cast<double>(n) * 0.3 + 0.25}
            : opts.tones;
    const MultiToneSpec spec = tone_spec(n, tone_bins);
    const std::vector<double> signal = synthesize(spec, opts.seed);

    BoundInputs inputs{ric, c_const, t_exp};
    Table table;
    table.columns = {"window", "nonzeros", "blocks", "ln_subspaces", "bound_m", "asymptotic"};
    for (WindowKind kind : selected_windows(opts.windows)) {
        const Window w = generate_window(kind, n);
        cvec windowed(n);
        for (std::size_t i = 0; i < n; ++i) windowed[i] = signal[i] * w.coefficients[i];
        const Spectrum spectrum = dft(windowed);
        const BlockExtraction extraction = blocks_from_spectrum(spectrum, opts.floor_db);
        if (extraction.empty)
            throw std::invalid_argument("bounds: no bin above the floor for window " +
                                        window_name(kind));
        const KCParams params = params_from_blocks(extraction.structure);
        const LogCount count = subspace_count_kc(params);
        const std::size_t bound = sample_bound(count, params.total_nonzeros, inputs);
        const double asym =
            sample_bound_asymptotic(n, params.total_nonzeros, params.block_count);
        table.rows.push_back({window_name(kind), std::to_string(params.total_nonzeros),
                              std::to_string(params.block_count), format_number(count.ln_value),
                              std::to_string(bound), format_number(asym)});
    }

    ConfigEcho cfg = base_config("bounds", opts);
    cfg.emplace_back("n", std::to_string(n));
    cfg.emplace_back("floor_db", format_number(opts.floor_db));
    cfg.emplace_back("ric", format_number(ric));
    cfg.emplace_back("c", format_number(c_const));
    cfg.emplace_back("t", format_number(t_exp));
    std::string tones_echo;
    for (double b : tone_bins) tones_echo += (tones_echo.empty() ? "" : ",") + format_number(b);
    cfg.emplace_back("tone_bins", tones_echo);
    cfg.emplace_back("format", opts.format);

    write_table_file(out_path(opts, "bounds"), opts.format, table, cfg, opts.seed);
    return kExitOk;
}

int cmd_recover(const CommonOpts& opts, const std::string& m_grid_spec, const std::string& algo,
                double noise_std, const std::string& window_name_opt) {
    std::vector<std::size_t> m_grid;
    std::stringstream ss(m_grid_spec);
    std::string item;
    while (std::getline(ss, item, ',')) m_grid.push_back(std::stoul(item));

    const std::size_t n = opts.n;
    const std::vector<double> tone_bins =
        opts.tones.empty()
            ? std::vector<double>{static_cast<double>(n) * 0.1 + 0.5,
                                  static_cast<double>(n) * 0.3 + 0.25}
            : opts.tones;
    const MultiToneSpec spec = tone_spec(n, tone_bins, noise_std);
    const WindowKind kind = parse_window_kind(window_name_opt);
    const bool use_block = algo == "block";

    const std::vector<SweepRow> rows =
        measurement_sweep(spec, kind, opts.floor_db, m_grid, opts.trials, opts.seed, use_block);

    Table table;
    table.columns = {"m", "successes", "trials", "success_rate"};
    std::vector<double> xs, ys;
    for (const auto& row : rows) {
        table.rows.push_back({std::to_string(row.measurements), std::to_string(row.successes),
                              std::to_string(row.trials), format_number(row.success_rate)});
        xs.push_back(static_cast<double>(row.measurements));
        ys.push_back(row.success_rate);
    }

    ConfigEcho cfg = base_config("recover", opts);
    cfg.emplace_back("n", std::to_string(n));
    cfg.emplace_back("window", window_name_opt);
    cfg.emplace_back("algo", algo);
    cfg.emplace_back("floor_db", format_number(opts.floor_db));
    cfg.emplace_back("m_grid", m_grid_spec);
    cfg.emplace_back("trials", std::to_string(opts.trials));
    cfg.emplace_back("noise_std", format_number(noise_std));
    cfg.emplace_back("success_nmse", "1e-3 noiseless; 3 dB above noise fraction otherwise");
    cfg.emplace_back("format", opts.format);

    const std::string path = out_path(opts, "recover");
    write_table_file(path, opts.format, table, cfg, opts.seed);
    if (opts.plot) {
        SvgPlot plot("Recovery success rate vs measurements", "M", "success rate");
        plot.add_series(window_name_opt + std::string(" / ") + algo, xs, ys);
        plot.write(plot_path(path, ""));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Windowed compressed spectrum sensing experiments"};
    app.require_subcommand(1);

    CommonOpts opts;
    double leakage_bin = 10.5;
    std::size_t kc = 2;
    std::size_t max_block = 10;
    double ric = 0.5, c_const = 1.0, t_exp = 0.0;
    std::string m_grid_spec = "64,128,192,256";
    std::string algo = "block";
    double noise_std = 0.0;
    std::string recover_window = "blackman";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", opts.n, "Signal length N");
        cmd->add_option("--seed", opts.seed, "Run seed");
        cmd->add_option("--out", opts.out, "Output file path");
        cmd->add_option("--format", opts.format, "Output format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_flag("--plot", opts.plot, "Also write SVG plot(s)");
        cmd->add_option("--window,-w,--windows", opts.windows,
                        "Comma-separated window kinds (default: all six)");
    };

    CLI::App* windows = app.add_subcommand("windows", "Window metrics table (EZC/WSC/NZE)");
    add_common(windows);
    windows->add_option("--threshold-db", opts.threshold_db, "NZE threshold, dB below peak");

    CLI::App* rip = app.add_subcommand("rip", "Windowed RIP bounds per window");
    add_common(rip);
    rip->add_option("--m", opts.m, "Measurement count M");
    rip->add_option("--k", opts.k, "Probe sparsity k");
    rip->add_option("--trials", opts.trials, "Monte-Carlo trials");

    CLI::App* leakage = app.add_subcommand("leakage", "Closed-form vs direct DFT leakage");
    add_common(leakage);
    leakage->add_option("--bin", leakage_bin, "Tone position in bins (may be fractional)");

    CLI::App* subspaces = app.add_subcommand("subspaces", "Frequency-distribution probabilities");
    add_common(subspaces);
    subspaces->add_option("--kc", kc, "Component count K_c");
    subspaces->add_option("--max-block", max_block, "Largest block size to sweep");

    CLI::App* bounds = app.add_subcommand("bounds", "Sample bounds from noise-floored spectra");
    add_common(bounds);
    bounds->add_option("--floor-db", opts.floor_db, "Noise floor, dB below peak");
    bounds->add_option("--ric", ric, "RIC delta");
    bounds->add_option("--c", c_const, "Ensemble constant c");
    bounds->add_option("--t", t_exp, "Confidence exponent t");
    bounds->add_option("--tones", opts.tones, "Tone positions in bins");

    CLI::App* recover = app.add_subcommand("recover", "Success-rate sweep over M");
    add_common(recover);
    recover->add_option("--floor-db", opts.floor_db, "Noise floor, dB below peak");
    recover->add_option("--m-grid", m_grid_spec, "Comma-separated ascending M values");
    recover->add_option("--trials", opts.trials, "Trials per M");
    recover->add_option("--algo", algo, "Recovery algorithm")
        ->check(CLI::IsMember({"block", "omp"}));
    recover->add_option("--noise-std", noise_std, "Additive noise std");
    recover->add_option("--tones", opts.tones, "Tone positions in bins");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadArgs;
    }

    try {
        if (windows->parsed()) return cmd_windows(opts);
        if (rip->parsed()) return cmd_rip(opts);
        if (leakage->parsed()) return cmd_leakage(opts, leakage_bin);
        if (subspaces->parsed()) return cmd_subspaces(opts, kc, max_block);
        if (bounds->parsed()) return cmd_bounds(opts, ric, c_const, t_exp);
        if (recover->parsed()) {
            if (!opts.windows.empty())
                recover_window = window_name(selected_windows(opts.windows).front());
            return cmd_recover(opts, m_grid_spec, algo, noise_std, recover_window);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitBadArgs;
}
