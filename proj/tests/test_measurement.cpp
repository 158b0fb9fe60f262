#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wincs/measurement.hpp"
#include "wincs/rng.hpp"

using namespace wincs;

TEST_CASE("sample_ensemble determinism and shape") {
    const auto a = sample_ensemble(8, 32, 123);
    const auto b = sample_ensemble(8, 32, 123);
    const auto c = sample_ensemble(8, 32, 124);
    CHECK(a.entries == b.entries);
    CHECK(a.entries != c.entries);
    CHECK(a.entries.rows() == 8);
    CHECK(a.entries.cols() == 32);
    CHECK_THROWS_AS(sample_ensemble(33, 32, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_ensemble(0, 32, 1), std::invalid_argument);
}

TEST_CASE("ensemble entry statistics") {
    const std::size_t m = 64, n = 256;
    const auto e = sample_ensemble(m, n, 7);
    double sum = 0.0, sum_sq = 0.0;
    for (Eigen::Index j = 0; j < e.entries.rows(); ++j) {
        for (Eigen::Index i = 0; i < e.entries.cols(); ++i) {
            sum += e.entries(j, i);
            sum_sq += e.entries(j, i) * e.entries(j, i);
        }
    }
    const double count = static_cast<double>(m * n);
    const double entry_sd = 1.0 / std::sqrt(static_cast<double>(m));
    // mean within 3 standard errors of zero
    CHECK(std::abs(sum / count) < 3.0 * entry_sd / std::sqrt(count));
    // column energy expectation 1 <=> entry variance 1/M
    CHECK(sum_sq / count == doctest::Approx(1.0 / static_cast<double>(m)).epsilon(0.05));
}

TEST_CASE("energy preservation at full sampling over fresh seeds") {
    const std::size_t n = 16;
    Eigen::VectorXd x(n);
    for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) = std::sin(0.3 * i) + 0.2;
    const double x_energy = x.squaredNorm();
    double acc = 0.0;
    const std::size_t reps = 2000;
    for (std::size_t s = 0; s < reps; ++s)
        acc += (sample_ensemble(n, n, s).entries * x).squaredNorm();
    CHECK(acc / static_cast<double>(reps) / x_energy == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("composition equals the sequential apply route") {
    const auto ensemble = sample_ensemble(8, 16, 3);
    const Window hann = generate_window(WindowKind::Hann, 16);
    const auto op = compose_windowed(ensemble, hann);

    Eigen::VectorXcd x(16);
    auto rng = trial_rng(9, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Eigen::Index i = 0; i < 16; ++i) x(i) = cplx(gauss(rng), gauss(rng));

    const Eigen::VectorXcd via_matrix = op.composition * x;
    const Eigen::VectorXcd via_sequence = apply_sequential(op, x);
    CHECK((via_matrix - via_sequence).norm() < 1e-10 * via_matrix.norm());
}

TEST_CASE("all-ones window reduces to the unwindowed operator") {
    const auto ensemble = sample_ensemble(8, 16, 3);
    const Window ones = custom_window(std::vector<double>(16, 1.0));
    const auto op = compose_windowed(ensemble, ones);
    const Eigen::MatrixXcd theta_f = ensemble.entries * unitary_dft_matrix(16);
    CHECK((op.composition - theta_f).norm() < 1e-12 * theta_f.norm());
}

TEST_CASE("window coefficients are untouched by composition") {
    // no sqrt(2/(b1+b2)) renormalization may sneak in
    const auto ensemble = sample_ensemble(8, 32, 5);
    const Window blackman = generate_window(WindowKind::Blackman, 32);
    const auto op = compose_windowed(ensemble, blackman);
    CHECK(op.window.coefficients == blackman.coefficients);
}

TEST_CASE("compose_windowed rejects mismatched lengths") {
    const auto ensemble = sample_ensemble(8, 16, 3);
    CHECK_THROWS_AS(compose_windowed(ensemble, generate_window(WindowKind::Hann, 32)),
                    std::invalid_argument);
}

TEST_CASE("windowing shrinks measurement energy for an off-grid tone") {
    const std::size_t n = 64;
    const auto ensemble = sample_ensemble(32, n, 11);
    Eigen::VectorXcd x(n);
    for (std::size_t i = 0; i < n; ++i)
        x(static_cast<Eigen::Index>(i)) =
            std::cos(2.0 * 3.14159265358979 * 10.5 * static_cast<double>(i) / n);
    const double rect_energy =
        (compose_windowed(ensemble, generate_window(WindowKind::Rectangular, n)).composition * x)
            .squaredNorm();
    const double hann_energy =
        (compose_windowed(ensemble, generate_window(WindowKind::Hann, n)).composition * x)
            .squaredNorm();
    CHECK(hann_energy < rect_energy);
}

TEST_CASE("two_stability energy identity") {
    const std::size_t n = 32, m = 8;
    const auto ensemble = sample_ensemble(m, n, 21);
    const std::size_t trials = 100000;

    SUBCASE("rectangular window returns the input energy") {
        const auto op = compose_windowed(ensemble, generate_window(WindowKind::Rectangular, n));
        Eigen::VectorXd x(n);
        auto rng = trial_rng(4, 0);
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) x(i) = gauss(rng);
        CHECK(two_stability_energy(op, x, trials) / x.squaredNorm() ==
              doctest::Approx(1.0).epsilon(0.02));
    }
    SUBCASE("support on window zeros annihilates") {
        const auto op = compose_windowed(ensemble, generate_window(WindowKind::Hann, n));
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        x(0) = 1.0;
        x(static_cast<Eigen::Index>(n - 1)) = -2.0;
        CHECK(two_stability_energy(op, x, 10000) < 1e-12);
    }
    SUBCASE("all-ones input reproduces the sum of squared coefficients") {
        const Window hann = generate_window(WindowKind::Hann, n);
        const auto op = compose_windowed(ensemble, hann);
        const Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
        double expected = 0.0;
        for (double c : hann.coefficients) expected += c * c;
        CHECK(two_stability_energy(op, x, trials) ==
              doctest::Approx(expected).epsilon(0.02));
    }
}

TEST_CASE("two_stability requires enough trials") {
    const auto op =
        compose_windowed(sample_ensemble(4, 16, 2), generate_window(WindowKind::Hann, 16));
    CHECK_THROWS_AS(two_stability_energy(op, Eigen::VectorXd::Ones(16), 100),
                    std::invalid_argument);
}

TEST_CASE("rip_reference_bounds") {
    const std::size_t n = 1000;
    SUBCASE("hamming at delta 0.3 matches the table cells") {
        const auto [lo, hi] = rip_reference_bounds(generate_window(WindowKind::Hamming, n), 0.3);
        CHECK(lo == doctest::Approx(0.3776).epsilon(3e-3));
        CHECK(hi == doctest::Approx(0.7014).epsilon(3e-3));
    }
    SUBCASE("rectangular at delta 0.3") {
        const auto [lo, hi] = rip_reference_bounds(generate_window(WindowKind::Rectangular, n), 0.3);
        CHECK(lo == doctest::Approx(0.7));
        CHECK(hi == doctest::Approx(1.3));
    }
    SUBCASE("delta to zero degenerates to the wsc point") {
        const Window w = generate_window(WindowKind::Hann, n);
        const auto [lo, hi] = rip_reference_bounds(w, 1e-9);
        CHECK(lo == doctest::Approx(wsc(w)).epsilon(1e-6));
        CHECK(hi == doctest::Approx(wsc(w)).epsilon(1e-6));
    }
    SUBCASE("invalid delta") {
        const Window w = generate_window(WindowKind::Hann, n);
        CHECK_THROWS_AS(rip_reference_bounds(w, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(rip_reference_bounds(w, 1.0), std::invalid_argument);
    }
}

TEST_CASE("rip_empirical basic contracts") {
    const std::size_t n = 64, m = 32;
    const auto ensemble = sample_ensemble(m, n, 1);
    const auto op = compose_windowed(ensemble, generate_window(WindowKind::Rectangular, n));

    CHECK_THROWS_AS(rip_empirical(op, m + 1, 1000, 1), std::invalid_argument);
    CHECK_THROWS_AS(rip_empirical(op, 0, 1000, 1), std::invalid_argument);
    CHECK_THROWS_AS(rip_empirical(op, 4, 10, 1), std::invalid_argument);

    const auto est = rip_empirical(op, 4, 1000, 5);
    CHECK(est.empirical_lower > 0.0);
    CHECK(est.empirical_lower <= est.empirical_upper);
    CHECK(est.theoretical_lower == doctest::Approx(0.7));
    CHECK(est.theoretical_upper == doctest::Approx(1.3));

    // determinism
    const auto est2 = rip_empirical(op, 4, 1000, 5);
    CHECK(est.empirical_lower == est2.empirical_lower);
    CHECK(est.empirical_upper == est2.empirical_upper);
}

TEST_CASE("rip_empirical at k = 1, M = N straddles the weighted center") {
    const std::size_t n = 64;
    const auto ensemble = sample_ensemble(n, n, 2);
    const auto op = compose_windowed(ensemble, generate_window(WindowKind::Rectangular, n));
    const auto est = rip_empirical(op, 1, 2000, 3);
    CHECK(est.empirical_lower < 1.0);
    CHECK(est.empirical_upper > 1.0);
}

TEST_CASE("blackman degrades the interval against rectangular") {
    const std::size_t n = 128, m = 64;
    const auto ensemble = sample_ensemble(m, n, 9);
    const auto rect =
        rip_empirical(compose_windowed(ensemble, generate_window(WindowKind::Rectangular, n)), 8,
                      2000, 17);
    const auto blackman =
        rip_empirical(compose_windowed(ensemble, generate_window(WindowKind::Blackman, n)), 8,
                      2000, 17);
    CHECK(blackman.midpoint() < rect.midpoint());
}

TEST_CASE("empirical intervals tighten as M grows") {
    const std::size_t n = 128;
    const Window w = generate_window(WindowKind::Rectangular, n);
    double prev_width = 1e9;
    for (std::size_t m : {n / 8, n / 4, n / 2}) {
        const auto op = compose_windowed(sample_ensemble(m, n, 31), w);
        const auto est = rip_empirical(op, 8, 2000, 13);
        const double width = est.empirical_upper - est.empirical_lower;
        CHECK(width < prev_width * 1.15);  // up to Monte-Carlo slack
        prev_width = width;
    }
}

TEST_CASE("rip_success_probability") {
    // hand evaluation: c0(0.25) = 0.25^2/16 - 0.25^3/48 = 0.0035807
    const double c0 = 0.25 * 0.25 / 16.0 - 0.25 * 0.25 * 0.25 / 48.0;
    const double fail = 2.0 * std::pow(12.0 / 0.5, 4.0) * std::exp(-c0 * 10000.0);
    CHECK(rip_success_probability(0.5, 4, 10000) == doctest::Approx(1.0 - fail).epsilon(1e-9));
    CHECK(1.0 - rip_success_probability(0.5, 4, 10000) ==
          doctest::Approx(1.9e-10).epsilon(0.05));
    CHECK(rip_success_probability(0.5, 4, 2000) == 0.0);  // vacuous, clamped
    CHECK(rip_success_probability(0.5, 4, 10000000) == doctest::Approx(1.0));
    CHECK_THROWS_AS(rip_success_probability(1.5, 4, 100), std::invalid_argument);
}
