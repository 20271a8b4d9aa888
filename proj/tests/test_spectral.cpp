#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "builders.hpp"
#include "fwm/echo_synth.hpp"
#include "fwm/rng.hpp"
#include "fwm/spectral.hpp"

using namespace fwm;
using namespace fwm::testing;

namespace {

synth::IqSeries make_series(std::vector<std::complex<double>> samples, double fs) {
    synth::IqSeries iq;
    iq.duration_s = static_cast<double>(samples.size()) / fs;
    iq.samples = std::move(samples);
    iq.sample_rate_hz = fs;
    return iq;
}

synth::IqSeries tone(double f0, double fs, std::size_t n, double amp = 1.0) {
    std::vector<std::complex<double>> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::polar(amp, core::kTwoPi * f0 * static_cast<double>(i) / fs);
    }
    return make_series(std::move(s), fs);
}

}  // namespace

TEST_CASE("window names round-trip; unknown name rejected") {
    for (auto w : {spectral::Window::rectangular, spectral::Window::hann,
                   spectral::Window::hamming, spectral::Window::blackman}) {
        CHECK(spectral::window_from_name(spectral::window_name(w)) == w);
    }
    CHECK_THROWS_AS(spectral::window_from_name("kaiser"), std::invalid_argument);
}

TEST_CASE("window coefficients: size, range, symmetry, rectangular identity") {
    for (auto w : {spectral::Window::rectangular, spectral::Window::hann,
                   spectral::Window::hamming, spectral::Window::blackman}) {
        const auto c = spectral::window_coefficients(w, 129);
        REQUIRE(c.size() == 129);
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(c[i] >= -1e-12);
            CHECK(c[i] <= 1.0 + 1e-12);
            CHECK(c[i] == doctest::Approx(c[c.size() - 1 - i]).epsilon(1e-12));
        }
    }
    for (double v : spectral::window_coefficients(spectral::Window::rectangular, 8)) {
        CHECK(v == 1.0);
    }
    const auto hann = spectral::window_coefficients(spectral::Window::hann, 65);
    CHECK(hann.front() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hann[32] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fft: impulse, single-bin tone, length check") {
    std::vector<std::complex<double>> x(8, {0.0, 0.0});
    x[0] = 1.0;
    spectral::fft_inplace(x);
    for (const auto& v : x) CHECK(std::abs(v - 1.0) < 1e-12);

    const std::size_t n = 64;
    const std::size_t k = 13;
    std::vector<std::complex<double>> t(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = std::polar(1.0, core::kTwoPi * static_cast<double>(k * i) / n);
    }
    spectral::fft_inplace(t);
    for (std::size_t i = 0; i < n; ++i) {
        const double expect = i == k ? static_cast<double>(n) : 0.0;
        CHECK(std::abs(t[i]) == doctest::Approx(expect).epsilon(1e-9));
    }

    std::vector<std::complex<double>> bad(12);
    CHECK_THROWS_AS(spectral::fft_inplace(bad), std::invalid_argument);
}

TEST_CASE("fft round-trip, linearity, Parseval") {
    Rng rng(301);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1ull << (4 + trial % 5);
        std::vector<std::complex<double>> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.complex_gaussian();
            y[i] = rng.complex_gaussian();
        }
        auto fx = x, fy = y;
        spectral::fft_inplace(fx);
        spectral::fft_inplace(fy);

        // linearity
        std::vector<std::complex<double>> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = x[i] + 2.0 * y[i];
        spectral::fft_inplace(z);
        for (std::size_t i = 0; i < n; i += 7) {
            CHECK(std::abs(z[i] - (fx[i] + 2.0 * fy[i])) < 1e-9);
        }

        // Parseval
        double pt = 0.0, pf = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            pt += std::norm(x[i]);
            pf += std::norm(fx[i]);
        }
        CHECK(pf / static_cast<double>(n) == doctest::Approx(pt).epsilon(1e-9));

        // round trip
        spectral::ifft_inplace(fx);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(fx[i] - x[i]) < 1e-9);
    }
}

TEST_CASE("next_pow2 and default fft length") {
    CHECK(spectral::next_pow2(1) == 1);
    CHECK(spectral::next_pow2(2) == 2);
    CHECK(spectral::next_pow2(3) == 4);
    CHECK(spectral::next_pow2(1600) == 2048);
    CHECK(spectral::default_fft_length(1600) == 8192);
}

TEST_CASE("periodogram axes: fftshifted frequencies, velocity convention, 0 dB max") {
    const double fs = 80000.0;
    const auto iq = tone(760.0, fs, 1600);
    const auto s = spectral::periodogram(iq, spectral::Window::rectangular, 0.03);
    REQUIRE(s.size() == 8192);
    CHECK(s.resolution_hz == doctest::Approx(fs / 8192.0));
    CHECK(s.frequency_hz.front() == doctest::Approx(-fs / 2.0));
    CHECK(s.frequency_hz[1] - s.frequency_hz[0] == doctest::Approx(s.resolution_hz));
    double max_db = -1e300;
    std::size_t imax = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.magnitudes_db[i] > max_db) {
            max_db = s.magnitudes_db[i];
            imax = i;
        }
        CHECK(s.velocity_mps[i] ==
              doctest::Approx(-s.frequency_hz[i] * 0.03 / 2.0).epsilon(1e-12));
    }
    CHECK(max_db == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(s.frequency_hz[imax] - 760.0) <= fs / 1600.0);
    // the tone approaches the radar: peak at negative velocity
    CHECK(s.velocity_mps[imax] < 0.0);
}

TEST_CASE("periodogram: Parseval with rectangular window, tones located, dB ordering") {
    Rng rng(302);
    for (int trial = 0; trial < 100; ++trial) {
        const double fs = 20000.0;
        const std::size_t n = 500;
        const double f0 = rng.uniform(-0.45, 0.45) * fs;
        auto iq = tone(f0, fs, n, rng.uniform(0.5, 3.0));
        const auto s = spectral::periodogram(iq, spectral::Window::rectangular, 0.03);

        double sig = 0.0;
        for (const auto& v : iq.samples) sig += std::norm(v);
        CHECK(s.total_power() == doctest::Approx(sig).epsilon(1e-9));

        std::size_t imax = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.magnitudes_db[i] > s.magnitudes_db[imax]) imax = i;
        }
        CHECK(std::abs(s.frequency_hz[imax] - f0) <= fs / static_cast<double>(n));

        // dB order matches linear power order
        const std::size_t a = static_cast<std::size_t>(rng.integer(0, 2047));
        const std::size_t b = static_cast<std::size_t>(rng.integer(0, 2047));
        if (s.power[a] < s.power[b]) CHECK(s.magnitudes_db[a] <= s.magnitudes_db[b]);
    }
}

TEST_CASE("periodogram input checks") {
    auto iq = tone(100.0, 1000.0, 64);
    CHECK_THROWS_AS(spectral::periodogram(make_series({}, 1000.0),
                                          spectral::Window::hann, 0.03),
                    std::invalid_argument);
    CHECK_THROWS_AS(spectral::periodogram(iq, spectral::Window::hann, 32, 0.03),
                    std::invalid_argument);
}

TEST_CASE("velocity_axis is idempotent") {
    auto iq = tone(500.0, 8000.0, 256);
    auto s = spectral::periodogram(iq, spectral::Window::hamming, 0.03);
    auto once = spectral::velocity_axis(s, 0.03);
    auto twice = spectral::velocity_axis(once, 0.03);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(once.velocity_mps[i] == twice.velocity_mps[i]);
    }
}

TEST_CASE("stft: frame geometry") {
    auto iq = tone(100.0, 8000.0, 2048);
    const auto tf = spectral::stft(iq, spectral::Window::hann, 256, 128, 0.03);
    REQUIRE(tf.frames.size() == (2048 - 256) / 128 + 1);
    CHECK(tf.hop_s == doctest::Approx(128.0 / 8000.0));
    for (std::size_t i = 1; i < tf.frame_times_s.size(); ++i) {
        CHECK(tf.frame_times_s[i] - tf.frame_times_s[i - 1] ==
              doctest::Approx(tf.hop_s).epsilon(1e-12));
    }
    CHECK(tf.frame_times_s.front() == doctest::Approx(128.0 / 8000.0).epsilon(1e-9));
}

TEST_CASE("stft ridge of a phase-modulated wing tracks the instantaneous micro-Doppler") {
    auto radar = make_radar(0.03, 0.2, 80000.0);
    core::FlockScenario flock;
    flock.birds.push_back(make_bird(0.6, 7.0, 3.0, 0.0));  // near-full gait
    const auto iq =
        synth::synthesize_dwell(flock, radar, 0, synth::WingModel::phase_mod);
    const auto tf = spectral::stft(iq, spectral::Window::hann, 256, 128, 0.03);
    const double envelope = 2.0 * 0.6 * core::kTwoPi * 7.0 / 0.03;
    // The stationary body line's mainlobe (Hann, 256-sample frames) spans
    // roughly +-625 Hz; the ridge is only unambiguous well outside it.
    const auto ridge_of = [](const spectral::DopplerSpectrum& s) {
        std::size_t imax = 0;
        double best = -1e300;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (std::abs(s.frequency_hz[i]) < 900.0) continue;
            if (s.magnitudes_db[i] > best) {
                best = s.magnitudes_db[i];
                imax = i;
            }
        }
        return s.frequency_hz[imax];
    };
    int checked = 0;
    double lo = 1e300, hi = -1e300;
    for (std::size_t f = 0; f < tf.frames.size(); ++f) {
        const double truth = core::instantaneous_micro_doppler(
            flock.birds[0], 0.03, tf.frame_times_s[f]);
        const double ridge = ridge_of(tf.frames[f]);
        lo = std::min(lo, ridge);
        hi = std::max(hi, ridge);
        if (std::abs(truth) < 1100.0) continue;  // ridge hidden near the body line
        CHECK(std::abs(ridge - truth) < 350.0);
        ++checked;
    }
    CHECK(checked > 30);
    // the ridge sweeps most of the +-envelope range over a flap cycle
    CHECK(hi > 0.75 * envelope);
    CHECK(lo < -0.75 * envelope);
}
