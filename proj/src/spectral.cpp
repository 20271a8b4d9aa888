#include "fwm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fwm::spectral {

namespace {

constexpr double kDbFloor = -300.0;
const double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

Window window_from_name(const std::string& name) {
    if (name == "rectangular" || name == "rect") return Window::rectangular;
    if (name == "hann") return Window::hann;
    if (name == "hamming") return Window::hamming;
    if (name == "blackman") return Window::blackman;
    throw std::invalid_argument("unknown window: " + name);
}

std::string window_name(Window w) {
    switch (w) {
        case Window::rectangular: return "rectangular";
        case Window::hann: return "hann";
        case Window::hamming: return "hamming";
        case Window::blackman: return "blackman";
    }
    return "rectangular";
}

std::vector<double> window_coefficients(Window w, std::size_t n) {
    std::vector<double> c(n, 1.0);
    if (n <= 1 || w == Window::rectangular) return c;
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / denom;
        switch (w) {
            case Window::rectangular: break;
            case Window::hann:
                c[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * x);
                break;
            case Window::hamming:
                c[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * x);
                break;
            case Window::blackman:
                c[i] = 0.42 - 0.5 * std::cos(2.0 * M_PI * x) +
                       0.08 * std::cos(4.0 * M_PI * x);
                break;
        }
    }
    return c;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_inplace(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("FFT length must be a power of two");
    }
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = data[i + k];
                const auto v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void ifft_inplace(std::vector<std::complex<double>>& data) {
    for (auto& d : data) d = std::conj(d);
    fft_inplace(data);
    const double inv = 1.0 / static_cast<double>(data.size());
    for (auto& d : data) d = std::conj(d) * inv;
}

double DopplerSpectrum::total_power() const {
    double acc = 0.0;
    for (double p : power) acc += p;
    return acc / static_cast<double>(power.size());
}

std::size_t default_fft_length(std::size_t sample_count) {
    return next_pow2(4 * sample_count);
}

DopplerSpectrum periodogram(const synth::IqSeries& iq, Window window,
                            std::size_t fft_length, double wavelength_m) {
    const std::size_t n = iq.samples.size();
    if (n == 0) throw std::invalid_argument("empty I/Q series");
    if (fft_length < n) throw std::invalid_argument("fft length shorter than input");
    const std::size_t nfft = next_pow2(fft_length);

    const auto w = window_coefficients(window, n);
    std::vector<std::complex<double>> x(nfft, {0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) x[i] = iq.samples[i] * w[i];
    fft_inplace(x);

    DopplerSpectrum s;
    s.sample_rate_hz = iq.sample_rate_hz;
    s.resolution_hz = iq.sample_rate_hz / static_cast<double>(nfft);
    s.wavelength_m = wavelength_m;
    s.power.resize(nfft);
    s.frequency_hz.resize(nfft);
    s.velocity_mps.resize(nfft);
    s.magnitudes_db.resize(nfft);

    double max_power = 0.0;
    for (std::size_t k = 0; k < nfft; ++k) {
        // fftshift: bin k holds frequency (k - nfft/2) * fs / nfft
        const std::size_t src = (k + nfft / 2) % nfft;
        s.power[k] = std::norm(x[src]);
        max_power = std::max(max_power, s.power[k]);
        s.frequency_hz[k] =
            (static_cast<double>(k) - static_cast<double>(nfft) / 2.0) * s.resolution_hz;
        s.velocity_mps[k] = -s.frequency_hz[k] * wavelength_m / 2.0;
    }
    for (std::size_t k = 0; k < nfft; ++k) {
        if (s.power[k] <= 0.0 || max_power <= 0.0) {
            s.magnitudes_db[k] = kNegInf;
            continue;
        }
        const double db = 10.0 * std::log10(s.power[k] / max_power);
        s.magnitudes_db[k] = db < kDbFloor ? kNegInf : db;
    }
    return s;
}

DopplerSpectrum periodogram(const synth::IqSeries& iq, Window window, double wavelength_m) {
    return periodogram(iq, window, default_fft_length(iq.samples.size()), wavelength_m);
}

TimeFrequencyMap stft(const synth::IqSeries& iq, Window window, std::size_t frame_length,
                      std::size_t hop, double wavelength_m) {
    const std::size_t n = iq.samples.size();
    if (frame_length == 0 || frame_length > n) {
        throw std::invalid_argument("frame length must be in [1, sample count]");
    }
    if (hop == 0) throw std::invalid_argument("hop must be >= 1");

    TimeFrequencyMap map;
    map.hop_s = static_cast<double>(hop) / iq.sample_rate_hz;
    const std::size_t n_frames = (n - frame_length) / hop + 1;
    const std::size_t nfft = next_pow2(4 * frame_length);
    map.frames.reserve(n_frames);
    for (std::size_t f = 0; f < n_frames; ++f) {
        synth::IqSeries frame;
        frame.sample_rate_hz = iq.sample_rate_hz;
        frame.duration_s = static_cast<double>(frame_length) / iq.sample_rate_hz;
        const std::size_t start = f * hop;
        frame.samples.assign(iq.samples.begin() + static_cast<std::ptrdiff_t>(start),
                             iq.samples.begin() +
                                 static_cast<std::ptrdiff_t>(start + frame_length));
        map.frames.push_back(periodogram(frame, window, nfft, wavelength_m));
        map.frame_times_s.push_back(
            (static_cast<double>(start) + static_cast<double>(frame_length) / 2.0) /
            iq.sample_rate_hz);
    }
    return map;
}

DopplerSpectrum velocity_axis(DopplerSpectrum spectrum, double wavelength_m) {
    if (!(wavelength_m > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    spectrum.wavelength_m = wavelength_m;
    spectrum.velocity_mps.resize(spectrum.frequency_hz.size());
    for (std::size_t k = 0; k < spectrum.frequency_hz.size(); ++k) {
        spectrum.velocity_mps[k] = -spectrum.frequency_hz[k] * wavelength_m / 2.0;
    }
    return spectrum;
}

}  // namespace fwm::spectral
