#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "fwm/echo_synth.hpp"

namespace fwm::spectral {

enum class Window { rectangular, hann, hamming, blackman };

Window window_from_name(const std::string& name);  // throws std::invalid_argument
std::string window_name(Window w);
std::vector<double> window_coefficients(Window w, std::size_t n);

// In-place radix-2 forward FFT; length must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& data);
void ifft_inplace(std::vector<std::complex<double>>& data);
std::size_t next_pow2(std::size_t n);

// Doppler spectrum with calibrated axes. Bins are fftshifted so the
// frequency axis runs -fs/2 .. +fs/2 - df.
struct DopplerSpectrum {
    std::vector<double> magnitudes_db;  // relative to the strongest bin
    std::vector<double> frequency_hz;
    std::vector<double> velocity_mps;   // v = -f * lambda / 2
    std::vector<double> power;          // linear |X|^2 per bin
    double resolution_hz = 0.0;         // sample_rate / fft length
    double sample_rate_hz = 0.0;
    double wavelength_m = 0.0;

    std::size_t size() const { return magnitudes_db.size(); }
    // Sum over bins / fft length; equals input signal power for a
    // rectangular window (Parseval).
    double total_power() const;
};

struct TimeFrequencyMap {
    std::vector<DopplerSpectrum> frames;
    std::vector<double> frame_times_s;  // frame centers, strictly increasing
    double hop_s = 0.0;
};

// Magnitude spectrum of one dwell. fft_length is rounded up to the next
// power of two; it must be >= the sample count. Default fft length is
// next_pow2(4 * n) so peak interpolation error stays under 1/8 bin.
std::size_t default_fft_length(std::size_t sample_count);
DopplerSpectrum periodogram(const synth::IqSeries& iq, Window window,
                            std::size_t fft_length, double wavelength_m);
DopplerSpectrum periodogram(const synth::IqSeries& iq, Window window, double wavelength_m);

TimeFrequencyMap stft(const synth::IqSeries& iq, Window window, std::size_t frame_length,
                      std::size_t hop, double wavelength_m);

// Attaches / refreshes the velocity axis via v = -f * lambda / 2. Idempotent.
DopplerSpectrum velocity_axis(DopplerSpectrum spectrum, double wavelength_m);

}  // namespace fwm::spectral
