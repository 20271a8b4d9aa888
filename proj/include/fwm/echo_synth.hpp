#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fwm/core_model.hpp"

namespace fwm::synth {

// Complex baseband dwell in one range bin.
struct IqSeries {
    std::vector<std::complex<double>> samples;
    double sample_rate_hz = 0.0;
    double duration_s = 0.0;
    std::uint64_t scenario_hash = 0;
    std::uint64_t seed = 0;

    double mean_power() const;
};

struct ClutterSpec {
    double center_velocity_mps = 0.0;  // sea clutter sits near zero Doppler
    double spread_velocity_mps = 0.5;
    double scr_db = 10.0;
};

// How the wing return of one bird is rendered.
//
// dwell_line: a tone at the dwell-mean micro-Doppler offset, the
// first-order expansion of the flapping phase history about the dwell
// center. This is what a short dwell resolves into discrete FWM lines.
//
// phase_mod: the full sinusoidal phase modulation; used for
// time-frequency (STFT) study of the instantaneous micro-Doppler ridge.
enum class WingModel { dwell_line, phase_mod };

// Wing micro-motion phase history (4*pi*L/lambda)*cos(omega*t + phi0), rad.
// Its time derivative divided by 2*pi is the instantaneous micro-Doppler.
double wing_phase(const core::BirdKinematics& bird, double wavelength_m, double t_s);

// Frequency offset of the wing line from the body line for one dwell:
// the dwell-mean instantaneous micro-Doppler, i.e. -dwell_micro_doppler / T_r.
double wing_line_offset_hz(const core::BirdKinematics& bird, const core::RadarConfig& radar);

// Body tone amplitude for one bird: 10 dB (power) above the largest wing
// amplitude the bird could present (full pi gait), so each body return
// dominates its own wing line regardless of flap phase.
double body_amplitude(const core::BirdKinematics& bird, const core::RadarConfig& radar);

// FNV-1a over the numeric content of (scenario, radar); used for provenance.
std::uint64_t scenario_hash(const core::FlockScenario& scenario,
                            const core::RadarConfig& radar);

// Deterministic dwell synthesis: per-bird body tone plus wing component,
// then noise / sea clutter if the scenario requests them.
// Throws fwm::config_error naming the offending bird on Nyquist violation.
IqSeries synthesize_dwell(const core::FlockScenario& scenario,
                          const core::RadarConfig& radar, std::uint64_t seed,
                          WingModel model = WingModel::dwell_line);

// Adds circular complex white noise at the given SNR. +infinity disables.
IqSeries add_noise(const IqSeries& iq, double snr_db, std::uint64_t seed);

// Adds noise with a fixed absolute power (track harness use).
IqSeries add_noise_power(const IqSeries& iq, double noise_power, std::uint64_t seed);

// Adds a Gaussian-spectrum clutter process at the given SCR. -infinity disables.
IqSeries add_sea_clutter(const IqSeries& iq, const ClutterSpec& clutter,
                         const core::RadarConfig& radar, std::uint64_t seed);

}  // namespace fwm::synth
