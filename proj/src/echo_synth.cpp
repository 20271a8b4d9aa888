#include "fwm/echo_synth.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "fwm/errors.hpp"
#include "fwm/rng.hpp"
#include "fwm/spectral.hpp"

namespace fwm::synth {

namespace {

constexpr std::uint64_t kNoiseSeedSalt = 0x9e3779b97f4a7c15ull;
constexpr std::uint64_t kClutterSeedSalt = 0xc2b2ae3d27d4eb4full;

void hash_mix(std::uint64_t& h, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xffu;
        h *= 0x100000001b3ull;
    }
}

}  // namespace

double IqSeries::mean_power() const {
    if (samples.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& s : samples) acc += std::norm(s);
    return acc / static_cast<double>(samples.size());
}

double wing_phase(const core::BirdKinematics& bird, double wavelength_m, double t_s) {
    const double beta = 4.0 * M_PI * bird.wing_length_m / wavelength_m;
    return beta * std::cos(bird.flap_rate_rad_s * t_s + bird.initial_phase_rad);
}

double wing_line_offset_hz(const core::BirdKinematics& bird,
                           const core::RadarConfig& radar) {
    return -core::dwell_micro_doppler(bird, radar) / radar.dwell_time_s;
}

double body_amplitude(const core::BirdKinematics& bird, const core::RadarConfig& radar) {
    const double peak_rcs =
        core::wcr_rcs(bird.corner, core::kPi, radar.wavelength_m);
    const double ceiling =
        peak_rcs * std::abs(std::sin(core::kPi * radar.dwell_time_s)) / core::kPi;
    return std::sqrt(10.0) * ceiling;  // 10 dB in power above the wing ceiling
}

std::uint64_t scenario_hash(const core::FlockScenario& scenario,
                            const core::RadarConfig& radar) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    hash_mix(h, radar.wavelength_m);
    hash_mix(h, radar.dwell_time_s);
    hash_mix(h, radar.sample_rate_hz);
    hash_mix(h, scenario.flight_wavelength_cycles);
    hash_mix(h, scenario.noise_snr_db.value_or(std::numeric_limits<double>::infinity()));
    hash_mix(h, scenario.clutter_scr_db.value_or(-std::numeric_limits<double>::infinity()));
    hash_mix(h, scenario.clutter_spread_velocity_mps);
    for (const auto& b : scenario.birds) {
        hash_mix(h, b.wing_length_m);
        hash_mix(h, b.flap_rate_rad_s);
        hash_mix(h, b.initial_phase_rad);
        hash_mix(h, b.body_radial_velocity_mps);
        hash_mix(h, b.corner.face_length_m);
        hash_mix(h, b.corner.face_width_m);
    }
    return h;
}

IqSeries synthesize_dwell(const core::FlockScenario& scenario,
                          const core::RadarConfig& radar, std::uint64_t seed,
                          WingModel model) {
    radar.validate();
    scenario.validate();

    const double fs = radar.sample_rate_hz;
    for (std::size_t k = 0; k < scenario.birds.size(); ++k) {
        const auto& b = scenario.birds[k];
        const double body = std::abs(core::doppler_shift(b.body_radial_velocity_mps,
                                                         radar.wavelength_m));
        const double envelope =
            2.0 * b.wing_length_m * b.flap_rate_rad_s / radar.wavelength_m;
        if (body + envelope >= fs / 2.0) {
            throw config_error("bird " + std::to_string(k) +
                               ": body Doppler plus wing envelope exceeds Nyquist (" +
                               std::to_string(body + envelope) + " Hz >= " +
                               std::to_string(fs / 2.0) + " Hz)");
        }
    }

    const auto n = static_cast<std::size_t>(std::llround(radar.dwell_time_s * fs));
    IqSeries iq;
    iq.samples.assign(n, {0.0, 0.0});
    iq.sample_rate_hz = fs;
    iq.duration_s = radar.dwell_time_s;
    iq.scenario_hash = scenario_hash(scenario, radar);
    iq.seed = seed;

    const double t_mid = radar.dwell_time_s / 2.0;

    for (const auto& raw : scenario.birds) {
        const auto bird = raw.normalized();
        const double f_body = core::doppler_shift(bird.body_radial_velocity_mps,
                                                  radar.wavelength_m);
        const double a_body = body_amplitude(bird, radar);
        const double a_wing = core::fwm_amplitude(bird, radar);
        const double f_line = wing_line_offset_hz(bird, radar);
        // Body start phase: the micro-motion phase at t = 0, so same-velocity
        // bodies in a flock add with scattered phases instead of coherently.
        const double psi = wing_phase(bird, radar.wavelength_m, 0.0);
        // Tone phase chosen so the dwell_line approximation agrees with the
        // full phase history at the dwell center.
        const double theta =
            wing_phase(bird, radar.wavelength_m, t_mid) - core::kTwoPi * f_line * t_mid;

        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / fs;
            const double body_arg = core::kTwoPi * f_body * t + psi;
            iq.samples[i] += a_body * std::complex<double>(std::cos(body_arg),
                                                           std::sin(body_arg));
            double wing_arg;
            if (model == WingModel::dwell_line) {
                wing_arg = core::kTwoPi * (f_body + f_line) * t + theta;
            } else {
                wing_arg = body_arg + wing_phase(bird, radar.wavelength_m, t);
            }
            iq.samples[i] += a_wing * std::complex<double>(std::cos(wing_arg),
                                                           std::sin(wing_arg));
        }
    }

    if (scenario.noise_snr_db) {
        iq = add_noise(iq, *scenario.noise_snr_db, seed ^ kNoiseSeedSalt);
    }
    if (scenario.clutter_scr_db) {
        ClutterSpec clutter;
        clutter.spread_velocity_mps = scenario.clutter_spread_velocity_mps;
        clutter.scr_db = *scenario.clutter_scr_db;
        iq = add_sea_clutter(iq, clutter, radar, seed ^ kClutterSeedSalt);
    }
    return iq;
}

IqSeries add_noise(const IqSeries& iq, double snr_db, std::uint64_t seed) {
    if (iq.samples.empty()) throw std::invalid_argument("empty I/Q series");
    if (std::isinf(snr_db) && snr_db > 0.0) return iq;
    const double noise_power = iq.mean_power() / std::pow(10.0, snr_db / 10.0);
    return add_noise_power(iq, noise_power, seed);
}

IqSeries add_noise_power(const IqSeries& iq, double noise_power, std::uint64_t seed) {
    IqSeries out = iq;
    if (noise_power <= 0.0) return out;
    Rng rng(seed);
    const double sigma = std::sqrt(noise_power / 2.0);
    for (auto& s : out.samples) s += sigma * rng.complex_gaussian();
    return out;
}

IqSeries add_sea_clutter(const IqSeries& iq, const ClutterSpec& clutter,
                         const core::RadarConfig& radar, std::uint64_t seed) {
    if (iq.samples.empty()) throw std::invalid_argument("empty I/Q series");
    if (std::isinf(clutter.scr_db) && clutter.scr_db > 0.0) return iq;
    if (!(clutter.spread_velocity_mps > 0.0)) {
        throw std::invalid_argument("clutter spread velocity must be > 0");
    }

    const std::size_t n = iq.samples.size();
    const std::size_t nfft = spectral::next_pow2(n);
    const double fs = iq.sample_rate_hz;
    const double f_center =
        core::doppler_shift(clutter.center_velocity_mps, radar.wavelength_m);
    const double sigma_f =
        (2.0 / radar.wavelength_m) * clutter.spread_velocity_mps;

    // White complex Gaussian shaped by a Gaussian PSD around f_center.
    Rng rng(seed);
    std::vector<std::complex<double>> c(nfft);
    for (auto& s : c) s = rng.complex_gaussian();
    spectral::fft_inplace(c);
    for (std::size_t k = 0; k < nfft; ++k) {
        double f = static_cast<double>(k) * fs / static_cast<double>(nfft);
        if (f >= fs / 2.0) f -= fs;
        const double d = (f - f_center) / sigma_f;
        c[k] *= std::exp(-0.25 * d * d);  // sqrt of Gaussian PSD
    }
    spectral::ifft_inplace(c);

    double p = 0.0;
    for (std::size_t i = 0; i < n; ++i) p += std::norm(c[i]);
    p /= static_cast<double>(n);
    const double target = iq.mean_power() / std::pow(10.0, clutter.scr_db / 10.0);
    const double scale = p > 0.0 ? std::sqrt(target / p) : 0.0;

    IqSeries out = iq;
    for (std::size_t i = 0; i < n; ++i) out.samples[i] += scale * c[i];
    return out;
}

}  // namespace fwm::synth
