#include "fwm/track_synth.hpp"

#include <cmath>

#include "fwm/echo_synth.hpp"
#include "fwm/errors.hpp"
#include "fwm/rng.hpp"

namespace fwm::track {

int TrackScenario::update_count() const {
    return static_cast<int>(duration_s / update_interval_s);
}

double predicted_snr_db(double base_snr_db, double range_km, double reference_range_km) {
    return base_snr_db - 40.0 * std::log10(range_km / reference_range_km);
}

TrackState run_track(const TrackScenario& scenario, std::uint64_t seed) {
    scenario.radar.validate();
    scenario.flock.validate();
    const int n_updates = scenario.update_count();
    if (n_updates < 1) throw config_error("track cadence yields no updates");

    // Clean synthesis; noise and clutter are applied by the harness so the
    // range law can be folded in.
    core::FlockScenario clean = scenario.flock;
    clean.noise_snr_db.reset();
    clean.clutter_scr_db.reset();

    Rng phase_rng(seed ^ 0xa5a5a5a5deadbeefull);

    double reference_power = -1.0;
    TrackState state;
    state.update_interval_s = scenario.update_interval_s;
    for (int u = 0; u < n_updates; ++u) {
        const double t = scenario.update_interval_s * static_cast<double>(u);
        const double frac =
            n_updates > 1 ? static_cast<double>(u) / static_cast<double>(n_updates - 1) : 0.0;
        const double range_km =
            scenario.range_start_km + frac * (scenario.range_end_km - scenario.range_start_km);

        core::FlockScenario flock = clean;
        if (scenario.rephase_per_update && u > 0) {
            for (auto& b : flock.birds) {
                b.initial_phase_rad = phase_rng.uniform(-M_PI, M_PI);
            }
        }

        auto iq = synth::synthesize_dwell(flock, scenario.radar,
                                          seed + static_cast<std::uint64_t>(u));
        if (reference_power < 0.0) reference_power = iq.mean_power();

        // R^-4 power scaling relative to the starting range.
        const double amp = std::pow(scenario.range_start_km / range_km, 2.0);
        for (auto& s : iq.samples) s *= amp;

        if (scenario.flock.clutter_scr_db) {
            synth::ClutterSpec clutter;
            clutter.spread_velocity_mps = scenario.flock.clutter_spread_velocity_mps;
            clutter.scr_db = *scenario.flock.clutter_scr_db;
            iq = synth::add_sea_clutter(iq, clutter, scenario.radar,
                                        seed ^ (0x51ed2700cafe0000ull + u));
        }
        const double noise_power =
            reference_power * std::pow(10.0, scenario.noise_rel_db / 10.0);
        iq = synth::add_noise_power(iq, noise_power,
                                    seed ^ (0x9e3779b900000000ull + u));

        const auto spectrum =
            spectral::periodogram(iq, scenario.window, scenario.radar.wavelength_m);
        const auto peaks = detect::detect_fwm_peaks(spectrum, scenario.detection);
        detect::FwmEstimate est;
        if (peaks.peaks.size() >= 2) {
            est = detect::mean_wingbeat(peaks);
        } else {
            est.n_peaks = static_cast<int>(peaks.peaks.size());
            est.bird_count = detect::count_birds(peaks);
        }
        const double snr = measure_snr(spectrum, peaks);
        const double scr = measure_scr(
            spectrum, peaks, scenario.detection.clutter_exclusion_velocity_mps);
        state = track_update(std::move(state), t, range_km, std::move(est), snr, scr);
    }
    return state;
}

}  // namespace fwm::track
