#pragma once

#include <cstdint>

#include "fwm/core_model.hpp"
#include "fwm/tracker.hpp"

namespace fwm::track {

// Synthetic track harness reproducing the range-sweep study: per update
// the dwell is synthesized, scaled by the radar-equation R^-4 power law
// relative to the starting range, degraded by receiver noise of fixed
// absolute power, and analyzed. Clutter (when enabled) is a received
// power like the signal, so the clutter-to-signal ratio stays put while
// the signal-to-noise ratio falls with range.
struct TrackScenario {
    core::RadarConfig radar;
    core::FlockScenario flock;
    double duration_s = 300.0;
    double update_interval_s = 60.0;
    double range_start_km = 4.84;
    double range_end_km = 8.75;
    // Noise power relative to the clean signal power at the starting range.
    double noise_rel_db = -20.0;
    // Redraw every bird's initial phase per update (wing-driven RCS
    // fluctuation); bird count and flap rate are preserved.
    bool rephase_per_update = false;
    detect::DetectionParams detection;
    spectral::Window window = spectral::Window::hamming;

    int update_count() const;
};

// Noise-limited SNR trend before wing fluctuation: base - 40*log10(R/R0).
double predicted_snr_db(double base_snr_db, double range_km, double reference_range_km);

TrackState run_track(const TrackScenario& scenario, std::uint64_t seed);

}  // namespace fwm::track
