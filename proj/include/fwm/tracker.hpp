#pragma once

#include <utility>
#include <vector>

#include "fwm/fwm_detect.hpp"

namespace fwm::track {

struct TrackUpdate {
    double time_s = 0.0;
    double range_km = 0.0;
    detect::FwmEstimate estimate;
    double snr_db = 0.0;
    double scr_db = 0.0;
};

struct TrackState {
    std::vector<TrackUpdate> updates;  // strictly increasing times
    double update_interval_s = 60.0;
};

struct TrackReport {
    double mean_bird_count = 0.0;
    int bird_count_ceiling = 0;  // ceil(mean_bird_count)
    double mean_wingbeat_hz = 0.0;
    std::pair<double, double> snr_range_db{0.0, 0.0};  // (min, max)
    std::pair<double, double> scr_range_db{0.0, 0.0};
    double snr_fluctuation_db = 0.0;  // max - min
    double scr_fluctuation_db = 0.0;
    std::vector<std::vector<double>> wing_velocity_traces;  // per update
};

// Appends one observation; throws fwm::ordering_error on non-monotone time.
TrackState track_update(TrackState state, double time_s, double range_km,
                        detect::FwmEstimate estimate, double snr_db, double scr_db);

// Arithmetic means, min/max ranges, ceiling rule for the bird count.
// Throws fwm::empty_track_error on an empty track.
TrackReport track_summary(const TrackState& state);

// Body-line peak power over the mean noise-floor power. The floor is the
// mean of the bins at or below twice the median bin power.
double measure_snr(const spectral::DopplerSpectrum& spectrum, const detect::PeakSet& peaks);

// Body-line peak power over the mean power inside the clutter zone
// |v| <= exclusion half-width.
double measure_scr(const spectral::DopplerSpectrum& spectrum, const detect::PeakSet& peaks,
                   double clutter_exclusion_mps);

}  // namespace fwm::track
