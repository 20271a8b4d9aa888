#include "fwm/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fwm/errors.hpp"

namespace fwm::track {

TrackState track_update(TrackState state, double time_s, double range_km,
                        detect::FwmEstimate estimate, double snr_db, double scr_db) {
    if (!state.updates.empty() && time_s <= state.updates.back().time_s) {
        throw ordering_error("track update times must be strictly increasing");
    }
    state.updates.push_back({time_s, range_km, std::move(estimate), snr_db, scr_db});
    return state;
}

TrackReport track_summary(const TrackState& state) {
    if (state.updates.empty()) throw empty_track_error("track has no updates");

    TrackReport r;
    double count_sum = 0.0;
    double wb_sum = 0.0;
    double snr_min = std::numeric_limits<double>::infinity();
    double snr_max = -snr_min;
    double scr_min = snr_min;
    double scr_max = -snr_min;
    for (const auto& u : state.updates) {
        count_sum += u.estimate.bird_count;
        wb_sum += u.estimate.wingbeat_hz;
        snr_min = std::min(snr_min, u.snr_db);
        snr_max = std::max(snr_max, u.snr_db);
        scr_min = std::min(scr_min, u.scr_db);
        scr_max = std::max(scr_max, u.scr_db);
        r.wing_velocity_traces.push_back(u.estimate.wing_velocities_mps);
    }
    const double n = static_cast<double>(state.updates.size());
    r.mean_bird_count = count_sum / n;
    r.bird_count_ceiling = static_cast<int>(std::ceil(r.mean_bird_count));
    r.mean_wingbeat_hz = wb_sum / n;
    r.snr_range_db = {snr_min, snr_max};
    r.scr_range_db = {scr_min, scr_max};
    r.snr_fluctuation_db = snr_max - snr_min;
    r.scr_fluctuation_db = scr_max - scr_min;
    return r;
}

double measure_snr(const spectral::DopplerSpectrum& spectrum,
                   const detect::PeakSet& peaks) {
    const double body_power = spectrum.power.at(peaks.peaks.at(peaks.body_index).bin);
    std::vector<double> sorted = spectrum.power;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    double floor_sum = 0.0;
    std::size_t floor_n = 0;
    for (double p : spectrum.power) {
        if (p <= 2.0 * median) {
            floor_sum += p;
            ++floor_n;
        }
    }
    const double floor = floor_n ? floor_sum / static_cast<double>(floor_n) : 0.0;
    if (floor <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(body_power / floor);
}

double measure_scr(const spectral::DopplerSpectrum& spectrum, const detect::PeakSet& peaks,
                   double clutter_exclusion_mps) {
    const double body_power = spectrum.power.at(peaks.peaks.at(peaks.body_index).bin);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < spectrum.power.size(); ++i) {
        if (std::abs(spectrum.velocity_mps[i]) <= clutter_exclusion_mps) {
            sum += spectrum.power[i];
            ++n;
        }
    }
    if (n == 0 || sum <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(body_power / (sum / static_cast<double>(n)));
}

}  // namespace fwm::track
