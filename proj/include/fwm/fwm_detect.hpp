#pragma once

#include <cstddef>
#include <vector>

#include "fwm/spectral.hpp"

namespace fwm::detect {

struct DetectionParams {
    double min_prominence_db = 6.0;
    double max_depth_below_body_db = 30.0;
    double clutter_exclusion_velocity_mps = 1.0;  // half-width around zero velocity
    int min_separation_bins = 2;

    void validate() const;
};

struct Peak {
    double frequency_hz = 0.0;  // parabolic-interpolated
    double velocity_mps = 0.0;
    double magnitude_db = 0.0;
    std::size_t bin = 0;
    double prominence_db = 0.0;
};

struct PeakSet {
    std::vector<Peak> peaks;     // sorted by frequency
    std::size_t body_index = 0;  // maximum-magnitude peak
    DetectionParams params;
};

enum class SpacingStat { mean, median };

struct FwmEstimate {
    int n_peaks = 0;
    int bird_count = 0;                       // n_peaks - 1
    std::vector<double> wing_velocities_mps;  // body-removed, frequency order
    double mean_spacing_hz = 0.0;             // delta f between adjacent peaks
    double wingbeat_hz = 0.0;                 // delta f / N^2
    double group_rate_hz = 0.0;               // N * wingbeat
};

// Local maxima with the required prominence, depth below the body line,
// separation, and clutter exclusion. The body peak is the global maximum
// outside the clutter zone. Throws fwm::no_target_error if nothing is left.
PeakSet detect_fwm_peaks(const spectral::DopplerSpectrum& spectrum,
                         const DetectionParams& params);

// One peak is the body; every other peak is one bird.
int count_birds(const PeakSet& peaks);

// velocity(peak) - velocity(body) for every non-body peak, frequency order.
std::vector<double> wing_radial_velocities(const PeakSet& peaks);

// Mean wingbeat from the FWM peak spacing (needs >= 2 peaks).
FwmEstimate mean_wingbeat(const PeakSet& peaks, SpacingStat stat = SpacingStat::mean);

}  // namespace fwm::detect
