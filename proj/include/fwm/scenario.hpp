#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fwm/core_model.hpp"
#include "fwm/fwm_detect.hpp"
#include "fwm/spectral.hpp"
#include "fwm/track_synth.hpp"

namespace fwm::scenario {

inline constexpr const char* kSchemaVersion = "1";

struct AnalysisParams {
    spectral::Window window = spectral::Window::hamming;
    int fft_factor = 4;  // fft length = next_pow2(fft_factor * samples)
    detect::DetectionParams detection;
};

struct TrackParams {
    double duration_s = 300.0;
    double update_interval_s = 60.0;
    double range_start_km = 4.84;
    double range_end_km = 8.75;
    double noise_rel_db = -20.0;
    bool rephase_per_update = false;
};

// Parsed scenario document: radar + flock + seed, optional analysis
// overrides and track cadence.
struct ScenarioDoc {
    core::RadarConfig radar;
    core::FlockScenario flock;
    std::uint64_t seed = 0;
    AnalysisParams analysis;
    std::optional<TrackParams> track;
};

// Parses a JSON scenario file. Throws fwm::parse_error with a dotted
// field path on any malformed or missing field.
ScenarioDoc load_scenario(const std::string& path);
ScenarioDoc parse_scenario(const std::string& text, const std::string& origin);

// Parses a standalone analysis-parameter JSON document.
AnalysisParams load_analysis_params(const std::string& path);

track::TrackScenario to_track_scenario(const ScenarioDoc& doc);

}  // namespace fwm::scenario
