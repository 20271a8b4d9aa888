#pragma once

#include <string>

#include "fwm/echo_synth.hpp"
#include "fwm/fwm_detect.hpp"
#include "fwm/spectral.hpp"
#include "fwm/tracker.hpp"

namespace fwm::io {

inline constexpr const char* kSchemaVersion = "1";

// Raw I/Q: interleaved little-endian float32 I,Q pairs plus a JSON
// sidecar carrying sample rate, duration, seed, scenario hash and the
// radar wavelength needed to calibrate velocity axes downstream.
void write_iq(const std::string& bin_path, const std::string& sidecar_path,
              const synth::IqSeries& iq, const core::RadarConfig& radar);

struct LoadedIq {
    synth::IqSeries iq;
    core::RadarConfig radar;
};
LoadedIq read_iq(const std::string& bin_path, const std::string& sidecar_path);

// Columnar spectrum: "bin,frequency_hz,velocity_mps,magnitude_db".
void write_spectrum_csv(const std::string& path, const spectral::DopplerSpectrum& s);
spectral::DopplerSpectrum read_spectrum_csv(const std::string& path);

void write_estimate_json(const std::string& path, const detect::FwmEstimate& estimate,
                         const detect::PeakSet& peaks);
detect::FwmEstimate read_estimate_json(const std::string& path);

void write_track_report_json(const std::string& path, const track::TrackReport& report);
void write_track_csv(const std::string& path, const track::TrackState& state);

}  // namespace fwm::io
