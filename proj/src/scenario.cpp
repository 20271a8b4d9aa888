#include "fwm/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fwm/errors.hpp"

namespace fwm::scenario {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& path, const std::string& key,
                  std::optional<double> fallback = std::nullopt) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw parse_error(path + "." + key, "missing required number");
    }
    if (!j[key].is_number()) throw parse_error(path + "." + key, "expected a number");
    return j[key].get<double>();
}

bool get_bool(const json& j, const std::string& path, const std::string& key,
              bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean()) throw parse_error(path + "." + key, "expected a boolean");
    return j[key].get<bool>();
}

const json& get_object(const json& j, const std::string& path, const std::string& key) {
    if (!j.contains(key)) throw parse_error(path + "." + key, "missing required section");
    if (!j[key].is_object()) throw parse_error(path + "." + key, "expected an object");
    return j[key];
}

core::BirdKinematics parse_bird(const json& j, const std::string& path) {
    core::BirdKinematics b;
    b.wing_length_m = get_number(j, path, "wing_length_m");
    b.flap_rate_rad_s = core::kTwoPi * get_number(j, path, "flap_rate_hz");
    if (j.contains("initial_phase_rad")) {
        b.initial_phase_rad = get_number(j, path, "initial_phase_rad");
    } else if (j.contains("initial_phase_deg")) {
        b.initial_phase_rad = get_number(j, path, "initial_phase_deg") * M_PI / 180.0;
    } else {
        throw parse_error(path, "needs initial_phase_rad or initial_phase_deg");
    }
    b.body_radial_velocity_mps = get_number(j, path, "body_velocity_mps", 0.0);
    if (j.contains("corner")) {
        const auto& c = get_object(j, path, "corner");
        b.corner.face_length_m = get_number(c, path + ".corner", "face_length_m", 0.1);
        b.corner.face_width_m = get_number(c, path + ".corner", "face_width_m", 0.1);
    }
    try {
        b.validate();
    } catch (const std::exception& e) {
        throw parse_error(path, e.what());
    }
    return b.normalized();
}

AnalysisParams parse_analysis(const json& j, const std::string& path) {
    AnalysisParams a;
    if (j.contains("window")) {
        if (!j["window"].is_string()) throw parse_error(path + ".window", "expected a string");
        try {
            a.window = spectral::window_from_name(j["window"].get<std::string>());
        } catch (const std::exception& e) {
            throw parse_error(path + ".window", e.what());
        }
    }
    a.fft_factor = static_cast<int>(get_number(j, path, "fft_factor", 4.0));
    if (a.fft_factor < 1) throw parse_error(path + ".fft_factor", "must be >= 1");
    auto& d = a.detection;
    d.min_prominence_db = get_number(j, path, "min_prominence_db", d.min_prominence_db);
    d.max_depth_below_body_db =
        get_number(j, path, "max_depth_below_body_db", d.max_depth_below_body_db);
    d.clutter_exclusion_velocity_mps =
        get_number(j, path, "clutter_exclusion_mps", d.clutter_exclusion_velocity_mps);
    d.min_separation_bins = static_cast<int>(
        get_number(j, path, "min_separation_bins", d.min_separation_bins));
    try {
        d.validate();
    } catch (const std::exception& e) {
        throw parse_error(path, e.what());
    }
    return a;
}

json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(origin, e.what());
    }
}

}  // namespace

ScenarioDoc parse_scenario(const std::string& text, const std::string& origin) {
    const json j = parse_text(text, origin);

    if (j.contains("schema_version") &&
        j["schema_version"].get<std::string>() != kSchemaVersion) {
        throw parse_error("schema_version",
                          "unsupported version " + j["schema_version"].dump());
    }

    ScenarioDoc doc;
    const auto& radar = get_object(j, "", "radar");
    doc.radar.wavelength_m = get_number(radar, "radar", "wavelength_m");
    doc.radar.dwell_time_s = get_number(radar, "radar", "dwell_time_s");
    doc.radar.sample_rate_hz = get_number(radar, "radar", "sample_rate_hz", 80000.0);
    doc.radar.range_resolution_m = get_number(radar, "radar", "range_resolution_m", 12.0);
    doc.radar.velocity_resolution_mps =
        get_number(radar, "radar", "velocity_resolution_mps", 0.3);
    try {
        doc.radar.validate();
    } catch (const std::exception& e) {
        throw parse_error("radar", e.what());
    }

    const auto& flock = get_object(j, "", "flock");
    doc.flock.flight_wavelength_cycles =
        get_number(flock, "flock", "flight_wavelength_cycles", 0.0);
    if (flock.contains("noise_snr_db")) {
        doc.flock.noise_snr_db = get_number(flock, "flock", "noise_snr_db");
    }
    if (flock.contains("clutter_scr_db")) {
        doc.flock.clutter_scr_db = get_number(flock, "flock", "clutter_scr_db");
    }
    doc.flock.clutter_spread_velocity_mps =
        get_number(flock, "flock", "clutter_spread_mps", 0.5);
    if (!flock.contains("birds") || !flock["birds"].is_array() || flock["birds"].empty()) {
        throw parse_error("flock.birds", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < flock["birds"].size(); ++i) {
        doc.flock.birds.push_back(
            parse_bird(flock["birds"][i], "flock.birds[" + std::to_string(i) + "]"));
    }
    try {
        doc.flock.validate();
    } catch (const std::exception& e) {
        throw parse_error("flock", e.what());
    }

    doc.seed = static_cast<std::uint64_t>(get_number(j, "", "seed", 0.0));
    if (j.contains("analysis")) {
        doc.analysis = parse_analysis(get_object(j, "", "analysis"), "analysis");
    }
    if (j.contains("track")) {
        const auto& t = get_object(j, "", "track");
        TrackParams tp;
        tp.duration_s = get_number(t, "track", "duration_s", tp.duration_s);
        tp.update_interval_s = get_number(t, "track", "update_interval_s", tp.update_interval_s);
        tp.range_start_km = get_number(t, "track", "range_start_km", tp.range_start_km);
        tp.range_end_km = get_number(t, "track", "range_end_km", tp.range_end_km);
        tp.noise_rel_db = get_number(t, "track", "noise_rel_db", tp.noise_rel_db);
        tp.rephase_per_update = get_bool(t, "track", "rephase_per_update", false);
        if (!(tp.update_interval_s > 0.0)) {
            throw parse_error("track.update_interval_s", "must be > 0");
        }
        doc.track = tp;
    }
    return doc;
}

ScenarioDoc load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

AnalysisParams load_analysis_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open params file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const json j = parse_text(buf.str(), path);
    if (!j.is_object()) throw parse_error(path, "expected a JSON object");
    return parse_analysis(j, "analysis");
}

track::TrackScenario to_track_scenario(const ScenarioDoc& doc) {
    if (!doc.track) throw config_error("scenario has no track section");
    track::TrackScenario ts;
    ts.radar = doc.radar;
    ts.flock = doc.flock;
    ts.duration_s = doc.track->duration_s;
    ts.update_interval_s = doc.track->update_interval_s;
    ts.range_start_km = doc.track->range_start_km;
    ts.range_end_km = doc.track->range_end_km;
    ts.noise_rel_db = doc.track->noise_rel_db;
    ts.rephase_per_update = doc.track->rephase_per_update;
    ts.detection = doc.analysis.detection;
    ts.window = doc.analysis.window;
    return ts;
}

}  // namespace fwm::scenario
