#include "fwm/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "fwm/errors.hpp"

namespace fwm::io {

namespace {

using nlohmann::json;

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::uint64_t hash_from_hex(const std::string& s) {
    return std::strtoull(s.c_str(), nullptr, 16);
}

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(path, e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_iq(const std::string& bin_path, const std::string& sidecar_path,
              const synth::IqSeries& iq, const core::RadarConfig& radar) {
    std::ofstream out(bin_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write: " + bin_path);
    std::vector<float> interleaved;
    interleaved.reserve(2 * iq.samples.size());
    for (const auto& s : iq.samples) {
        interleaved.push_back(static_cast<float>(s.real()));
        interleaved.push_back(static_cast<float>(s.imag()));
    }
    out.write(reinterpret_cast<const char*>(interleaved.data()),
              static_cast<std::streamsize>(interleaved.size() * sizeof(float)));
    if (!out) throw std::runtime_error("write failed: " + bin_path);

    json side;
    side["schema_version"] = kSchemaVersion;
    side["kind"] = "iq_sidecar";
    side["sample_rate_hz"] = iq.sample_rate_hz;
    side["duration_s"] = iq.duration_s;
    side["n_samples"] = iq.samples.size();
    side["seed"] = iq.seed;
    side["scenario_hash"] = hash_hex(iq.scenario_hash);
    side["radar"] = {{"wavelength_m", radar.wavelength_m},
                     {"dwell_time_s", radar.dwell_time_s},
                     {"sample_rate_hz", radar.sample_rate_hz},
                     {"range_resolution_m", radar.range_resolution_m},
                     {"velocity_resolution_mps", radar.velocity_resolution_mps}};
    write_text(sidecar_path, side.dump(2) + "\n");
}

LoadedIq read_iq(const std::string& bin_path, const std::string& sidecar_path) {
    const json side = load_json(sidecar_path);
    if (!side.contains("kind") || side["kind"] != "iq_sidecar") {
        throw parse_error(sidecar_path + ".kind", "not an I/Q sidecar");
    }
    if (side["schema_version"].get<std::string>() != kSchemaVersion) {
        throw parse_error(sidecar_path + ".schema_version", "unsupported version");
    }

    LoadedIq out;
    out.iq.sample_rate_hz = side["sample_rate_hz"].get<double>();
    out.iq.duration_s = side["duration_s"].get<double>();
    out.iq.seed = side["seed"].get<std::uint64_t>();
    out.iq.scenario_hash = hash_from_hex(side["scenario_hash"].get<std::string>());
    const auto& radar = side["radar"];
    out.radar.wavelength_m = radar["wavelength_m"].get<double>();
    out.radar.dwell_time_s = radar["dwell_time_s"].get<double>();
    out.radar.sample_rate_hz = radar["sample_rate_hz"].get<double>();
    out.radar.range_resolution_m = radar["range_resolution_m"].get<double>();
    out.radar.velocity_resolution_mps = radar["velocity_resolution_mps"].get<double>();

    std::ifstream in(bin_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + bin_path);
    const auto n = side["n_samples"].get<std::size_t>();
    std::vector<float> interleaved(2 * n);
    in.read(reinterpret_cast<char*>(interleaved.data()),
            static_cast<std::streamsize>(interleaved.size() * sizeof(float)));
    if (static_cast<std::size_t>(in.gcount()) != interleaved.size() * sizeof(float)) {
        throw std::runtime_error("truncated I/Q file: " + bin_path);
    }
    out.iq.samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.iq.samples.emplace_back(interleaved[2 * i], interleaved[2 * i + 1]);
    }
    return out;
}

void write_spectrum_csv(const std::string& path, const spectral::DopplerSpectrum& s) {
    std::ostringstream out;
    out << "bin,frequency_hz,velocity_mps,magnitude_db\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
        out << k << ',' << format_double(s.frequency_hz[k]) << ','
            << format_double(s.velocity_mps[k]) << ','
            << format_double(s.magnitudes_db[k]) << '\n';
    }
    write_text(path, out.str());
}

spectral::DopplerSpectrum read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line != "bin,frequency_hz,velocity_mps,magnitude_db") {
        throw parse_error(path, "unexpected CSV header");
    }
    spectral::DopplerSpectrum s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != 4) throw parse_error(path, "bad row: " + line);
        s.frequency_hz.push_back(std::stod(cells[1]));
        s.velocity_mps.push_back(std::stod(cells[2]));
        s.magnitudes_db.push_back(cells[3] == "-inf"
                                      ? -std::numeric_limits<double>::infinity()
                                      : std::stod(cells[3]));
    }
    s.power.assign(s.magnitudes_db.size(), 0.0);
    if (s.frequency_hz.size() >= 2) {
        s.resolution_hz = s.frequency_hz[1] - s.frequency_hz[0];
    }
    return s;
}

void write_estimate_json(const std::string& path, const detect::FwmEstimate& estimate,
                         const detect::PeakSet& peaks) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "fwm_estimate";
    j["n_peaks"] = estimate.n_peaks;
    j["bird_count"] = estimate.bird_count;
    j["wing_velocities_mps"] = estimate.wing_velocities_mps;
    j["mean_spacing_hz"] = estimate.mean_spacing_hz;
    j["wingbeat_hz"] = estimate.wingbeat_hz;
    j["group_rate_hz"] = estimate.group_rate_hz;
    j["body_index"] = peaks.body_index;
    j["peaks"] = json::array();
    for (const auto& p : peaks.peaks) {
        j["peaks"].push_back({{"frequency_hz", p.frequency_hz},
                              {"velocity_mps", p.velocity_mps},
                              {"magnitude_db", std::isfinite(p.magnitude_db)
                                                   ? p.magnitude_db
                                                   : -400.0}});
    }
    write_text(path, j.dump(2) + "\n");
}

detect::FwmEstimate read_estimate_json(const std::string& path) {
    const json j = load_json(path);
    if (!j.contains("kind") || j["kind"] != "fwm_estimate") {
        throw parse_error(path + ".kind", "not an estimate document");
    }
    if (j["schema_version"].get<std::string>() != kSchemaVersion) {
        throw parse_error(path + ".schema_version", "unsupported version");
    }
    detect::FwmEstimate e;
    e.n_peaks = j["n_peaks"].get<int>();
    e.bird_count = j["bird_count"].get<int>();
    e.wing_velocities_mps = j["wing_velocities_mps"].get<std::vector<double>>();
    e.mean_spacing_hz = j["mean_spacing_hz"].get<double>();
    e.wingbeat_hz = j["wingbeat_hz"].get<double>();
    e.group_rate_hz = j["group_rate_hz"].get<double>();
    return e;
}

void write_track_report_json(const std::string& path, const track::TrackReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "track_report";
    j["mean_bird_count"] = r.mean_bird_count;
    j["bird_count_ceiling"] = r.bird_count_ceiling;
    j["mean_wingbeat_hz"] = r.mean_wingbeat_hz;
    j["snr_min_db"] = r.snr_range_db.first;
    j["snr_max_db"] = r.snr_range_db.second;
    j["scr_min_db"] = r.scr_range_db.first;
    j["scr_max_db"] = r.scr_range_db.second;
    j["snr_fluctuation_db"] = r.snr_fluctuation_db;
    j["scr_fluctuation_db"] = r.scr_fluctuation_db;
    j["wing_velocity_traces_mps"] = r.wing_velocity_traces;
    write_text(path, j.dump(2) + "\n");
}

void write_track_csv(const std::string& path, const track::TrackState& state) {
    std::ostringstream out;
    out << "time_s,range_km,bird_count,wingbeat_hz,snr_db,scr_db,wing_velocities_mps\n";
    for (const auto& u : state.updates) {
        out << format_double(u.time_s) << ',' << format_double(u.range_km) << ','
            << u.estimate.bird_count << ',' << format_double(u.estimate.wingbeat_hz) << ','
            << format_double(u.snr_db) << ',' << format_double(u.scr_db) << ',';
        for (std::size_t i = 0; i < u.estimate.wing_velocities_mps.size(); ++i) {
            if (i) out << ';';
            out << format_double(u.estimate.wing_velocities_mps[i]);
        }
        out << '\n';
    }
    write_text(path, out.str());
}

}  // namespace fwm::io
