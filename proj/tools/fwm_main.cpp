#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fwm/density.hpp"
#include "fwm/echo_synth.hpp"
#include "fwm/errors.hpp"
#include "fwm/io.hpp"
#include "fwm/scenario.hpp"
#include "fwm/track_synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit taxonomy: 0 ok, 1 I/O, 2 parse/validation, 3 Nyquist, 4 no target.
constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitParse = 2;
constexpr int kExitNyquist = 3;
constexpr int kExitNoTarget = 4;

bool log_enabled() {
    const char* v = std::getenv("FWM_LOG");
    return v != nullptr && std::string(v) != "" && std::string(v) != "off";
}

void log_line(const std::string& msg) {
    if (log_enabled()) std::cerr << "[fwm] " << msg << "\n";
}

int run_simulate(const std::string& scenario_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed_override) {
    if (!fs::exists(scenario_path)) {
        std::cerr << "error: scenario file not found: " << scenario_path << "\n";
        return kExitIo;
    }
    auto doc = fwm::scenario::load_scenario(scenario_path);
    if (seed_override) doc.seed = *seed_override;
    fs::create_directories(out_dir);
    const auto iq = fwm::synth::synthesize_dwell(doc.flock, doc.radar, doc.seed);
    fwm::io::write_iq((fs::path(out_dir) / "iq.bin").string(),
                      (fs::path(out_dir) / "iq.json").string(), iq, doc.radar);
    log_line("wrote " + std::to_string(iq.samples.size()) + " samples to " + out_dir);
    return kExitOk;
}

int run_analyze(const std::string& iq_path, const std::optional<std::string>& params_path,
                const std::string& out_dir) {
    const fs::path bin = iq_path;
    const fs::path sidecar = fs::path(iq_path).replace_extension(".json");
    if (!fs::exists(bin) || !fs::exists(sidecar)) {
        std::cerr << "error: missing I/Q file or sidecar for " << iq_path << "\n";
        return kExitIo;
    }
    fwm::scenario::AnalysisParams params;
    if (params_path) params = fwm::scenario::load_analysis_params(*params_path);

    const auto loaded = fwm::io::read_iq(bin.string(), sidecar.string());
    const std::size_t fft_length = fwm::spectral::next_pow2(
        static_cast<std::size_t>(params.fft_factor) * loaded.iq.samples.size());
    const auto spectrum = fwm::spectral::periodogram(loaded.iq, params.window, fft_length,
                                                     loaded.radar.wavelength_m);
    const auto peaks = fwm::detect::detect_fwm_peaks(spectrum, params.detection);
    fwm::detect::FwmEstimate estimate;
    if (peaks.peaks.size() >= 2) {
        estimate = fwm::detect::mean_wingbeat(peaks);
    } else {
        estimate.n_peaks = static_cast<int>(peaks.peaks.size());
        estimate.bird_count = fwm::detect::count_birds(peaks);
    }

    fs::create_directories(out_dir);
    fwm::io::write_spectrum_csv((fs::path(out_dir) / "spectrum.csv").string(), spectrum);
    fwm::io::write_estimate_json((fs::path(out_dir) / "estimate.json").string(), estimate,
                                 peaks);
    log_line("detected " + std::to_string(estimate.n_peaks) + " peaks, bird count " +
             std::to_string(estimate.bird_count));
    return kExitOk;
}

int run_track(const std::string& scenario_path, const std::string& out_dir) {
    if (!fs::exists(scenario_path)) {
        std::cerr << "error: scenario file not found: " << scenario_path << "\n";
        return kExitIo;
    }
    const auto doc = fwm::scenario::load_scenario(scenario_path);
    if (!doc.track) {
        std::cerr << "error: track: scenario has no track section\n";
        return kExitParse;
    }
    const auto ts = fwm::scenario::to_track_scenario(doc);
    const auto state = fwm::track::run_track(ts, doc.seed);
    const auto report = fwm::track::track_summary(state);
    fs::create_directories(out_dir);
    fwm::io::write_track_csv((fs::path(out_dir) / "track.csv").string(), state);
    fwm::io::write_track_report_json((fs::path(out_dir) / "report.json").string(), report);
    log_line("track with " + std::to_string(state.updates.size()) + " updates");
    return kExitOk;
}

int run_report(const std::string& results_dir, const std::string& out_path) {
    if (!fs::is_directory(results_dir)) {
        std::cerr << "error: not a directory: " << results_dir << "\n";
        return kExitIo;
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(results_dir)) {
        if (e.is_regular_file() && e.path().extension() == ".json") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());

    int n_estimates = 0;
    double count_sum = 0.0;
    double wingbeat_sum = 0.0;
    std::vector<double> fluctuations;
    for (const auto& f : files) {
        std::ifstream in(f);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error&) {
            continue;  // not a result bundle
        }
        if (!j.is_object() || !j.contains("kind")) continue;
        if (j.contains("schema_version") &&
            j["schema_version"].get<std::string>() != fwm::io::kSchemaVersion) {
            std::cerr << "error: " << f.string() << ": schema version mismatch\n";
            return kExitParse;
        }
        if (j["kind"] == "fwm_estimate") {
            ++n_estimates;
            count_sum += j["bird_count"].get<double>();
            wingbeat_sum += j["wingbeat_hz"].get<double>();
        } else if (j["kind"] == "track_report") {
            fluctuations.push_back(j["snr_fluctuation_db"].get<double>());
        }
    }
    if (n_estimates == 0 && fluctuations.empty()) {
        std::cerr << "error: no result bundles found in " << results_dir << "\n";
        return kExitParse;
    }

    json summary;
    summary["schema_version"] = fwm::io::kSchemaVersion;
    summary["kind"] = "summary";
    summary["n_estimates"] = n_estimates;
    if (n_estimates > 0) {
        summary["mean_bird_count"] = count_sum / n_estimates;
        summary["mean_wingbeat_hz"] = wingbeat_sum / n_estimates;
    }
    if (!fluctuations.empty()) {
        const double fluct = *std::max_element(fluctuations.begin(), fluctuations.end());
        const auto bounds = fwm::density::density_error_bounds(1.0, 0.028, fluct);
        summary["observed_snr_fluctuation_db"] = fluct;
        summary["density_error"] = {{"nominal_density_birds_km3", bounds.nominal_density},
                                    {"low_density_birds_km3", bounds.low_density},
                                    {"high_density_birds_km3", bounds.high_density},
                                    {"error_ratio", bounds.error_ratio}};
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitIo;
    }
    out << summary.dump(2) << "\n";
    return kExitOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const fwm::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const fwm::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        // Nyquist violations come from synthesis-time checks.
        return std::string(e.what()).find("Nyquist") != std::string::npos ? kExitNyquist
                                                                          : kExitParse;
    } catch (const fwm::no_target_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoTarget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FWM micro-Doppler toolkit: bird-flock dwell synthesis and analysis"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string iq_path;
    std::string results_dir;
    std::string out_path;
    std::optional<std::string> params_path;
    std::optional<std::uint64_t> seed_override;

    auto* simulate = app.add_subcommand("simulate", "Synthesize an I/Q dwell");
    simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("-o,--out", out_path, "Output directory")->required();
    std::uint64_t seed_value = 0;
    auto* seed_opt = simulate->add_option("--seed", seed_value, "Seed override");

    auto* analyze = app.add_subcommand("analyze", "Analyze an I/Q dwell");
    analyze->add_option("iq", iq_path, "I/Q .bin file (sidecar .json beside it)")->required();
    std::string params_value;
    auto* params_opt = analyze->add_option("--params", params_value, "Analysis params JSON");
    analyze->add_option("-o,--out", out_path, "Output directory")->required();

    auto* track = app.add_subcommand("track", "Run a synthetic track");
    track->add_option("scenario", scenario_path, "Scenario JSON with track section")
        ->required();
    track->add_option("-o,--out", out_path, "Output directory")->required();

    auto* report = app.add_subcommand("report", "Aggregate result bundles");
    report->add_option("results", results_dir, "Directory of result bundles")->required();
    report->add_option("-o,--out", out_path, "Summary JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    if (seed_opt->count()) seed_override = seed_value;
    if (params_opt->count()) params_path = params_value;

    if (simulate->parsed()) {
        return guarded([&] { return run_simulate(scenario_path, out_path, seed_override); });
    }
    if (analyze->parsed()) {
        return guarded([&] { return run_analyze(iq_path, params_path, out_path); });
    }
    if (track->parsed()) {
        return guarded([&] { return run_track(scenario_path, out_path); });
    }
    return guarded([&] { return run_report(results_dir, out_path); });
}
