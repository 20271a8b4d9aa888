#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "builders.hpp"
#include "fwm/errors.hpp"
#include "fwm/io.hpp"
#include "fwm/scenario.hpp"

using namespace fwm;
using namespace fwm::testing;
namespace fs = std::filesystem;

namespace {

const char* kGoodScenario = R"({
  "schema_version": "1",
  "radar": {"wavelength_m": 0.03, "dwell_time_s": 0.02, "sample_rate_hz": 80000},
  "flock": {
    "flight_wavelength_cycles": 0.0,
    "noise_snr_db": 12.0,
    "clutter_scr_db": 15.0,
    "clutter_spread_mps": 0.5,
    "birds": [
      {"wing_length_m": 0.6, "flap_rate_hz": 7.0, "initial_phase_deg": 45.0,
       "body_velocity_mps": -11.4},
      {"wing_length_m": 0.6, "flap_rate_hz": 7.0, "initial_phase_rad": -0.5,
       "body_velocity_mps": -11.4,
       "corner": {"face_length_m": 0.12, "face_width_m": 0.08}}
    ]
  },
  "seed": 42,
  "analysis": {"window": "hann", "fft_factor": 8, "min_prominence_db": 4.0},
  "track": {"duration_s": 300, "update_interval_s": 60, "range_start_km": 4.84,
            "range_end_km": 8.75, "rephase_per_update": true}
})";

fs::path temp_dir() {
    auto dir = fs::temp_directory_path() / "fwm_test_io";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("scenario parsing: full document") {
    const auto doc = scenario::parse_scenario(kGoodScenario, "test");
    CHECK(doc.radar.wavelength_m == doctest::Approx(0.03));
    CHECK(doc.radar.sample_rate_hz == doctest::Approx(80000.0));
    REQUIRE(doc.flock.birds.size() == 2);
    CHECK(doc.flock.birds[0].initial_phase_rad == doctest::Approx(core::kPi / 4.0));
    CHECK(doc.flock.birds[0].flap_rate_rad_s == doctest::Approx(core::kTwoPi * 7.0));
    CHECK(doc.flock.birds[1].initial_phase_rad == doctest::Approx(-0.5));
    CHECK(doc.flock.birds[1].corner.face_length_m == doctest::Approx(0.12));
    REQUIRE(doc.flock.noise_snr_db.has_value());
    CHECK(*doc.flock.noise_snr_db == doctest::Approx(12.0));
    REQUIRE(doc.flock.clutter_scr_db.has_value());
    CHECK(doc.seed == 42);
    CHECK(doc.analysis.window == spectral::Window::hann);
    CHECK(doc.analysis.fft_factor == 8);
    CHECK(doc.analysis.detection.min_prominence_db == doctest::Approx(4.0));
    // untouched detection knobs keep their defaults
    CHECK(doc.analysis.detection.max_depth_below_body_db == doctest::Approx(30.0));
    REQUIRE(doc.track.has_value());
    CHECK(doc.track->rephase_per_update);

    const auto ts = scenario::to_track_scenario(doc);
    CHECK(ts.update_interval_s == doctest::Approx(60.0));
    CHECK(ts.window == spectral::Window::hann);
    CHECK(ts.rephase_per_update);
}

TEST_CASE("scenario parsing: error paths carry dotted field names") {
    auto expect_field = [](const std::string& text, const std::string& field) {
        try {
            scenario::parse_scenario(text, "test");
            FAIL_CHECK("expected parse_error for ", field);
        } catch (const parse_error& e) {
            CHECK(e.field == field);
        }
    };
    expect_field(R"({"flock": {"birds": [{}]}})", ".radar");
    expect_field(R"({"radar": {"dwell_time_s": 0.02}, "flock": {"birds": [{}]}})",
                 "radar.wavelength_m");
    expect_field(
        R"({"radar": {"wavelength_m": 0.03, "dwell_time_s": "x"}, "flock": {}})",
        "radar.dwell_time_s");
    expect_field(
        R"({"radar": {"wavelength_m": 0.03, "dwell_time_s": 0.02}, "flock": {}})",
        "flock.birds");
    expect_field(
        R"({"radar": {"wavelength_m": 0.03, "dwell_time_s": 0.02},
            "flock": {"birds": [{"wing_length_m": 0.6, "flap_rate_hz": 7}]}})",
        "flock.birds[0]");
    expect_field(
        R"({"radar": {"wavelength_m": 0.03, "dwell_time_s": 0.02},
            "flock": {"birds": [{"wing_length_m": -1, "flap_rate_hz": 7,
                                 "initial_phase_rad": 0.5}]}})",
        "flock.birds[0]");
}

TEST_CASE("scenario parsing: malformed JSON and bad schema version") {
    CHECK_THROWS_AS(scenario::parse_scenario("{not json", "test"), parse_error);
    CHECK_THROWS_AS(scenario::parse_scenario(
                        R"({"schema_version": "99", "radar": {}, "flock": {}})", "test"),
                    parse_error);
    CHECK_THROWS_AS(scenario::load_scenario("/nonexistent/path.json"),
                    std::runtime_error);
}

TEST_CASE("standalone analysis params document") {
    const auto dir = temp_dir();
    const auto path = (dir / "params.json").string();
    std::ofstream(path) << R"({"window": "blackman", "max_depth_below_body_db": 40,
                               "clutter_exclusion_mps": 0.2, "min_separation_bins": 3})";
    const auto a = scenario::load_analysis_params(path);
    CHECK(a.window == spectral::Window::blackman);
    CHECK(a.detection.max_depth_below_body_db == doctest::Approx(40.0));
    CHECK(a.detection.clutter_exclusion_velocity_mps == doctest::Approx(0.2));
    CHECK(a.detection.min_separation_bins == 3);

    std::ofstream(path) << R"({"window": "kaiser"})";
    CHECK_THROWS_AS(scenario::load_analysis_params(path), parse_error);
}

TEST_CASE("I/Q round trip preserves samples at float precision and all metadata") {
    const auto dir = temp_dir();
    const auto radar = sim_fig2_radar();
    const auto iq = synth::synthesize_dwell(sim_fig2_flock(), radar, 77);
    const auto bin = (dir / "iq.bin").string();
    const auto side = (dir / "iq.json").string();
    io::write_iq(bin, side, iq, radar);
    const auto back = io::read_iq(bin, side);
    REQUIRE(back.iq.samples.size() == iq.samples.size());
    for (std::size_t i = 0; i < iq.samples.size(); i += 53) {
        CHECK(back.iq.samples[i].real() ==
              doctest::Approx(static_cast<float>(iq.samples[i].real())));
        CHECK(back.iq.samples[i].imag() ==
              doctest::Approx(static_cast<float>(iq.samples[i].imag())));
    }
    CHECK(back.iq.sample_rate_hz == iq.sample_rate_hz);
    CHECK(back.iq.seed == 77);
    CHECK(back.iq.scenario_hash == iq.scenario_hash);
    CHECK(back.radar.wavelength_m == radar.wavelength_m);
    CHECK(back.radar.dwell_time_s == radar.dwell_time_s);

    // truncated payload is rejected
    std::ofstream(bin, std::ios::binary) << "abc";
    CHECK_THROWS_AS(io::read_iq(bin, side), std::runtime_error);
    // wrong sidecar kind is rejected
    std::ofstream(side) << R"({"schema_version": "1", "kind": "other"})";
    CHECK_THROWS_AS(io::read_iq(bin, side), parse_error);
}

TEST_CASE("spectrum CSV round trip, including -inf bins") {
    const auto dir = temp_dir();
    spectral::DopplerSpectrum s;
    s.resolution_hz = 5.0;
    for (int i = 0; i < 32; ++i) {
        s.frequency_hz.push_back(-80.0 + 5.0 * i);
        s.velocity_mps.push_back(-s.frequency_hz.back() * 0.015);
        s.magnitudes_db.push_back(i == 7 ? -std::numeric_limits<double>::infinity()
                                         : -0.37 * i);
        s.power.push_back(1.0);
    }
    const auto path = (dir / "spectrum.csv").string();
    io::write_spectrum_csv(path, s);
    const auto back = io::read_spectrum_csv(path);
    REQUIRE(back.size() == 32);
    CHECK(back.resolution_hz == doctest::Approx(5.0));
    for (std::size_t i = 0; i < 32; ++i) {
        CHECK(back.frequency_hz[i] == doctest::Approx(s.frequency_hz[i]).epsilon(1e-10));
        if (i == 7) {
            CHECK(std::isinf(back.magnitudes_db[i]));
            CHECK(back.magnitudes_db[i] < 0.0);
        } else {
            CHECK(back.magnitudes_db[i] ==
                  doctest::Approx(s.magnitudes_db[i]).epsilon(1e-10));
        }
    }
    // header must match exactly
    std::ofstream(path) << "a,b,c,d\n1,2,3,4\n";
    CHECK_THROWS_AS(io::read_spectrum_csv(path), parse_error);
}

TEST_CASE("estimate JSON round trip") {
    const auto dir = temp_dir();
    const auto comb = direct_following_comb(4, 7.0, 2,
                                            std::numeric_limits<double>::infinity());
    const auto iq = synth::synthesize_dwell(comb.flock, comb.radar, 3);
    const auto spec = spectral::periodogram(iq, spectral::Window::hamming,
                                            comb.radar.wavelength_m);
    const auto peaks = detect::detect_fwm_peaks(spec, detect::DetectionParams{});
    const auto est = detect::mean_wingbeat(peaks);
    const auto path = (dir / "estimate.json").string();
    io::write_estimate_json(path, est, peaks);
    const auto back = io::read_estimate_json(path);
    CHECK(back.n_peaks == est.n_peaks);
    CHECK(back.bird_count == est.bird_count);
    CHECK(back.wingbeat_hz == doctest::Approx(est.wingbeat_hz).epsilon(1e-12));
    CHECK(back.mean_spacing_hz == doctest::Approx(est.mean_spacing_hz).epsilon(1e-12));
    CHECK(back.group_rate_hz == doctest::Approx(est.group_rate_hz).epsilon(1e-12));
    REQUIRE(back.wing_velocities_mps.size() == est.wing_velocities_mps.size());

    std::ofstream(path) << R"({"schema_version": "1", "kind": "track_report"})";
    CHECK_THROWS_AS(io::read_estimate_json(path), parse_error);
}

TEST_CASE("track outputs: report JSON keys and CSV shape") {
    const auto dir = temp_dir();
    track::TrackState state;
    detect::FwmEstimate e;
    e.n_peaks = 5;
    e.bird_count = 4;
    e.wingbeat_hz = 7.0;
    e.wing_velocities_mps = {1.5, 3.1, -2.0, -4.1};
    state = track::track_update(std::move(state), 0.0, 4.84, e, 12.31, 9.0);
    state = track::track_update(std::move(state), 60.0, 5.8, e, 8.0, 9.2);
    const auto report = track::track_summary(state);

    const auto jpath = (dir / "track_report.json").string();
    io::write_track_report_json(jpath, report);
    std::ifstream jin(jpath);
    std::string jtext((std::istreambuf_iterator<char>(jin)),
                      std::istreambuf_iterator<char>());
    CHECK(jtext.find("\"kind\": \"track_report\"") != std::string::npos);
    CHECK(jtext.find("snr_fluctuation_db") != std::string::npos);
    CHECK(jtext.find("wing_velocity_traces_mps") != std::string::npos);

    const auto cpath = (dir / "track.csv").string();
    io::write_track_csv(cpath, state);
    std::ifstream cin_(cpath);
    std::string header, row1, row2;
    REQUIRE(std::getline(cin_, header));
    CHECK(header == "time_s,range_km,bird_count,wingbeat_hz,snr_db,scr_db,wing_velocities_mps");
    REQUIRE(std::getline(cin_, row1));
    REQUIRE(std::getline(cin_, row2));
    CHECK(row1.find("0,4.84,4,7,") == 0);
    CHECK(row1.find(';') != std::string::npos);  // wing velocities are ;-joined
}
