#include "fwm/fwm_detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fwm/errors.hpp"

namespace fwm::detect {

namespace {

bool is_local_max(const std::vector<double>& db, std::size_t i) {
    if (i == 0 || i + 1 >= db.size()) return false;
    if (!std::isfinite(db[i])) return false;
    return db[i] > db[i - 1] && db[i] >= db[i + 1];
}

// Classic prominence: walk each side until terrain rises above the peak
// (or the edge); the base is the higher of the two side minima.
double prominence(const std::vector<double>& db, std::size_t i) {
    const double h = db[i];
    double left_min = h;
    for (std::size_t j = i; j-- > 0;) {
        if (db[j] > h) break;
        left_min = std::min(left_min, std::isfinite(db[j]) ? db[j] : -400.0);
    }
    double right_min = h;
    for (std::size_t j = i + 1; j < db.size(); ++j) {
        if (db[j] > h) break;
        right_min = std::min(right_min, std::isfinite(db[j]) ? db[j] : -400.0);
    }
    return h - std::max(left_min, right_min);
}

// Quadratic interpolation of the peak position from the three bins around it.
double refine_bin(const std::vector<double>& db, std::size_t i) {
    if (i == 0 || i + 1 >= db.size()) return static_cast<double>(i);
    const double y0 = db[i - 1];
    const double y1 = db[i];
    const double y2 = db[i + 1];
    if (!std::isfinite(y0) || !std::isfinite(y2)) return static_cast<double>(i);
    const double den = y0 - 2.0 * y1 + y2;
    if (den >= 0.0) return static_cast<double>(i);
    const double d = std::clamp((y0 - y2) / (2.0 * den), -0.5, 0.5);
    return static_cast<double>(i) + d;
}

}  // namespace

void DetectionParams::validate() const {
    if (min_prominence_db < 0.0 || max_depth_below_body_db < 0.0 ||
        clutter_exclusion_velocity_mps < 0.0 || min_separation_bins < 0) {
        throw std::invalid_argument("detection parameters must be nonnegative");
    }
}

PeakSet detect_fwm_peaks(const spectral::DopplerSpectrum& spectrum,
                         const DetectionParams& params) {
    params.validate();
    const auto& db = spectrum.magnitudes_db;
    if (db.empty()) throw std::invalid_argument("empty spectrum");

    const auto in_clutter = [&](std::size_t i) {
        return std::abs(spectrum.velocity_mps[i]) <= params.clutter_exclusion_velocity_mps;
    };

    // Body = global maximum outside the clutter zone.
    std::size_t body_bin = 0;
    double body_db = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < db.size(); ++i) {
        if (in_clutter(i) || !std::isfinite(db[i])) continue;
        if (db[i] > body_db) {
            body_db = db[i];
            body_bin = i;
        }
    }
    if (!std::isfinite(body_db)) {
        throw no_target_error("no spectral peak outside the clutter exclusion zone");
    }

    struct Candidate {
        std::size_t bin;
        double db;
        double prom;
    };
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < db.size(); ++i) {
        if (in_clutter(i)) continue;
        if (!is_local_max(db, i) && i != body_bin) continue;
        if (db[i] < body_db - params.max_depth_below_body_db) continue;
        const double p = prominence(db, i);
        if (i != body_bin && p < params.min_prominence_db) continue;
        cands.push_back({i, db[i], p});
    }

    // Greedy separation pruning, strongest first (the body survives).
    std::sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.bin == body_bin) return true;
        if (b.bin == body_bin) return false;
        if (a.db != b.db) return a.db > b.db;
        return a.bin < b.bin;
    });
    std::vector<Candidate> kept;
    for (const auto& c : cands) {
        bool ok = true;
        for (const auto& k : kept) {
            const auto d = c.bin > k.bin ? c.bin - k.bin : k.bin - c.bin;
            if (d < static_cast<std::size_t>(params.min_separation_bins)) {
                ok = false;
                break;
            }
        }
        if (ok) kept.push_back(c);
    }

    std::sort(kept.begin(), kept.end(),
              [](const Candidate& a, const Candidate& b) { return a.bin < b.bin; });

    PeakSet out;
    out.params = params;
    for (const auto& c : kept) {
        Peak p;
        p.bin = c.bin;
        p.magnitude_db = c.db;
        p.prominence_db = c.prom;
        const double fb = refine_bin(db, c.bin);
        p.frequency_hz = spectrum.frequency_hz.front() + fb * spectrum.resolution_hz;
        p.velocity_mps = -p.frequency_hz * spectrum.wavelength_m / 2.0;
        out.peaks.push_back(p);
    }
    for (std::size_t i = 0; i < out.peaks.size(); ++i) {
        if (out.peaks[i].bin == body_bin) out.body_index = i;
    }
    return out;
}

int count_birds(const PeakSet& peaks) {
    return std::max(0, static_cast<int>(peaks.peaks.size()) - 1);
}

std::vector<double> wing_radial_velocities(const PeakSet& peaks) {
    std::vector<double> out;
    const double body_v = peaks.peaks.at(peaks.body_index).velocity_mps;
    for (std::size_t i = 0; i < peaks.peaks.size(); ++i) {
        if (i == peaks.body_index) continue;
        out.push_back(peaks.peaks[i].velocity_mps - body_v);
    }
    return out;
}

FwmEstimate mean_wingbeat(const PeakSet& peaks, SpacingStat stat) {
    const auto& p = peaks.peaks;
    if (p.size() < 2) {
        throw insufficient_peaks_error("need at least 2 peaks to estimate wingbeat");
    }
    std::vector<double> spacings;
    for (std::size_t i = 1; i < p.size(); ++i) {
        spacings.push_back(std::abs(p[i].frequency_hz - p[i - 1].frequency_hz));
    }
    double df = 0.0;
    if (stat == SpacingStat::mean) {
        for (double s : spacings) df += s;
        df /= static_cast<double>(spacings.size());
    } else {
        std::sort(spacings.begin(), spacings.end());
        const std::size_t m = spacings.size() / 2;
        df = spacings.size() % 2 ? spacings[m] : 0.5 * (spacings[m - 1] + spacings[m]);
    }

    FwmEstimate e;
    e.n_peaks = static_cast<int>(p.size());
    e.bird_count = count_birds(peaks);
    e.wing_velocities_mps = wing_radial_velocities(peaks);
    e.mean_spacing_hz = df;
    const double n = static_cast<double>(e.bird_count);
    e.wingbeat_hz = df / (n * n);
    e.group_rate_hz = n * e.wingbeat_hz;
    return e;
}

}  // namespace fwm::detect
