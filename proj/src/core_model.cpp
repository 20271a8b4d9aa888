#include "fwm/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fwm::core {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string(name) + " must be finite");
    }
}

}  // namespace

double normalize_phase(double angle_rad) {
    double r = std::fmod(angle_rad + M_PI, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r - M_PI;
}

void RadarConfig::validate() const {
    if (!(wavelength_m > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    if (!(dwell_time_s > 0.0)) throw std::invalid_argument("dwell time must be > 0");
    if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("sample rate must be > 0");
    if (!(velocity_resolution_mps > 0.0)) {
        throw std::invalid_argument("velocity resolution must be > 0");
    }
}

void CornerGeometry::validate() const {
    if (!(face_length_m > 0.0)) throw std::invalid_argument("corner face length must be > 0");
    if (!(face_width_m > 0.0)) throw std::invalid_argument("corner face width must be > 0");
}

void BirdKinematics::validate() const {
    if (!(wing_length_m > 0.0)) throw std::invalid_argument("wing length must be > 0");
    if (!(flap_rate_rad_s >= 0.0)) throw std::invalid_argument("flap rate must be >= 0");
    require_finite(flap_rate_rad_s, "flap rate");
    require_finite(initial_phase_rad, "initial phase");
    require_finite(body_radial_velocity_mps, "body radial velocity");
    corner.validate();
}

BirdKinematics BirdKinematics::normalized() const {
    BirdKinematics b = *this;
    b.initial_phase_rad = normalize_phase(initial_phase_rad);
    return b;
}

void FlockScenario::validate() const {
    if (birds.empty()) throw std::invalid_argument("scenario needs at least one bird");
    for (const auto& b : birds) b.validate();
    require_finite(flight_wavelength_cycles, "flight wavelength");
    if (clutter_scr_db && !(clutter_spread_velocity_mps > 0.0)) {
        throw std::invalid_argument("clutter spread velocity must be > 0");
    }
}

double wingtip_velocity(double flap_rate_rad_s, double wing_length_m, double phase_rad) {
    if (!(wing_length_m > 0.0)) throw std::invalid_argument("wing length must be > 0");
    require_finite(flap_rate_rad_s, "flap rate");
    require_finite(phase_rad, "phase");
    return flap_rate_rad_s * wing_length_m * std::cos(phase_rad);
}

double doppler_shift(double radial_velocity_mps, double wavelength_m) {
    if (!(wavelength_m > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    require_finite(radial_velocity_mps, "radial velocity");
    return -2.0 * radial_velocity_mps / wavelength_m;
}

double instantaneous_micro_doppler(const BirdKinematics& bird, double wavelength_m,
                                   double t_s) {
    if (!(wavelength_m > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    require_finite(t_s, "time");
    bird.validate();
    const double envelope = -2.0 * bird.wing_length_m * bird.flap_rate_rad_s / wavelength_m;
    return envelope * std::sin(bird.flap_rate_rad_s * t_s + bird.initial_phase_rad);
}

double dwell_micro_doppler(const BirdKinematics& bird, const RadarConfig& radar) {
    radar.validate();
    bird.validate();
    if (bird.flap_rate_rad_s == 0.0) return 0.0;
    const double phi0 = bird.initial_phase_rad;
    const double bracket =
        std::cos(bird.flap_rate_rad_s * radar.dwell_time_s + phi0) - std::cos(phi0);
    return (-2.0 * bird.wing_length_m / radar.wavelength_m) * bracket;
}

double wcr_rcs(const CornerGeometry& corner, double gait_angle_rad, double wavelength_m) {
    corner.validate();
    if (!(wavelength_m > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    if (!(gait_angle_rad >= 0.0)) {
        throw std::invalid_argument("gait factor must be >= 0 (negative RCS is unphysical)");
    }
    const double a2 = corner.face_length_m * corner.face_length_m;
    const double b2 = corner.face_width_m * corner.face_width_m;
    return 8.0 * M_PI * a2 * b2 * gait_angle_rad / (wavelength_m * wavelength_m);
}

double gait_factor(double initial_phase_rad) {
    return std::clamp(std::abs(initial_phase_rad), 0.0, M_PI);
}

double fwm_amplitude(const BirdKinematics& bird, const RadarConfig& radar) {
    radar.validate();
    bird.validate();
    const double sigma =
        wcr_rcs(bird.corner, gait_factor(bird.initial_phase_rad), radar.wavelength_m);
    // |integral_0^Tr e^{-j 2 pi t} dt| = |sin(pi Tr)| / pi
    const double carrier = std::abs(std::sin(M_PI * radar.dwell_time_s)) / M_PI;
    return sigma * carrier;
}

double spatial_phase(double temporal_phase_rad, double flight_wavelength_cycles) {
    require_finite(temporal_phase_rad, "temporal phase");
    require_finite(flight_wavelength_cycles, "flight wavelength");
    return temporal_phase_rad - kTwoPi * flight_wavelength_cycles;
}

PhaseAngle make_phase_angle(double temporal_phase_rad, double flight_wavelength_cycles) {
    return {temporal_phase_rad, spatial_phase(temporal_phase_rad, flight_wavelength_cycles)};
}

}  // namespace fwm::core
