#pragma once

#include <optional>
#include <vector>

namespace fwm::core {

inline constexpr double kPi = 3.1415926535897932384626433832795;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wraps an angle into [-pi, pi).
double normalize_phase(double angle_rad);

// Sensing-system parameters for one dwell.
struct RadarConfig {
    double wavelength_m = 0.03;
    double dwell_time_s = 0.02;
    double sample_rate_hz = 80000.0;
    double range_resolution_m = 12.0;
    double velocity_resolution_mps = 0.3;

    void validate() const;  // throws std::invalid_argument
};

// Flat-plate corner reflector faces of the wing pair.
struct CornerGeometry {
    double face_length_m = 0.1;  // a
    double face_width_m = 0.1;   // b

    void validate() const;
};

struct BirdKinematics {
    double wing_length_m = 0.6;
    double flap_rate_rad_s = 0.0;       // omega; configs accept Hz, converted by 2*pi
    double initial_phase_rad = 0.0;     // phi_0, normalized to [-pi, pi)
    double body_radial_velocity_mps = 0.0;  // signed, toward radar negative
    CornerGeometry corner;

    void validate() const;
    BirdKinematics normalized() const;  // initial phase wrapped to [-pi, pi)
};

struct FlockScenario {
    std::vector<BirdKinematics> birds;
    double flight_wavelength_cycles = 0.0;   // lambda_f
    std::optional<double> noise_snr_db;      // absent = noiseless
    std::optional<double> clutter_scr_db;    // absent = no clutter
    double clutter_spread_velocity_mps = 0.5;

    void validate() const;
};

struct PhaseAngle {
    double temporal_phase_rad = 0.0;
    double spatial_phase_rad = 0.0;
};

// Wingtip radial velocity omega*L*cos(phase), m/s.
double wingtip_velocity(double flap_rate_rad_s, double wing_length_m, double phase_rad);

// Doppler shift f = -2v/lambda; this sign convention is used throughout.
double doppler_shift(double radial_velocity_mps, double wavelength_m);

// Instantaneous wing micro-Doppler (-2*L*omega/lambda)*sin(omega*t + phi0), Hz.
double instantaneous_micro_doppler(const BirdKinematics& bird, double wavelength_m,
                                   double t_s);

// Dwell-integrated micro-Doppler of one wing:
// (-2L/lambda) * [cos(omega*T_r + phi0) - cos(phi0)].
double dwell_micro_doppler(const BirdKinematics& bird, const RadarConfig& radar);

// Corner-reflector RCS 8*pi*a^2*b^2*gait/lambda^2, m^2.
double wcr_rcs(const CornerGeometry& corner, double gait_angle_rad, double wavelength_m);

// Gait factor used for synthesis: |phi0| clamped to [0, pi].
double gait_factor(double initial_phase_rad);

// Magnitude of the dwell-integrated corner-reflector return; proportional
// to the gait factor for fixed geometry and dwell.
double fwm_amplitude(const BirdKinematics& bird, const RadarConfig& radar);

// Formation phasing: phi_s = phi_t - 2*pi*lambda_f.
double spatial_phase(double temporal_phase_rad, double flight_wavelength_cycles);

PhaseAngle make_phase_angle(double temporal_phase_rad, double flight_wavelength_cycles);

}  // namespace fwm::core
