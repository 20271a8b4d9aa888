#pragma once

namespace fwm::density {

// Reflectivity and mean single-bird RCS, kept in linear units with dB
// accessors; the density formula itself is evaluated in linear units.
struct DensityInput {
    double reflectivity_z = 1.0;  // linear reflectivity factor Z
    double mean_rcs_m2 = 0.028;   // sigma

    double reflectivity_dbz() const;
    double mean_rcs_dbsm() const;
    static DensityInput from_db(double dbz, double dbsm);

    void validate() const;
};

struct DensityErrorReport {
    double nominal_density = 0.0;  // birds/km^3
    double low_density = 0.0;
    double high_density = 0.0;
    double error_ratio = 1.0;  // high / low
};

// rho = Z * 28 / sigma, birds/km^3.
double bird_density(const DensityInput& input);

// Evaluates the density at RCS endpoints sigma * 10^(+-fluctuation/2 / 10),
// i.e. the fluctuation is the full min-to-max power swing.
DensityErrorReport density_error_bounds(double reflectivity_z, double nominal_rcs_m2,
                                        double fluctuation_db);

}  // namespace fwm::density
