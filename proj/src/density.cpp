#include "fwm/density.hpp"

#include <cmath>
#include <stdexcept>

namespace fwm::density {

namespace {
constexpr double kCalibration = 28.0;  // opaque calibration constant
}

double DensityInput::reflectivity_dbz() const { return 10.0 * std::log10(reflectivity_z); }

double DensityInput::mean_rcs_dbsm() const { return 10.0 * std::log10(mean_rcs_m2); }

DensityInput DensityInput::from_db(double dbz, double dbsm) {
    return {std::pow(10.0, dbz / 10.0), std::pow(10.0, dbsm / 10.0)};
}

void DensityInput::validate() const {
    if (!(reflectivity_z > 0.0)) throw std::invalid_argument("reflectivity must be > 0");
    if (!(mean_rcs_m2 > 0.0)) throw std::invalid_argument("mean RCS must be > 0");
}

double bird_density(const DensityInput& input) {
    input.validate();
    return input.reflectivity_z * kCalibration / input.mean_rcs_m2;
}

DensityErrorReport density_error_bounds(double reflectivity_z, double nominal_rcs_m2,
                                        double fluctuation_db) {
    if (!(fluctuation_db >= 0.0)) {
        throw std::invalid_argument("fluctuation must be >= 0 dB");
    }
    const double half = fluctuation_db / 2.0;
    const double rcs_hi = nominal_rcs_m2 * std::pow(10.0, half / 10.0);
    const double rcs_lo = nominal_rcs_m2 * std::pow(10.0, -half / 10.0);

    DensityErrorReport r;
    r.nominal_density = bird_density({reflectivity_z, nominal_rcs_m2});
    r.low_density = bird_density({reflectivity_z, rcs_hi});
    r.high_density = bird_density({reflectivity_z, rcs_lo});
    r.error_ratio = r.high_density / r.low_density;
    return r;
}

}  // namespace fwm::density
