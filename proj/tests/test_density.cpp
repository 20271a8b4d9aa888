#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fwm/density.hpp"
#include "fwm/rng.hpp"

using namespace fwm;

TEST_CASE("bird density: frozen values") {
    density::DensityInput in;  // Z = 1, sigma = 0.028
    CHECK(density::bird_density(in) == doctest::Approx(1000.0).epsilon(1e-9));
    in.reflectivity_z = 2.0;
    CHECK(density::bird_density(in) == doctest::Approx(2000.0).epsilon(1e-9));
    in.reflectivity_z = 1.0;
    in.mean_rcs_m2 = 0.056;
    CHECK(density::bird_density(in) == doctest::Approx(500.0).epsilon(1e-9));
}

TEST_CASE("density scales linearly with Z and inversely with RCS") {
    Rng rng(601);
    for (int i = 0; i < 150; ++i) {
        density::DensityInput in;
        in.reflectivity_z = rng.uniform(0.01, 100.0);
        in.mean_rcs_m2 = rng.uniform(1e-4, 1.0);
        const double base = density::bird_density(in);
        auto doubled = in;
        doubled.reflectivity_z *= 2.0;
        CHECK(density::bird_density(doubled) == doctest::Approx(2.0 * base).epsilon(1e-12));
        auto heavier = in;
        heavier.mean_rcs_m2 *= 4.0;
        CHECK(density::bird_density(heavier) == doctest::Approx(base / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("dB accessors round-trip") {
    Rng rng(602);
    for (int i = 0; i < 100; ++i) {
        const double dbz = rng.uniform(-30.0, 60.0);
        const double dbsm = rng.uniform(-40.0, 10.0);
        const auto in = density::DensityInput::from_db(dbz, dbsm);
        CHECK(in.reflectivity_dbz() == doctest::Approx(dbz).epsilon(1e-9));
        CHECK(in.mean_rcs_dbsm() == doctest::Approx(dbsm).epsilon(1e-9));
        CHECK(in.reflectivity_z == doctest::Approx(std::pow(10.0, dbz / 10.0)).epsilon(1e-9));
    }
}

TEST_CASE("error bounds: frozen 10 dB fluctuation gives a factor-10 spread") {
    const auto r = density::density_error_bounds(1.0, 0.028, 10.0);
    CHECK(r.nominal_density == doctest::Approx(1000.0).epsilon(1e-9));
    CHECK(r.error_ratio == doctest::Approx(10.0).epsilon(1e-9));
    // endpoints straddle the nominal symmetrically in dB
    CHECK(r.low_density == doctest::Approx(1000.0 / std::sqrt(10.0)).epsilon(1e-9));
    CHECK(r.high_density == doctest::Approx(1000.0 * std::sqrt(10.0)).epsilon(1e-9));
}

TEST_CASE("error bounds: ratio is exactly the fluctuation in linear form") {
    Rng rng(603);
    for (int i = 0; i < 150; ++i) {
        const double z = rng.uniform(0.1, 10.0);
        const double sigma = rng.uniform(0.001, 0.5);
        const double fluct = rng.uniform(0.0, 30.0);
        const auto r = density::density_error_bounds(z, sigma, fluct);
        CHECK(r.error_ratio == doctest::Approx(std::pow(10.0, fluct / 10.0)).epsilon(1e-9));
        CHECK(r.low_density <= r.nominal_density + 1e-12);
        CHECK(r.high_density >= r.nominal_density - 1e-12);
        CHECK(r.high_density / r.low_density == doctest::Approx(r.error_ratio).epsilon(1e-9));
        // zero fluctuation collapses the band
        const auto tight = density::density_error_bounds(z, sigma, 0.0);
        CHECK(tight.low_density == doctest::Approx(tight.high_density).epsilon(1e-12));
        CHECK(tight.error_ratio == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("validation rejects nonpositive inputs") {
    density::DensityInput in;
    in.reflectivity_z = 0.0;
    CHECK_THROWS_AS(in.validate(), std::invalid_argument);
    in = {};
    in.mean_rcs_m2 = -0.01;
    CHECK_THROWS_AS(in.validate(), std::invalid_argument);
}
