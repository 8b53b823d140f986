#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gesim/errors.hpp"
#include "gesim/model.hpp"

using namespace gesim;

namespace {

// Mesoscopic test point: omega_b = 1 rad/s, comfortable scale separation.
PhysicalConfig molecule_config() {
    PhysicalConfig cfg;
    cfg.m = 1e-17;
    cfg.M = 1e-17;
    cfg.L = std::sqrt(cfg.hbar / (2.0 * cfg.m));  // |omega_b| = 1
    cfg.d = 1e-4;
    cfg.Omega0 = 0.8;
    cfg.Omega1 = 1.2;
    cfg.alpha = {0.5, 0.0};
    return cfg;
}

}  // namespace

TEST_CASE("resonant wavenumber from the branch frequency") {
    auto m = make_model(1e-3, 0.9, 1.01, {0.5, 0.0});
    CHECK(m.k_res == doctest::Approx(0.1).epsilon(1e-12));
    m = make_model(1e-3, 0.9, 1.50, {0.5, 0.0});
    CHECK(m.k_res == doctest::Approx(0.70710678118654752).epsilon(1e-12));
}

TEST_CASE("saturation time times k_res is pi") {
    for (double O1 : {1.01, 1.2, 1.5, 2.7}) {
        const auto m = make_model(1e-3, 0.5, O1, {0.3, 0.1});
        CHECK(m.t_sat * m.k_res == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    }
}

TEST_CASE("twelve-hour run duration tunes k_res near 7.3e-5") {
    const double k = tuned_k_res(1.0, 12.0 * si::hour);
    CHECK(std::abs(k / 7.3e-5 - 1.0) < 0.05);
}

TEST_CASE("frequency ordering violations are rejected") {
    CHECK_THROWS_AS(make_model(1e-3, 0.9, 0.9, {0.5, 0.0}), ResonanceOrderingError);
    CHECK_THROWS_AS(make_model(1e-3, 1.1, 1.5, {0.5, 0.0}), ResonanceOrderingError);
    CHECK_THROWS_AS(make_model(1e-3, 0.9, 1.0, {0.5, 0.0}), ResonanceOrderingError);
}

TEST_CASE("SI derivation and scale separation") {
    const auto cfg = molecule_config();
    const auto m = derive_model(cfg);
    CHECK(m.omega_b_abs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.Omega0_rel == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(m.k_res == doctest::Approx(std::sqrt(0.2)).epsilon(1e-12));
    CHECK(m.g > 0.0);
    CHECK(m.warnings.empty());

    auto tight = cfg;
    tight.d = 1e-7;  // d/L ~ 43, below the threshold
    CHECK_THROWS_AS(derive_model(tight), ScaleSeparationError);

    tight = cfg;
    tight.scale_separation_min = 1e7;
    CHECK_THROWS_AS(derive_model(tight), ScaleSeparationError);
}

TEST_CASE("coupling warning above first-order validity") {
    const auto m = make_model(0.05, 0.8, 1.2, {0.5, 0.0});
    REQUIRE(!m.warnings.empty());
}

TEST_CASE("time conversions round-trip") {
    const auto m1 = make_model(1e-3, 0.8, 1.2, {0.5, 0.0}, 1.0);
    CHECK(to_dimensionless_time(m1, 31.4159) == doctest::Approx(31.4159).epsilon(1e-15));
    CHECK(to_si_time(m1, 0.0) == 0.0);
    const auto m2 = make_model(1e-3, 0.8, 1.2, {0.5, 0.0}, 2.0);
    CHECK(to_dimensionless_time(m2, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    for (double t : {0.1, 3.7, 1234.5}) {
        const double rt = to_si_time(m2, to_dimensionless_time(m2, t));
        CHECK(rt == doctest::Approx(t).epsilon(1e-15));
    }
}

TEST_CASE("rescaled masses with fixed omega_b and g give the same model") {
    const auto cfg = molecule_config();
    const auto base = derive_model(cfg);

    const double lam = 7.0;
    auto scaled = cfg;
    scaled.m *= lam;
    scaled.M *= lam;
    scaled.L /= std::sqrt(lam);          // keeps |omega_b|
    scaled.d *= std::cbrt(lam);          // keeps g (g ~ m M L sigma_y / d^3)
    const auto other = derive_model(scaled);

    CHECK(other.omega_b_abs == doctest::Approx(base.omega_b_abs).epsilon(1e-12));
    CHECK(other.g == doctest::Approx(base.g).epsilon(1e-12));
    CHECK(other.Omega0_rel == doctest::Approx(base.Omega0_rel).epsilon(1e-12));
    CHECK(other.Omega1_rel == doctest::Approx(base.Omega1_rel).epsilon(1e-12));
    CHECK(other.k_res == doctest::Approx(base.k_res).epsilon(1e-12));
    CHECK(other.t_sat == doctest::Approx(base.t_sat).epsilon(1e-12));
    CHECK(other.omega_res == doctest::Approx(base.omega_res).epsilon(1e-12));
}

TEST_CASE("k_res shrinks monotonically as Omega1 approaches |omega_b|") {
    double prev = 1e9;
    for (double O1 : {1.5, 1.2, 1.05, 1.01, 1.001, 1.00001}) {
        const auto m = make_model(1e-3, 0.9, O1, {0.5, 0.0});
        CHECK(m.k_res < prev);
        prev = m.k_res;
    }
    CHECK(prev < 0.004);
}
