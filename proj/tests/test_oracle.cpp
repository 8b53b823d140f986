#include <doctest.h>

#include <cmath>
#include <vector>

#include "gesim/errors.hpp"
#include "gesim/observables.hpp"
#include "gesim/oracle.hpp"
#include "gesim/sn.hpp"

using namespace gesim;
using oracle::GridSpec;
using oracle::GridWavefunction;
using oracle::SNGridWavefunction;

namespace {

const Model kModel = make_model(1e-3, 0.8, 1.2, {0.5, 0.0});

GridSpec small_spec() {
    GridSpec s;
    s.x_max = 40.0;
    s.nx = 256;
    s.y_max = 9.0;
    s.ny = 64;
    s.dt = 2e-3;
    return s;
}

}  // namespace

TEST_CASE("grid spec validation") {
    auto s = small_spec();
    s.nx = 300;  // not a power of two
    CHECK_THROWS_AS(s.validate(kModel, 1.0), GridExtentError);
    s = small_spec();
    s.x_max = 10.0;  // bound tail does not fit
    CHECK_THROWS_AS(s.validate(kModel, 1.0), GridExtentError);
    s = small_spec();
    s.dt = 0.1;  // dt * E_max too large
    CHECK_THROWS_AS(s.validate(kModel, 1.0), StepSizeError);
    s = small_spec();
    CHECK_THROWS_AS(s.validate(kModel, 200.0), GridExtentError);  // ballistic flux
    s = small_spec();
    s.y_max = 6.0;  // below the coherent-excursion rule
    CHECK_THROWS_AS(s.validate(kModel, 1.0), GridExtentError);

    const auto d = GridSpec::defaults(kModel, 21.0);
    CHECK(d.absorber_enabled);  // t_end > 20
    CHECK(d.y_max >= 4.0 * std::sqrt(2.0) * 0.5 + 6.0);
    d.validate(kModel, 21.0);
}

TEST_CASE("initial state moments and projections") {
    GridWavefunction psi(kModel, small_spec(), 1.0);
    const auto m0 = psi.measure();
    CHECK(m0.branch_norm2[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(m0.branch_norm2[1] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(m0.bound_prob == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(m0.p_ex == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(m0.visibility == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m0.negativity <= 1e-5);
    CHECK(m0.mean_y[0] == doctest::Approx(std::sqrt(2.0) * 0.5).epsilon(1e-6));
    CHECK(m0.mean_y[1] == doctest::Approx(std::sqrt(2.0) * 0.5).epsilon(1e-6));
}

TEST_CASE("free evolution keeps the bound state stationary") {
    const Model free = make_model(0.0, 0.8, 1.2, {0.5, 0.0});
    auto spec = small_spec();
    spec.dt = 5e-3;
    GridWavefunction psi(free, spec, 50.0);
    psi.propagate(50.0);
    CHECK(psi.bound_projection() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(psi.norm2() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("free coherent branch traces the classical orbit") {
    const Model free = make_model(0.0, 0.8, 1.2, {0.5, 0.0});
    GridWavefunction psi(free, small_spec(), 6.0);
    psi.propagate(5.0);
    const auto my = psi.mean_y();
    CHECK(my[0] == doctest::Approx(std::sqrt(2.0) * 0.5 * std::cos(0.8 * 5.0)).epsilon(1e-4));
    CHECK(my[1] == doctest::Approx(std::sqrt(2.0) * 0.5 * std::cos(1.2 * 5.0)).epsilon(1e-4));
    // visibility still follows the coherent overlap
    const double vref = visibility(free, 5.0, false);
    CHECK(psi.measure().visibility == doctest::Approx(vref).epsilon(1e-4));
}

TEST_CASE("strang splitting is second order in dt") {
    auto run = [](double dt) {
        auto spec = small_spec();
        spec.nx = 128;
        spec.x_max = 30.0;
        spec.ny = 32;
        spec.dt = dt;
        GridWavefunction psi(kModel, spec, 1.0);
        psi.propagate(1.0);
        return std::vector<cplx>(psi.branch(1).begin(), psi.branch(1).end());
    };
    const auto a = run(4e-3), b = run(2e-3), c = run(1e-3);
    double d_ab = 0.0, d_bc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d_ab += std::norm(a[i] - b[i]);
        d_bc += std::norm(b[i] - c[i]);
    }
    const double ratio = std::sqrt(d_ab / d_bc);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.3));
}

TEST_CASE("norm is conserved over a long unabsorbed run") {
    const Model m = make_model(1e-3, 0.9, 1.5, {0.5, 0.0});
    GridSpec spec;
    spec.x_max = 200.0;
    spec.nx = 1024;
    spec.y_max = 9.0;
    spec.ny = 64;
    spec.dt = 2e-3;
    spec.absorber_enabled = false;
    const double t_end = 10.0 * m.t_sat;
    GridWavefunction psi(m, spec, t_end);
    const double n0 = psi.norm2();
    psi.propagate(t_end);  // IntegratorDriftError polices the 1e-6 budget
    CHECK(std::abs(psi.norm2() - n0) < 1e-6);
}

TEST_CASE("mean-field grid: stationary at g = 0, matches sn_pex when driven") {
    const Model free = make_model(0.0, 0.8, 1.2, {0.5, 0.0});
    auto spec = small_spec();
    SNGridWavefunction idle(free, spec, 10.0);
    idle.propagate(10.0);
    CHECK(idle.p_ex() == doctest::Approx(0.0).epsilon(1e-8));

    const double t_end = 3.0 * kModel.t_sat;
    GridSpec drive_spec;
    drive_spec.x_max = 80.0;
    drive_spec.nx = 512;
    drive_spec.y_max = 9.0;
    drive_spec.ny = 64;
    drive_spec.dt = 2e-3;
    drive_spec.absorber_enabled = t_end > 20.0;
    SNGridWavefunction psi(kModel, drive_spec, t_end);
    psi.propagate(t_end);
    const double ref = sn_pex(kModel, t_end);
    CHECK(std::abs(psi.p_ex() / ref - 1.0) < 0.10);
}

TEST_CASE("two-tone drive converges to the high-frequency tone alone") {
    GridSpec spec;
    spec.x_max = 80.0;
    spec.nx = 512;
    spec.y_max = 9.0;
    spec.ny = 64;
    spec.dt = 2e-3;
    spec.absorber_enabled = true;  // t_end slightly above 20
    auto ratio_at = [&](double t_end) {
        SNGridWavefunction full(kModel, spec, t_end, /*omega1_only=*/false);
        SNGridWavefunction tone(kModel, spec, t_end, /*omega1_only=*/true);
        full.propagate(t_end);
        tone.propagate(t_end);
        return full.p_ex() / tone.p_ex();
    };
    const double r1 = ratio_at(1.0 * kModel.t_sat);
    const double r3 = ratio_at(3.0 * kModel.t_sat);
    CHECK(std::abs(r3 - 1.0) < std::abs(r1 - 1.0));
    CHECK(std::abs(r3 - 1.0) < 0.1);
}
