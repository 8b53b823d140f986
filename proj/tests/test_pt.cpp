#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gesim/errors.hpp"
#include "gesim/kgrid.hpp"
#include "gesim/pt.hpp"

using namespace gesim;
namespace ptx = gesim::pt;

TEST_CASE("bound state amplitude") {
    CHECK(ptx::eval_bound(0.0) == doctest::Approx(0.7071067811865476).epsilon(1e-12));
    CHECK(ptx::eval_bound(3.0) == ptx::eval_bound(-3.0));
    CHECK(ptx::eval_bound(40.0) < 1e-15);
    // finite-box norm, spectral-accuracy panels
    CHECK(ptx::bound_norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("scattering amplitude values") {
    CHECK(std::abs(ptx::eval_scattering(0.0, 0.0)) == 0.0);
    // asymptotically |psi_k| -> 1/sqrt(2 pi)
    CHECK(std::abs(ptx::eval_scattering(1.0, 50.0)) ==
          doctest::Approx(0.3989422804).epsilon(1e-6));
}

TEST_CASE("bound and continuum states are orthogonal") {
    for (double k : {0.1, 0.5, 1.0, 2.0})
        CHECK(std::abs(ptx::bound_scattering_overlap(k)) < 1e-8);
}

TEST_CASE("parity relates opposite wavenumbers") {
    for (double k : {0.3, 1.1, 2.4})
        for (double X : {0.7, 2.0, 5.5})
            CHECK(std::abs(ptx::eval_scattering(k, -X)) ==
                  doctest::Approx(std::abs(ptx::eval_scattering(-k, X))).epsilon(1e-14));
}

TEST_CASE("dipole overlap closed form") {
    CHECK(ptx::overlap_J(0.0).real() == doctest::Approx(0.8862269254527580).epsilon(1e-12));
    CHECK(ptx::overlap_J(0.0).imag() == 0.0);
    CHECK(std::abs(ptx::overlap_J(1.7)) ==
          doctest::Approx(std::abs(ptx::overlap_J(-1.7))).epsilon(1e-14));
    // |J|^2 route matches the complex route
    for (double k : {0.0, 0.25, 0.9, 2.3})
        CHECK(ptx::overlap_J_abs2(k) ==
              doctest::Approx(std::norm(ptx::overlap_J(k))).epsilon(1e-13));
    // exponential suppression of large wavenumbers
    CHECK(ptx::overlap_J_abs2(3.0) / ptx::overlap_J_abs2(0.0) < 1e-3);
}

TEST_CASE("dipole overlap against position-space quadrature") {
    for (double k : {0.3, -0.3, 1.2})
        CHECK(std::abs(ptx::overlap_J_quadrature(k) - ptx::overlap_J(k)) < 1e-6);
}

TEST_CASE("delta normalization sifts a smooth test function") {
    const KGrid outer = build_uniform_kgrid(2.0, 220);
    auto gauss = [](double mu) {
        return [mu](double k) { return std::exp(-(k - mu) * (k - mu) / (2.0 * 0.04)); };
    };
    // peak inside: recover f(k) at the state's own wavenumber
    const double got = ptx::delta_normalization_check(0.5, gauss(0.5), outer);
    CHECK(got == doctest::Approx(1.0).epsilon(0.02));

    // zero function sifts to zero
    CHECK(ptx::delta_normalization_check(0.5, [](double) { return 0.0; }, outer) == 0.0);

    // peak far away: the sift picks f at k = 0.5, not the peak value
    const double far = ptx::delta_normalization_check(0.5, gauss(2.0), outer);
    CHECK(std::abs(far) < 0.02);
}

TEST_CASE("coarse outer grid cannot resolve the box kernel") {
    const KGrid coarse = build_uniform_kgrid(2.0, 8);
    CHECK_THROWS_AS(
        ptx::delta_normalization_check(0.5, [](double) { return 1.0; }, coarse),
        QuadratureResolutionError);
}

TEST_CASE("kgrid construction invariants") {
    const KGrid g = build_kgrid(25.0);
    g.validate();
    CHECK(g.nodes.front() == doctest::Approx(-g.nodes.back()).epsilon(1e-14));
    CHECK(g.nodes.back() <= kgrid_default_span);
    // lobe resolution: near k=1 spacing must beat half the local sinc lobe
    const double lobe = std::numbers::pi / (25.0 * 1.0);
    double worst = 0.0;
    for (std::size_t i = 1; i < g.nodes.size(); ++i)
        if (std::abs(g.nodes[i]) > 0.9 && std::abs(g.nodes[i]) < 1.1)
            worst = std::max(worst, g.nodes[i] - g.nodes[i - 1]);
    CHECK(worst < lobe / 2.0);
    CHECK_THROWS_AS(build_kgrid(1e9), QuadratureResolutionError);
}
