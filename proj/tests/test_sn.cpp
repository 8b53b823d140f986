#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "gesim/observables.hpp"
#include "gesim/sn.hpp"

using namespace gesim;

namespace {
const Model kModel = make_model(1e-3, 0.8, 1.2, {0.5, 0.0});
}

TEST_CASE("oscillator mean displacement") {
    CHECK(sn_mean_displacement(kModel, 0.0) ==
          doctest::Approx(std::sqrt(2.0) * 0.5).epsilon(1e-15));
    const Model quiet = make_model(1e-3, 0.8, 1.2, {0.0, 0.0});
    for (double t : {0.0, 1.3, 8.8}) CHECK(sn_mean_displacement(quiet, t) == 0.0);
    // commensurate frequencies: exact period 2 pi / gcd
    const Model comm = make_model(1e-3, 0.8, 1.6, {0.5, 0.0});
    const double period = 2.0 * std::numbers::pi / 0.8;
    for (double t : {0.4, 2.9})
        CHECK(sn_mean_displacement(comm, t + period) ==
              doctest::Approx(sn_mean_displacement(comm, t)).epsilon(1e-12));
}

TEST_CASE("mean-field amplitudes are half the quantized branch-1 ones") {
    const double t = 4.2;
    const KGrid grid = build_kgrid(kModel, t);
    const auto sn = sn_evolve(kModel, t, grid, /*resonant_only=*/true);
    const auto q = evolve(kModel, t, false, grid);
    const auto& res = q.terms.front();
    for (std::size_t i = 0; i < grid.size(); i += 53) {
        const cplx quantized = res.prefactor * res.amplitude[i];
        if (std::abs(quantized) < 1e-18) continue;
        CHECK(std::abs(sn.continuum[i] / quantized - 0.5) < 1e-12);
    }
}

TEST_CASE("free mean-field evolution stays bound") {
    const Model free = make_model(0.0, 0.8, 1.2, {0.5, 0.0});
    const auto s = sn_evolve(free, 3.0);
    CHECK(s.excited_norm2() == 0.0);
}

TEST_CASE("mean-field excitation is exactly half on a time series") {
    for (int i = 1; i <= 50; ++i) {
        const double t = 3.0 * kModel.t_sat * i / 50.0;
        const KGrid grid = build_kgrid(kModel, t);
        const double ratio = sn_evolve(kModel, t, grid).excited_norm2() /
                             pex(kModel, t, PexMethod::numeric, grid).value;
        CHECK(std::abs(ratio - 0.5) < 1e-9);
    }
}

TEST_CASE("detection leaves the mean-field visibility untouched") {
    for (double t : {0.0, 7.3, 19.0}) {
        const double pre = sn_visibility(kModel, t, false);
        const double post = sn_visibility(kModel, t, true);
        CHECK(std::abs(pre - post) <= 1e-15);
        const double ref = std::exp(-2.0 * kModel.alpha_abs2() *
                                    std::pow(std::sin(0.2 * t), 2));
        CHECK(pre == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(sn_visibility(kModel, 0.0, true) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("mean-field state has Schmidt rank one across particle | rest") {
    const double t = 2.0 * kModel.t_sat;
    const KGrid grid = build_uniform_kgrid(8.0, 60);
    const auto s = sn_evolve(kModel, t, grid, false);

    // particle column: bound amplitude plus weighted continuum samples
    const int np = static_cast<int>(grid.size()) + 1;
    Eigen::VectorXcd particle(np);
    particle(0) = s.bound_phase;
    for (int i = 0; i < np - 1; ++i)
        particle(i + 1) = s.continuum[i] * std::sqrt(grid.weights[i]);

    // rest column: qubit (x) truncated oscillator sector per branch
    const int n_max = fock_n_max(kModel.alpha_abs2());
    const auto f0 = FockVector::coherent(s.branch_beta[0], kModel.Omega0_rel, n_max);
    const auto f1 = FockVector::coherent(s.branch_beta[1], kModel.Omega1_rel, n_max);
    Eigen::VectorXcd rest(2 * (n_max + 1));
    for (int n = 0; n <= n_max; ++n) {
        rest(n) = f0.c[n] / std::sqrt(2.0);
        rest(n_max + 1 + n) = f1.c[n] / std::sqrt(2.0);
    }

    Eigen::MatrixXcd A = particle * rest.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    const auto& sv = svd.singularValues();
    REQUIRE(sv.size() >= 2);
    CHECK(sv(1) <= 1e-14 * sv(0));
}
