#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gesim/errors.hpp"
#include "gesim/observables.hpp"
#include "gesim/pt.hpp"

using namespace gesim;

namespace {
const Model kModel = make_model(1e-3, 0.8, 1.2, {0.5, 0.0});
constexpr double pi = std::numbers::pi;
}

TEST_CASE("sinc kernel limits") {
    CHECK(delta_kernel(kModel.k_res, 3.0, kModel) == doctest::Approx(9.0 / 4.0).epsilon(1e-12));
    CHECK(delta_kernel(0.9, 0.0, kModel) == 0.0);
}

TEST_CASE("kernel integral approaches the delta-limit weight") {
    const double t = 10.0 * kModel.t_sat;
    const double got = delta_kernel_integral(kModel, t);
    const double delta_limit = pi * t / (2.0 * kModel.k_res);
    CHECK(std::abs(got / delta_limit - 1.0) < 0.03);
}

TEST_CASE("quadratic early growth and exact g^2 scaling") {
    const Model m = make_model(1e-3, 0.9, 1.5, {0.5, 0.0});
    for (double f : {0.02, 0.05, 0.1}) {
        const double t = f * m.t_sat;
        const double r = pex(m, 2.0 * t, PexMethod::numeric).value /
                         pex(m, t, PexMethod::numeric).value;
        CHECK(std::abs(r - 4.0) <= 0.08);
    }
    const Model twice = make_model(2e-3, 0.9, 1.5, {0.5, 0.0});
    const KGrid grid = build_kgrid(m, 3.0);
    const double ratio = pex(twice, 3.0, PexMethod::numeric, grid).value /
                         pex(m, 3.0, PexMethod::numeric, grid).value;
    CHECK(ratio == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("short-time factorized approximation is exact at t -> 0") {
    for (double O1 : {1.01, 1.2, 1.5}) {
        const Model m = make_model(1e-3, 0.9, O1, {0.5, 0.0});
        const double t = 1e-3 * m.t_sat;
        const double r = pex(m, t, PexMethod::numeric).value /
                         pex(m, t, PexMethod::saddle_short).value;
        CHECK(r == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("late-time methods agree deep in the linear regime") {
    const Model m = make_model(1e-3, 0.9, 1.5, {0.5, 0.0});
    const double t = 30.0 * m.t_sat;
    const double num = pex(m, t, PexMethod::numeric).value;
    const double lng = pex(m, t, PexMethod::saddle_long).value;
    CHECK(std::abs(num / lng - 1.0) < 0.05);
    // golden rule carries |J|^2 ~ pi/4; exact-overlap variant differs by the
    // true |J(k_res)|^2
    const double gr = pex(m, t, PexMethod::golden_rule).value;
    CHECK(lng / gr == doctest::Approx(pt::overlap_J_abs2(m.k_res) / (pi / 4.0)).epsilon(1e-12));
    // the unit-overlap comparison curve overshoots by 1/|J|^2
    CHECK(pex_saddle_long_unit_overlap(m, t) / lng ==
          doctest::Approx(1.0 / pt::overlap_J_abs2(m.k_res)).epsilon(1e-12));
}

TEST_CASE("probability overflow is reported, not clamped") {
    const Model hot = make_model(1.0, 0.9, 1.01, {1.0, 0.0});
    const auto r = pex(hot, 1e4, PexMethod::golden_rule);
    CHECK(r.value > 1.0);
    CHECK(!r.warnings.empty());
}

TEST_CASE("off-resonant excess decays relative to the resonant growth") {
    double prev = 1e9;
    for (double f : {3.0, 10.0, 30.0}) {
        const double t = f * kModel.t_sat;
        const KGrid grid = build_kgrid(kModel, t);
        const double res = pex(kModel, t, PexMethod::numeric, grid).value;
        const double full = pex_offres_included(kModel, t, grid);
        const double excess = (full - res) / res;
        CHECK(excess < prev);
        prev = excess;
    }
    CHECK(prev < 0.05);
    CHECK(pex_offres_included(make_model(0.0, 0.8, 1.2, {0.5, 0.0}), 5.0) == 0.0);
    CHECK(pex_offres_included(kModel, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("visibility of the undetected state") {
    CHECK(visibility(kModel, 0.0, false) == doctest::Approx(1.0).epsilon(1e-15));
    // minimum at (Omega1 - Omega0) t = pi
    const double t_min = pi / (kModel.Omega1_rel - kModel.Omega0_rel);
    CHECK(visibility(kModel, t_min, false) == doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
    // periodicity and bounds
    const double period = 2.0 * pi / (kModel.Omega1_rel - kModel.Omega0_rel);
    for (double t : {0.7, 4.1, 9.3}) {
        CHECK(visibility(kModel, t + period, false) ==
              doctest::Approx(visibility(kModel, t, false)).epsilon(1e-12));
        const double v = visibility(kModel, t, false);
        CHECK(v <= 1.0 + 1e-15);
        CHECK(v >= std::exp(-2.0 * kModel.alpha_abs2()) - 1e-15);
    }
}

TEST_CASE("detected visibility: zero without off-resonant sectors, small with") {
    CHECK(visibility(kModel, 3.7, true, false) == 0.0);
    const double v10 = visibility(kModel, 10.0 * kModel.t_sat, true, true);
    const double v20 = visibility(kModel, 20.0 * kModel.t_sat, true, true);
    CHECK(v10 < 0.2);
    CHECK(v20 < v10);
    CHECK(v10 > 0.0);
}

TEST_CASE("negativity identity and partial transpose") {
    const Model free = make_model(0.0, 0.8, 1.2, {0.5, 0.0});
    CHECK(negativity(free, 4.0, NegativityMethod::closed_form) == 0.0);
    CHECK(negativity(free, 4.0, NegativityMethod::partial_transpose) ==
          doctest::Approx(0.0).epsilon(1e-14));

    const double t = 3.0 * kModel.t_sat;
    const double p = pex(kModel, t, PexMethod::numeric).value;
    const double ncl = negativity(kModel, t, NegativityMethod::closed_form);
    const double npt = negativity(kModel, t, NegativityMethod::partial_transpose);
    CHECK(2.0 * ncl * ncl == doctest::Approx(p).epsilon(1e-12));
    CHECK(std::abs(npt - ncl) <= 5.0 * p);
}

TEST_CASE("campaign feasibility at the headline operating point") {
    FeasibilityInput in;
    in.m_over_M = 1.0;
    in.M_over_d3 = 20000.0;
    in.alpha_abs = 0.7;
    in.omega_b_abs = 1.0;
    in.tau1 = 12.0 * si::hour;
    in.t_tot = si::year;
    const auto rep = feasibility(in);
    CHECK(rep.total_linear > 0.8);
    CHECK(rep.total_linear < 1.0);
    CHECK(rep.per_run == doctest::Approx(1.3e-3).epsilon(0.10));
    CHECK(rep.k_res == doctest::Approx(7.3e-5).epsilon(0.05));
    CHECK(rep.n_runs == doctest::Approx(in.t_tot / in.tau1).epsilon(1e-15));
    CHECK(rep.total_any_excitation < rep.total_linear);

    in.t_tot = 0.0;
    CHECK(feasibility(in).total_linear == 0.0);
}

TEST_CASE("short runs fall back to the quadratic rate with a warning") {
    FeasibilityInput in;
    in.m_over_M = 1.0;
    in.M_over_d3 = 20000.0;
    in.alpha_abs = 0.7;
    in.omega_b_abs = 1.0;
    in.tau1 = 12.0 * si::hour;
    in.t_tot = si::year;
    in.optimal_tuning = false;
    in.k_res = 1e-5;  // t_sat ~ 3.6 days >> tau1
    const auto rep = feasibility(in);
    CHECK(!rep.warnings.empty());
    const double wt = in.omega_b_abs * in.tau1;
    const double expected = 0.25 * short_time_overlap_integral * rep.g * rep.g *
                            in.alpha_abs * in.alpha_abs * wt * wt;
    CHECK(rep.per_run == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("optimal run duration is the saturation time") {
    const Model m = make_model(1e-3, 0.9, 1.01, {0.5, 0.0});
    CHECK(optimal_run_duration(m) == doctest::Approx(31.41592653589793).epsilon(1e-12));
    const double k = tuned_k_res(1.0, 12.0 * si::hour);
    CHECK(optimal_run_duration_si(1.0, k) == doctest::Approx(12.0 * si::hour).epsilon(1e-12));
    CHECK(optimal_run_duration_si(1.0, 2.0 * k) ==
          doctest::Approx(6.0 * si::hour).epsilon(1e-12));
}

TEST_CASE("sharper resonance wins at equal late time") {
    const Model m101 = make_model(1e-3, 0.9, 1.01, {0.5, 0.0});
    const Model m150 = make_model(1e-3, 0.9, 1.50, {0.5, 0.0});
    const double t = 5.0 * m101.t_sat;
    CHECK(pex(m101, t, PexMethod::numeric).value > pex(m150, t, PexMethod::numeric).value);
}
