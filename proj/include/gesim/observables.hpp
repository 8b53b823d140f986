#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gesim/model.hpp"
#include "gesim/perturbation.hpp"

namespace gesim {

// sin^2 kernel of the excitation integral; removable singularity at
// omega_k = omega_res gives t^2/4.
double delta_kernel(double k, double t, const Model& m);

// Integral of the bare kernel over the grid (delta-limit check target).
double delta_kernel_integral(const Model& m, double t);

enum class PexMethod { numeric, golden_rule, saddle_short, saddle_long };

const char* to_string(PexMethod m);

struct PexResult {
    double t = 0.0;
    double value = 0.0;
    PexMethod method = PexMethod::numeric;
    double t_over_t_sat = 0.0;
    std::vector<std::string> warnings;  // first-order overflow (value > 1) lands here
};

// Excitation probability by four routes:
//   numeric      adaptive quadrature of g^2 |alpha|^2 int |J_k|^2 Delta_k dk
//   golden_rule  pi^2 g^2 |alpha|^2 t / (8 k_res), the k_res << 1 rate
//   saddle_short factorized peak approximation (pi^2/12) g^2 |alpha|^2 Delta_0(t)
//   saddle_long  (pi/2) g^2 |alpha|^2 |J_{k_res}|^2 t / k_res with the exact overlap
PexResult pex(const Model& m, double t, PexMethod method);
PexResult pex(const Model& m, double t, PexMethod method, const KGrid& grid);

// Late-time comparison curve with the overlap replaced by 1 (kept separate from
// the production methods; it overestimates by 1/|J_{k_res}|^2).
double pex_saddle_long_unit_overlap(const Model& m, double t);

// Small-t limit of the numeric integrand per unit Delta: int |J_k|^2 dk = pi^2/12.
inline constexpr double short_time_overlap_integral = 0.8224670334241132;  // pi^2/12

// Excitation probability of the full first-order state, off-resonant terms and
// their non-orthogonal raised sectors included.
double pex_offres_included(const Model& m, double t);
double pex_offres_included(const Model& m, double t, const KGrid& grid);

// Interference visibility of the control qubit.
//  - undetected: exact coherent-branch overlap (include_offres is irrelevant at
//    this order and ignored);
//  - detected, off-resonance off: identically zero;
//  - detected, off-resonance on: visibility of the normalized projected state.
double visibility(const Model& m, double t, bool detected, bool include_offres = false);

enum class NegativityMethod { closed_form, partial_transpose };

// Particle vs (qubit + oscillator) negativity. closed_form returns
// sqrt(P_ex/2); partial_transpose builds the normalized two-level pure state,
// transposes the particle factor and sums the negative eigenvalues.
double negativity(const Model& m, double t, NegativityMethod method);

struct FeasibilityInput {
    double m_over_M = 1.0;
    double M_over_d3 = 0.0;      // kg / m^3
    double alpha_abs = 0.0;
    double omega_b_abs = 0.0;    // rad/s
    double tau1 = 0.0;           // run duration (s)
    double t_tot = 0.0;          // campaign duration (s)
    double G = si::G_newton;
    bool optimal_tuning = true;  // k_res = pi/(|omega_b| tau1)
    std::optional<double> k_res; // used when optimal_tuning is false
};

struct FeasibilityReport {
    double g = 0.0;
    double k_res = 0.0;
    double t_sat_seconds = 0.0;
    double per_run = 0.0;
    double n_runs = 0.0;
    double total_linear = 0.0;          // N * per_run, the accumulated rate
    double total_any_excitation = 0.0;  // 1 - (1 - p)^N
    FeasibilityInput input;
    std::vector<std::string> warnings;
};

FeasibilityReport feasibility(const FeasibilityInput& in);

// Optimal single-run duration: the saturation time.
double optimal_run_duration(const Model& m);                       // internal units
double optimal_run_duration_si(double omega_b_abs, double k_res);  // seconds

}  // namespace gesim
