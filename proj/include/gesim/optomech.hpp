#pragma once

#include <complex>

#include "gesim/model.hpp"
#include "gesim/perturbation.hpp"

namespace gesim {

// Single-photon cavity pushing on the oscillator: the photon side of the half
// mirror decides whether the radiation pressure stiffens the trap (branch 1) or
// not (branch 0).
struct CavityConfig {
    double ell = 0.0;      // cavity length (m)
    double omega_c = 0.0;  // photon angular frequency (rad/s)
    long n_mode = 0;       // longitudinal mode number; omega_c = pi c n / ell
    double M = 0.0;        // oscillator mass (kg)
    double Omega0 = 0.0;   // bare oscillator frequency (rad/s)
    std::complex<double> alpha{0.0, 0.0};
    double t_ini = 0.0;    // preparation start (s), <= 0
    double hbar = si::hbar;
    double c = si::c_light;

    static CavityConfig from_mode(double ell, long n_mode, double M, double Omega0,
                                  std::complex<double> alpha, double t_ini = 0.0);
};

struct CavityDerived {
    double Omega1 = 0.0;   // sqrt(Omega0^2 + hbar omega_c / (M ell^2))
    double lambda0 = 0.0;  // radiation-pressure displacement in ground-width units
    double lambda0_sigma_route = 0.0;  // same quantity via sigma_y; cross-check
};

// Throws CavityModeError when omega_c ell / (pi c) is not the stated integer.
CavityDerived derive_frequencies(const CavityConfig& cav);

struct SqueezedCoherentParams {
    int branch = 0;
    cplx alpha_traj{0.0, 0.0};
    cplx zeta{0.0, 0.0};
    double phase = 0.0;
};

// Exact branch trajectories of the preparation stage (coherent-squeezed form).
SqueezedCoherentParams squeezed_trajectory(const CavityConfig& cav, int branch, double t);

// Weak-coupling long-time limit: branch-1 orbit circles the displaced center.
//   alpha_0(t) = e^{-i Omega0 dt} alpha
//   alpha_1(t) = e^{-i Omega1 dt} (alpha - lambda0) + lambda0
std::array<cplx, 2> long_time_state(const CavityConfig& cav, double t);

// Gravitational evolution of the optomechanically prepared state (preparation
// completes at t = 0): the resonant coefficient carries (alpha - lambda0) and
// branch 1 rides the displaced orbit. include_branch_phases adds the
// preparation phase factors e^{i phi_n}, which cannot move any norm or
// visibility magnitude. lambda0 is in ground-state-width units, so the first
// overload plugs straight into dimensionless models.
EvolvedState gravity_evolved_optomech(const Model& m, double lambda0, double t,
                                      const KGrid& grid, bool include_offres = true,
                                      bool include_branch_phases = false);
EvolvedState gravity_evolved_optomech(const Model& m, const CavityConfig& cav, double t,
                                      const KGrid& grid, bool include_offres = true,
                                      bool include_branch_phases = false);

// Model whose Omega1 comes from the cavity radiation pressure.
Model derive_model_with_cavity(PhysicalConfig cfg, const CavityConfig& cav);

}  // namespace gesim
