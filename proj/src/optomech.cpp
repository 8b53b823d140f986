#include "gesim/optomech.hpp"

#include <cmath>
#include <numbers>

#include "gesim/errors.hpp"

namespace gesim {

namespace {
constexpr double pi = std::numbers::pi;
}

CavityConfig CavityConfig::from_mode(double ell, long n_mode, double M, double Omega0,
                                     std::complex<double> alpha, double t_ini) {
    CavityConfig cav;
    cav.ell = ell;
    cav.n_mode = n_mode;
    cav.M = M;
    cav.Omega0 = Omega0;
    cav.alpha = alpha;
    cav.t_ini = t_ini;
    cav.omega_c = pi * cav.c * static_cast<double>(n_mode) / ell;
    return cav;
}

CavityDerived derive_frequencies(const CavityConfig& cav) {
    if (!(cav.ell > 0.0) || !(cav.M > 0.0) || !(cav.Omega0 > 0.0) || !(cav.omega_c > 0.0))
        throw PhysicsError("derive_frequencies: cavity parameters must be positive");
    if (cav.t_ini > 0.0) throw PhysicsError("derive_frequencies: t_ini must be <= 0");
    const double mode = cav.omega_c * cav.ell / (pi * cav.c);
    if (std::abs(mode - static_cast<double>(cav.n_mode)) > 1e-6 * std::max(1.0, mode))
        throw CavityModeError("omega_c ell / (pi c) = " + std::to_string(mode) +
                              " is not the stated mode integer " + std::to_string(cav.n_mode));

    CavityDerived d;
    d.Omega1 = std::sqrt(cav.Omega0 * cav.Omega0 + cav.hbar * cav.omega_c / (cav.M * cav.ell * cav.ell));
    d.lambda0 = (cav.omega_c / cav.Omega0) / cav.ell * std::sqrt(cav.hbar / (2.0 * cav.M * cav.Omega0));
    const double sigma_y = std::sqrt(cav.hbar / (cav.M * cav.Omega0));
    d.lambda0_sigma_route = cav.omega_c * sigma_y / (std::sqrt(2.0) * cav.Omega0 * cav.ell);
    return d;
}

SqueezedCoherentParams squeezed_trajectory(const CavityConfig& cav, int branch, double t) {
    if (t < cav.t_ini) throw PhysicsError("squeezed_trajectory: t before preparation start");
    const CavityDerived d = derive_frequencies(cav);
    const double dt = t - cav.t_ini;
    SqueezedCoherentParams p;
    p.branch = branch;
    if (branch == 0) {
        p.alpha_traj = cav.alpha * std::polar(1.0, -cav.Omega0 * dt);
        p.zeta = {0.0, 0.0};
        p.phase = -0.5 * cav.Omega0 * dt;
        return p;
    }
    const double r10 = d.Omega1 / cav.Omega0;
    const cplx rot = std::polar(1.0, -d.Omega1 * dt);
    p.alpha_traj = std::sqrt(r10) * (rot * cav.alpha + (1.0 - rot) * d.lambda0 / (r10 * r10));
    p.zeta = std::polar(1.0, -2.0 * d.Omega1 * dt) * std::log(std::sqrt(r10));
    // First-order coupling correction to the phase, evaluated with the
    // same-time branch amplitude.
    p.phase = -0.5 * d.Omega1 * dt +
              std::pow(1.0 / r10, 1.5) * d.lambda0 * std::imag(p.alpha_traj * (1.0 - rot));
    return p;
}

std::array<cplx, 2> long_time_state(const CavityConfig& cav, double t) {
    if (t < cav.t_ini) throw PhysicsError("long_time_state: t before preparation start");
    const CavityDerived d = derive_frequencies(cav);
    const double dt = t - cav.t_ini;
    const cplx a0 = cav.alpha * std::polar(1.0, -cav.Omega0 * dt);
    const cplx a1 = std::polar(1.0, -d.Omega1 * dt) * (cav.alpha - d.lambda0) + d.lambda0;
    return {a0, a1};
}

EvolvedState gravity_evolved_optomech(const Model& m, double lambda0, double t,
                                      const KGrid& grid, bool include_offres,
                                      bool include_branch_phases) {
    if (t < 0.0) throw PhysicsError("gravity_evolved_optomech: negative time");
    grid.validate();

    // Preparation completes at t = 0; branch orbits continue from alpha.
    EvolvedState s;
    s.t = t;
    s.model = m;
    s.grid = grid;
    s.bound_phase = std::polar(1.0, t);
    const cplx rot1 = std::polar(1.0, -m.Omega1_rel * t);
    s.branch_beta = {m.alpha * std::polar(1.0, -m.Omega0_rel * t),
                     rot1 * (m.alpha - lambda0) + lambda0};
    s.includes_offres = include_offres;

    auto continuum = [&](int branch, cplx prefactor, double Omega, SectorKind kind) {
        ContinuumTerm term;
        term.branch = branch;
        term.prefactor = prefactor;
        term.sector = kind;
        term.beta = s.branch_beta[branch];
        term.amplitude.resize(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double k = grid.nodes[i];
            term.amplitude[i] = transition_amplitude(k, Omega, t) * std::polar(1.0, -k * k * t);
        }
        return term;
    };

    s.terms.push_back(continuum(1, m.g * (m.alpha - lambda0), m.Omega1_rel, SectorKind::coherent));
    if (include_offres) {
        s.terms.push_back(continuum(0, m.g * m.alpha, m.Omega0_rel, SectorKind::coherent));
        s.terms.push_back(continuum(0, m.g * std::polar(1.0, -m.Omega0_rel * t),
                                    -m.Omega0_rel, SectorKind::raised_coherent));
        s.terms.push_back(continuum(1, m.g * rot1, -m.Omega1_rel, SectorKind::raised_coherent));
    }

    if (include_branch_phases) {
        const double phi0 = -0.5 * m.Omega0_rel * t;
        const double r10 = m.Omega1_rel / m.Omega0_rel;
        const double phi1 = -0.5 * m.Omega1_rel * t +
                            std::pow(1.0 / r10, 1.5) * lambda0 *
                                std::imag(s.branch_beta[1] * (1.0 - rot1));
        s.branch_phase = {std::polar(1.0, phi0), std::polar(1.0, phi1)};
        for (auto& term : s.terms) term.prefactor *= s.branch_phase[term.branch];
    }
    return s;
}

EvolvedState gravity_evolved_optomech(const Model& m, const CavityConfig& cav, double t,
                                      const KGrid& grid, bool include_offres,
                                      bool include_branch_phases) {
    return gravity_evolved_optomech(m, derive_frequencies(cav).lambda0, t, grid, include_offres,
                                    include_branch_phases);
}

Model derive_model_with_cavity(PhysicalConfig cfg, const CavityConfig& cav) {
    const CavityDerived d = derive_frequencies(cav);
    cfg.M = cav.M;
    cfg.Omega0 = cav.Omega0;
    cfg.Omega1 = d.Omega1;
    cfg.alpha = cav.alpha;
    return derive_model(cfg);
}

}  // namespace gesim
