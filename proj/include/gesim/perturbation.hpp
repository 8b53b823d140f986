#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "gesim/fock.hpp"
#include "gesim/kgrid.hpp"
#include "gesim/model.hpp"

namespace gesim {

// First-order transition amplitude c_k(Omega) for the k-continuum, internal
// units. The removable singularity at omega_k - omega_b - Omega = 0 is handled
// through the product form (1 - e^{i theta t})/theta = -i t e^{i theta t/2} sinc(theta t/2),
// which is exact and cancellation-free; the sinc switches to its series below
// |x| = 1e-4 (well past the 1e-9 denominator scale where the quotient form
// would start losing digits).
cplx transition_amplitude(double k, double Omega, double t);

// Occupation-resolved coefficient of |j>|n> at first order (j = bound or a
// wavenumber k), for the branch with frequency Omega.
cplx coefficient_bound(int n, cplx alpha);
cplx coefficient_excited(double k, int n, double Omega, double t, const Model& m);

// Oscillator sector attached to a continuum term.
enum class SectorKind { coherent, raised_coherent };

struct ContinuumTerm {
    int branch = 0;                 // control-qubit label
    cplx prefactor{0.0, 0.0};       // includes g and any alpha factor
    SectorKind sector = SectorKind::coherent;
    cplx beta{0.0, 0.0};            // coherent parameter of the sector
    std::vector<cplx> amplitude;    // c_k(...) e^{-i omega_k t} over grid nodes
};

// First-order tripartite state: free term plus resonant and (optionally)
// off-resonant continuum terms. Branch weights 1/sqrt(2) are implicit and
// applied inside the norm accounting.
struct EvolvedState {
    double t = 0.0;
    Model model;
    KGrid grid;
    cplx bound_phase{1.0, 0.0};          // e^{-i omega_b t} = e^{+i t}
    std::array<cplx, 2> branch_beta{};   // zeroth-order coherent parameters
    std::array<cplx, 2> branch_phase{{{1.0, 0.0}, {1.0, 0.0}}};  // optional per-branch phases
    std::vector<ContinuumTerm> terms;
    bool includes_offres = false;

    // 2 |<branch 1 | branch 0>| of the zeroth-order qubit-oscillator factor.
    double undetected_visibility() const;

    // Norm^2 of all continuum content (per-branch Gram accounting of the
    // non-orthogonal coherent / raised sectors).
    double excited_norm2() const;
    double branch_excited_norm2(int branch) const;
    double total_norm2() const { return 1.0 + excited_norm2(); }
    // Population of one qubit branch including its excited content.
    double branch_norm2(int branch) const { return 0.5 + branch_excited_norm2(branch); }
    // Norm^2 of the resonant term alone.
    double resonant_norm2() const;
    // |k| at the amplitude maximum of the resonant term.
    double resonant_peak_k() const;
};

EvolvedState evolve(const Model& m, double t, bool include_offres, const KGrid& grid);
EvolvedState evolve(const Model& m, double t, bool include_offres = false);

// 2x2 Gram matrix of {|beta>, a^dag |beta>} built from truncated Fock vectors.
std::array<std::array<cplx, 2>, 2> sector_gram(cplx beta_left, cplx beta_right,
                                               double omega_left, double omega_right,
                                               int n_max);

}  // namespace gesim
