#pragma once

#include <array>
#include <complex>
#include <vector>

#include "gesim/fock.hpp"
#include "gesim/kgrid.hpp"
#include "gesim/model.hpp"

namespace gesim {

// Mean-field counterfactual: the particle is driven by the c-number expectation
// <Y>(t) of the oscillator, so the joint state stays a product and both qubit
// branches share one particle wavefunction.

// <Y>(t) = Re[alpha (e^{-i Omega0 t} + e^{-i Omega1 t})] / sqrt(2)
double sn_mean_displacement(const Model& m, double t);

struct SNEvolvedState {
    double t = 0.0;
    Model model;
    KGrid grid;
    bool resonant_only = true;
    cplx bound_phase{1.0, 0.0};
    std::vector<cplx> continuum;          // shared across branches
    std::array<cplx, 2> branch_beta{};    // untouched qubit-oscillator factor

    double excited_norm2() const;         // = P_ex^SN
};

// First-order mean-field evolution. resonant_only keeps just the Omega1 drive
// component (the paper's leading term); otherwise all four drive tones enter.
SNEvolvedState sn_evolve(const Model& m, double t, const KGrid& grid, bool resonant_only = true);
SNEvolvedState sn_evolve(const Model& m, double t, bool resonant_only = true);

// Excitation probability of the driven particle; resonant-only mode equals
// half of the quantized-gravity probability by construction.
double sn_pex(const Model& m, double t, bool resonant_only = true);

// Interference visibility, identical with and without particle detection.
double sn_visibility(const Model& m, double t, bool detected);

}  // namespace gesim
