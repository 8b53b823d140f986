#include "gesim/sn.hpp"

#include <cmath>

#include "gesim/errors.hpp"
#include "gesim/perturbation.hpp"

namespace gesim {

double sn_mean_displacement(const Model& m, double t) {
    const cplx sum = m.alpha * (std::polar(1.0, -m.Omega0_rel * t) + std::polar(1.0, -m.Omega1_rel * t));
    return sum.real() / std::sqrt(2.0);
}

SNEvolvedState sn_evolve(const Model& m, double t, const KGrid& grid, bool resonant_only) {
    if (t < 0.0) throw PhysicsError("sn_evolve: negative time");
    grid.validate();
    SNEvolvedState s;
    s.t = t;
    s.model = m;
    s.grid = grid;
    s.resonant_only = resonant_only;
    s.bound_phase = std::polar(1.0, t);
    s.branch_beta = {m.alpha * std::polar(1.0, -m.Omega0_rel * t),
                     m.alpha * std::polar(1.0, -m.Omega1_rel * t)};
    s.continuum.resize(grid.size());
    const cplx a = m.alpha, ac = std::conj(m.alpha);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double k = grid.nodes[i];
        cplx amp = a * transition_amplitude(k, m.Omega1_rel, t);
        if (!resonant_only) {
            amp += a * transition_amplitude(k, m.Omega0_rel, t);
            amp += ac * transition_amplitude(k, -m.Omega0_rel, t);
            amp += ac * transition_amplitude(k, -m.Omega1_rel, t);
        }
        s.continuum[i] = 0.5 * m.g * amp * std::polar(1.0, -k * k * t);
    }
    return s;
}

SNEvolvedState sn_evolve(const Model& m, double t, bool resonant_only) {
    return sn_evolve(m, t, build_kgrid(m, t), resonant_only);
}

double SNEvolvedState::excited_norm2() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        acc += grid.weights[i] * std::norm(continuum[i]);
    return acc;
}

double sn_pex(const Model& m, double t, bool resonant_only) {
    return sn_evolve(m, t, resonant_only).excited_norm2();
}

double sn_visibility(const Model& m, double t, bool /*detected*/) {
    if (t < 0.0) throw PhysicsError("sn_visibility: negative time");
    // The projected particle factor cancels between the branches, so detection
    // leaves the qubit-oscillator overlap untouched.
    const cplx b0 = m.alpha * std::polar(1.0, -m.Omega0_rel * t);
    const cplx b1 = m.alpha * std::polar(1.0, -m.Omega1_rel * t);
    return std::abs(std::exp(-0.5 * std::norm(b1) - 0.5 * std::norm(b0) + std::conj(b1) * b0));
}

}  // namespace gesim
