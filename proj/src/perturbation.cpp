#include "gesim/perturbation.hpp"

#include <cmath>

#include "gesim/errors.hpp"
#include "gesim/pt.hpp"

namespace gesim {

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// (1 - e^{i theta t}) / theta, exact at the removable singularity.
cplx phase_quotient(double theta, double t) {
    const double h = 0.5 * theta * t;
    return cplx(0.0, -t) * std::polar(1.0, h) * sinc(h);
}

double factorial_sqrt(int n) {
    double s = 1.0;
    for (int i = 2; i <= n; ++i) s *= std::sqrt(static_cast<double>(i));
    return s;
}

}  // namespace

cplx transition_amplitude(double k, double Omega, double t) {
    if (t < 0.0) throw PhysicsError("transition_amplitude: negative time");
    const double theta = k * k + 1.0 - Omega;  // omega_k - omega_b - Omega
    return pt::overlap_J(k) / std::sqrt(2.0) * phase_quotient(theta, t);
}

cplx coefficient_bound(int n, cplx alpha) {
    if (n < 0) throw PhysicsError("coefficient_bound: negative occupation");
    return std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, n) / factorial_sqrt(n);
}

cplx coefficient_excited(double k, int n, double Omega, double t, const Model& m) {
    if (n < 0 || t < 0.0) throw PhysicsError("coefficient_excited: bad arguments");
    const double theta_minus = k * k + 1.0 - Omega;
    const double theta_plus = k * k + 1.0 + Omega;
    const cplx alpha = m.alpha;
    // alpha^n * [ (n/alpha) D(theta_plus) + alpha D(theta_minus) ], written so
    // alpha = 0 stays finite.
    cplx bracket = std::pow(alpha, n + 1) * phase_quotient(theta_minus, t);
    if (n >= 1)
        bracket += static_cast<double>(n) * std::pow(alpha, n - 1) * phase_quotient(theta_plus, t);
    const cplx base = std::exp(-0.5 * std::norm(alpha)) / factorial_sqrt(n);
    return base * (m.g / std::sqrt(2.0)) * pt::overlap_J(k) * bracket;
}

std::array<std::array<cplx, 2>, 2> sector_gram(cplx beta_left, cplx beta_right,
                                               double omega_left, double omega_right,
                                               int n_max) {
    const auto cl = FockVector::coherent(beta_left, omega_left, n_max);
    const auto rl = FockVector::raised_coherent(beta_left, omega_left, n_max);
    const auto cr = FockVector::coherent(beta_right, omega_right, n_max);
    const auto rr = FockVector::raised_coherent(beta_right, omega_right, n_max);
    return {{{fock_inner(cl, cr), fock_inner(cl, rr)},
             {fock_inner(rl, cr), fock_inner(rl, rr)}}};
}

EvolvedState evolve(const Model& m, double t, bool include_offres, const KGrid& grid) {
    if (t < 0.0) throw PhysicsError("evolve: negative time");
    grid.validate();

    EvolvedState s;
    s.t = t;
    s.model = m;
    s.grid = grid;
    s.bound_phase = std::polar(1.0, t);  // e^{-i omega_b t}, omega_b = -1
    s.branch_beta = {m.alpha * std::polar(1.0, -m.Omega0_rel * t),
                     m.alpha * std::polar(1.0, -m.Omega1_rel * t)};
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
            term.amplitude[i] =
                transition_amplitude(k, Omega, t) * std::polar(1.0, -k * k * t);
        }
        return term;
    };

    // Resonant branch-1 term first, then the three off-resonant pieces.
    s.terms.push_back(continuum(1, m.g * m.alpha, m.Omega1_rel, SectorKind::coherent));
    if (include_offres) {
        s.terms.push_back(continuum(0, m.g * m.alpha, m.Omega0_rel, SectorKind::coherent));
        s.terms.push_back(continuum(0, m.g * std::polar(1.0, -m.Omega0_rel * t),
                                    -m.Omega0_rel, SectorKind::raised_coherent));
        s.terms.push_back(continuum(1, m.g * std::polar(1.0, -m.Omega1_rel * t),
                                    -m.Omega1_rel, SectorKind::raised_coherent));
    }
    return s;
}

EvolvedState evolve(const Model& m, double t, bool include_offres) {
    return evolve(m, t, include_offres, build_kgrid(m, t));
}

double EvolvedState::undetected_visibility() const {
    const cplx ov = std::exp(-0.5 * std::norm(branch_beta[1]) - 0.5 * std::norm(branch_beta[0]) +
                             std::conj(branch_beta[1]) * branch_beta[0]);
    return std::abs(std::conj(branch_phase[1]) * branch_phase[0] * ov);
}

double EvolvedState::resonant_norm2() const {
    if (terms.empty()) return 0.0;
    const ContinuumTerm& r = terms.front();
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        acc += grid.weights[i] * std::norm(r.amplitude[i]);
    return 0.5 * std::norm(r.prefactor) * acc;  // 1/2 branch weight
}

double EvolvedState::resonant_peak_k() const {
    if (terms.empty()) return 0.0;
    const ContinuumTerm& r = terms.front();
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(r.amplitude[i]) > std::abs(r.amplitude[best])) best = i;
    return std::abs(grid.nodes[best]);
}

double EvolvedState::branch_excited_norm2(int branch) const {
    const int n_max = fock_n_max(model.alpha_abs2());
    std::vector<const ContinuumTerm*> in_branch;
    for (const auto& t_ : terms)
        if (t_.branch == branch) in_branch.push_back(&t_);
    if (in_branch.empty()) return 0.0;
    const double omega = branch == 0 ? model.Omega0_rel : model.Omega1_rel;
    const cplx beta = branch_beta[branch];
    const auto gram = sector_gram(beta, beta, omega, omega, n_max);
    auto gram_of = [&](SectorKind a, SectorKind b) {
        const int ia = a == SectorKind::coherent ? 0 : 1;
        const int ib = b == SectorKind::coherent ? 0 : 1;
        return gram[ia][ib];
    };
    double total = 0.0;
    for (const auto* ta : in_branch) {
        for (const auto* tb : in_branch) {
            const cplx g = gram_of(ta->sector, tb->sector);
            cplx acc{0.0, 0.0};
            for (std::size_t i = 0; i < grid.size(); ++i)
                acc += grid.weights[i] * std::conj(ta->amplitude[i]) * tb->amplitude[i];
            total += 0.5 * std::real(std::conj(ta->prefactor) * tb->prefactor * g * acc);
        }
    }
    return total;
}

double EvolvedState::excited_norm2() const {
    return branch_excited_norm2(0) + branch_excited_norm2(1);
}

}  // namespace gesim
