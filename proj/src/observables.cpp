#include "gesim/observables.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "gesim/errors.hpp"
#include "gesim/pt.hpp"

namespace gesim {

namespace {

constexpr double pi = std::numbers::pi;

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// (sin(theta t/2)/theta)^2 in the cancellation-free form (t/2)^2 sinc^2.
double sinc_kernel(double theta, double t) {
    const double h = 0.5 * theta * t;
    const double s = 0.5 * t * sinc(h);
    return s * s;
}

cplx coherent_overlap(cplx beta_left, cplx beta_right) {
    return std::exp(-0.5 * std::norm(beta_left) - 0.5 * std::norm(beta_right) +
                    std::conj(beta_left) * beta_right);
}

void check_time(double t) {
    if (t < 0.0) throw PhysicsError("observable requested at negative time");
}

}  // namespace

double delta_kernel(double k, double t, const Model& m) {
    check_time(t);
    return sinc_kernel(k * k - m.omega_res, t);
}

double delta_kernel_integral(const Model& m, double t) {
    const KGrid grid = build_kgrid(m, t);
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        acc += grid.weights[i] * delta_kernel(grid.nodes[i], t, m);
    return acc;
}

const char* to_string(PexMethod m) {
    switch (m) {
        case PexMethod::numeric: return "numeric";
        case PexMethod::golden_rule: return "golden_rule";
        case PexMethod::saddle_short: return "saddle_short";
        case PexMethod::saddle_long: return "saddle_long";
    }
    return "?";
}

PexResult pex(const Model& m, double t, PexMethod method, const KGrid& grid) {
    check_time(t);
    PexResult r;
    r.t = t;
    r.method = method;
    r.t_over_t_sat = t / m.t_sat;
    const double gA2 = m.g * m.g * m.alpha_abs2();
    switch (method) {
        case PexMethod::numeric: {
            double acc = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double k = grid.nodes[i];
                acc += grid.weights[i] * pt::overlap_J_abs2(k) * sinc_kernel(k * k - m.omega_res, t);
            }
            r.value = gA2 * acc;
            break;
        }
        case PexMethod::golden_rule:
            r.value = pi * pi * gA2 * t / (8.0 * m.k_res);
            break;
        case PexMethod::saddle_short:
            r.value = short_time_overlap_integral * gA2 * sinc_kernel(m.omega_res, t);
            break;
        case PexMethod::saddle_long:
            r.value = 0.5 * pi * gA2 * pt::overlap_J_abs2(m.k_res) * t / m.k_res;
            break;
    }
    if (r.value > 1.0)
        r.warnings.push_back("first-order probability exceeds 1; result outside validity range");
    return r;
}

PexResult pex(const Model& m, double t, PexMethod method) {
    if (method == PexMethod::numeric) return pex(m, t, method, build_kgrid(m, t));
    static const KGrid empty = build_uniform_kgrid(1.0, 1);
    return pex(m, t, method, empty);
}

double pex_saddle_long_unit_overlap(const Model& m, double t) {
    check_time(t);
    return 0.5 * pi * m.g * m.g * m.alpha_abs2() * t / m.k_res;
}

double pex_offres_included(const Model& m, double t, const KGrid& grid) {
    return evolve(m, t, /*include_offres=*/true, grid).excited_norm2();
}

double pex_offres_included(const Model& m, double t) {
    return pex_offres_included(m, t, build_kgrid(m, t));
}

double visibility(const Model& m, double t, bool detected, bool include_offres) {
    check_time(t);
    if (!detected) {
        const cplx b0 = m.alpha * std::polar(1.0, -m.Omega0_rel * t);
        const cplx b1 = m.alpha * std::polar(1.0, -m.Omega1_rel * t);
        return std::abs(coherent_overlap(b1, b0));
    }
    if (!include_offres) return 0.0;
    if (t == 0.0) return 1.0;  // nothing to project on; detection impossible

    // Projected state: bound component removed, both branches keep their
    // first-order continuum content with coherent and raised sectors.
    const EvolvedState s = evolve(m, t, /*include_offres=*/true);
    const int n_max = fock_n_max(m.alpha_abs2());
    const double omegas[2] = {m.Omega0_rel, m.Omega1_rel};

    auto branch_terms = [&](int branch) {
        std::vector<const ContinuumTerm*> v;
        for (const auto& term : s.terms)
            if (term.branch == branch) v.push_back(&term);
        return v;
    };
    const auto t0 = branch_terms(0);
    const auto t1 = branch_terms(1);

    auto pair_integral = [&](const ContinuumTerm& a, const ContinuumTerm& b, cplx gram) {
        cplx acc{0.0, 0.0};
        for (std::size_t i = 0; i < s.grid.size(); ++i)
            acc += s.grid.weights[i] * std::conj(a.amplitude[i]) * b.amplitude[i];
        return std::conj(a.prefactor) * b.prefactor * gram * acc;
    };

    const auto gram01 = sector_gram(s.branch_beta[0], s.branch_beta[1], omegas[0], omegas[1], n_max);
    auto idx = [](SectorKind k) { return k == SectorKind::coherent ? 0 : 1; };

    cplx off_diag{0.0, 0.0};
    for (const auto* a : t0)
        for (const auto* b : t1)
            off_diag += pair_integral(*a, *b, gram01[idx(a->sector)][idx(b->sector)]);

    const double norm2 = s.excited_norm2();  // includes the 1/2 branch weights
    if (norm2 <= 0.0) return 0.0;
    // V = 2 |(1/2) <phi_0|phi_1>| / norm2; off_diag carries no branch weights
    return std::abs(off_diag) / norm2;
}

double negativity(const Model& m, double t, NegativityMethod method) {
    check_time(t);
    const PexResult p = pex(m, t, PexMethod::numeric);
    if (method == NegativityMethod::closed_form) return std::sqrt(0.5 * p.value);

    // Two-level pure state in the basis {|b>, |ex>/||ex||} x {|e0>, |e1>}.
    const double eps2 = p.value;  // ||resonant||^2 with branch weight included
    const double eps = std::sqrt(eps2);
    Eigen::Vector4cd v;
    const cplx phase = std::polar(1.0, t);
    v << phase / std::sqrt(2.0), phase / std::sqrt(2.0), cplx{0.0, 0.0}, cplx{eps, 0.0};
    v /= std::sqrt(1.0 + eps2);
    Eigen::Matrix4cd rho = v * v.adjoint();

    // Partial transpose on the particle factor: swap the particle indices of
    // rho_{(p q),(p' q')}.
    Eigen::Matrix4cd pt_rho;
    for (int p_i = 0; p_i < 2; ++p_i)
        for (int q_i = 0; q_i < 2; ++q_i)
            for (int p_j = 0; p_j < 2; ++p_j)
                for (int q_j = 0; q_j < 2; ++q_j)
                    pt_rho(p_j * 2 + q_i, p_i * 2 + q_j) = rho(p_i * 2 + q_i, p_j * 2 + q_j);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt_rho);
    double neg = 0.0;
    for (int i = 0; i < 4; ++i)
        if (es.eigenvalues()[i] < 0.0) neg -= es.eigenvalues()[i];
    return neg;
}

FeasibilityReport feasibility(const FeasibilityInput& in) {
    if (!(in.M_over_d3 > 0.0) || !(in.omega_b_abs > 0.0) || !(in.tau1 > 0.0) ||
        !(in.m_over_M > 0.0) || in.alpha_abs < 0.0 || in.t_tot < 0.0)
        throw PhysicsError("feasibility: inputs must be positive (t_tot may be zero)");

    FeasibilityReport rep;
    rep.input = in;
    const double w = in.omega_b_abs;
    // g = G sqrt(2 m M) / (omega_b^2 d^3) with Omega0 ~= |omega_b|.
    rep.g = in.G * std::sqrt(2.0 * in.m_over_M) * in.M_over_d3 / (w * w);
    rep.k_res = in.optimal_tuning
                    ? tuned_k_res(w, in.tau1)
                    : in.k_res.value_or(0.0);
    if (!(rep.k_res > 0.0)) throw PhysicsError("feasibility: k_res must be positive");
    rep.t_sat_seconds = optimal_run_duration_si(w, rep.k_res);

    const double a2 = in.alpha_abs * in.alpha_abs;
    const double g2a2 = rep.g * rep.g * a2;
    if (in.tau1 * (1.0 + 1e-12) < rep.t_sat_seconds) {
        rep.warnings.push_back("tau1 below the saturation time; using the quadratic short-run rate");
        const double wt = w * in.tau1;
        rep.per_run = 0.25 * short_time_overlap_integral * g2a2 * wt * wt;
    } else {
        rep.per_run = pi * pi * g2a2 * (w * in.tau1) / (8.0 * rep.k_res);
    }
    rep.n_runs = in.t_tot / in.tau1;
    rep.total_linear = rep.n_runs * rep.per_run;
    if (rep.total_linear > 1.0)
        rep.warnings.push_back("accumulated linear probability exceeds 1; campaign is saturated");
    // 1 - (1-p)^N without cancellation for tiny p.
    rep.total_any_excitation = -std::expm1(rep.n_runs * std::log1p(-std::min(rep.per_run, 1.0)));
    return rep;
}

double optimal_run_duration(const Model& m) { return m.t_sat; }

double optimal_run_duration_si(double omega_b_abs, double k_res) {
    if (!(omega_b_abs > 0.0) || !(k_res > 0.0))
        throw PhysicsError("optimal_run_duration_si: need positive omega_b and k_res");
    return pi / (k_res * omega_b_abs);
}

}  // namespace gesim
