#include "gesim/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gesim/errors.hpp"

namespace gesim {

namespace {

void finish_resonance_fields(Model& m) {
    if (m.Omega0_rel >= 1.0)
        throw ResonanceOrderingError("Omega0 must stay below |omega_b| (got Omega0/|omega_b| = " +
                                     std::to_string(m.Omega0_rel) + ")");
    if (m.Omega1_rel <= 1.0)
        throw ResonanceOrderingError("Omega1 must exceed |omega_b| (got Omega1/|omega_b| = " +
                                     std::to_string(m.Omega1_rel) + ")");
    m.omega_res = m.Omega1_rel - 1.0;
    m.k_res = std::sqrt(m.omega_res);
    m.t_sat = std::numbers::pi / m.k_res;
    if (m.g > 1e-2) {
        std::ostringstream os;
        os << "g = " << m.g << " exceeds 1e-2; first-order amplitudes may be inaccurate";
        m.warnings.push_back(os.str());
    }
}

}  // namespace

Model derive_model(const PhysicalConfig& cfg) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw PhysicsError(std::string(name) + " must be strictly positive");
    };
    positive(cfg.m, "m");
    positive(cfg.M, "M");
    positive(cfg.d, "d");
    positive(cfg.L, "L");
    positive(cfg.Omega0, "Omega0");
    positive(cfg.Omega1, "Omega1");
    positive(cfg.G, "G");
    positive(cfg.hbar, "hbar");

    Model m;
    m.omega_b_abs = cfg.hbar / (2.0 * cfg.m * cfg.L * cfg.L);
    m.sigma_y = std::sqrt(cfg.hbar / (cfg.M * cfg.Omega0));

    if (cfg.d / cfg.L < cfg.scale_separation_min || cfg.d / m.sigma_y < cfg.scale_separation_min) {
        std::ostringstream os;
        os << "separation does not dominate internal scales: d/L = " << cfg.d / cfg.L
           << ", d/sigma_y = " << cfg.d / m.sigma_y << " (need >= " << cfg.scale_separation_min << ")";
        throw ScaleSeparationError(os.str());
    }

    const double E_b_abs = cfg.hbar * m.omega_b_abs;
    m.g = 2.0 * cfg.G * cfg.m * cfg.M * cfg.L * m.sigma_y / (E_b_abs * cfg.d * cfg.d * cfg.d);
    m.Omega0_rel = cfg.Omega0 / m.omega_b_abs;
    m.Omega1_rel = cfg.Omega1 / m.omega_b_abs;
    m.alpha = cfg.alpha;
    finish_resonance_fields(m);
    return m;
}

Model make_model(double g, double Omega0_rel, double Omega1_rel,
                 std::complex<double> alpha, double omega_b_abs) {
    if (!(omega_b_abs > 0.0)) throw PhysicsError("omega_b_abs must be strictly positive");
    if (g < 0.0) throw PhysicsError("g must be non-negative");
    Model m;
    m.omega_b_abs = omega_b_abs;
    m.g = g;
    m.Omega0_rel = Omega0_rel;
    m.Omega1_rel = Omega1_rel;
    m.alpha = alpha;
    finish_resonance_fields(m);
    return m;
}

double tuned_k_res(double omega_b_abs, double tau1_seconds) {
    if (!(omega_b_abs > 0.0) || !(tau1_seconds > 0.0))
        throw PhysicsError("tuned_k_res needs positive omega_b and tau1");
    return std::numbers::pi / (omega_b_abs * tau1_seconds);
}

double to_dimensionless_time(const Model& m, double t_seconds) { return m.omega_b_abs * t_seconds; }

double to_si_time(const Model& m, double tau) { return tau / m.omega_b_abs; }

}  // namespace gesim
