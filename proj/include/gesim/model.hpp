#pragma once

#include <complex>
#include <string>
#include <vector>

namespace gesim {

namespace si {
inline constexpr double G_newton = 6.67430e-11;   // m^3 kg^-1 s^-2
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double c_light = 2.99792458e8;   // m/s
inline constexpr double hour = 3600.0;
inline constexpr double year = 365.25 * 86400.0;  // Julian year
}  // namespace si

// Experimental parameters in SI units. The trapped particle (mass m) sits in a
// sech^2 well of width L; the source oscillator (mass M) sits a distance d away
// with base frequency Omega0 and a frequency-raised branch Omega1.
struct PhysicalConfig {
    double m = 0.0;        // particle mass (kg)
    double M = 0.0;        // oscillator mass (kg)
    double d = 0.0;        // separation (m)
    double L = 0.0;        // well width (m)
    double Omega0 = 0.0;   // base angular frequency (rad/s)
    double Omega1 = 0.0;   // high-branch angular frequency (rad/s); 0 = supplied later
    std::complex<double> alpha{0.0, 0.0};
    double G = si::G_newton;
    double hbar = si::hbar;

    // d must dominate both the well width and the oscillator length scale for
    // the bilinear expansion of the interaction to hold.
    double scale_separation_min = 1e3;
};

// Dimensionless model consumed by every physics routine. Internal unit system:
// hbar = 1, |omega_b| = 1 (times in 1/|omega_b|), omega_b itself is negative and
// stored as a magnitude, so omega_k - omega_b = k^2 + 1 never loses the sign.
struct Model {
    double omega_b_abs = 1.0;  // rad/s, for converting back to SI
    double sigma_y = 0.0;      // oscillator length scale (m); 0 when built dimensionless
    double g = 0.0;            // dimensionless bilinear coupling
    double Omega0_rel = 0.0;   // Omega0 / |omega_b|
    double Omega1_rel = 0.0;   // Omega1 / |omega_b|
    std::complex<double> alpha{0.0, 0.0};
    double k_res = 0.0;        // sqrt(Omega1_rel - 1)
    double t_sat = 0.0;        // pi / k_res
    double omega_res = 0.0;    // Omega1_rel - 1 (= k_res^2)
    std::vector<std::string> warnings;

    double alpha_abs2() const { return std::norm(alpha); }
};

// Derive the dimensionless model from SI inputs. Throws ResonanceOrderingError
// when Omega0 < |omega_b| < Omega1 fails, ScaleSeparationError when d is not
// large against L and sigma_y.
Model derive_model(const PhysicalConfig& cfg);

// Build a model directly from dimensionless numbers (omega_b_abs only matters
// for SI time conversion).
Model make_model(double g, double Omega0_rel, double Omega1_rel,
                 std::complex<double> alpha, double omega_b_abs = 1.0);

// Resonant wavenumber that makes the saturation time equal a run of length
// tau1 seconds: k_res = pi / (|omega_b| tau1).
double tuned_k_res(double omega_b_abs, double tau1_seconds);

double to_dimensionless_time(const Model& m, double t_seconds);
double to_si_time(const Model& m, double tau);

}  // namespace gesim
