#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "gesim/model.hpp"

namespace gesim::oracle {

using cplx = std::complex<double>;

// Spatial/temporal discretization of the two-branch (X, Y) propagation.
// Node counts must be powers of two (spectral kinetic step).
struct GridSpec {
    double x_max = 120.0;
    std::size_t nx = 2048;
    double y_max = 8.0;
    std::size_t ny = 128;
    double dt = 1e-3;
    double absorber_frac = 0.15;  // outer fraction of the X axis ramped per side
    bool absorber_enabled = false;

    static GridSpec defaults(const Model& m, double t_end);
    // Throws GridExtentError / StepSizeError when the grid cannot carry the
    // excited flux of a propagation to t_end.
    void validate(const Model& m, double t_end) const;

    double dx() const { return 2.0 * x_max / static_cast<double>(nx); }
    double dy() const { return 2.0 * y_max / static_cast<double>(ny); }
};

// Smallest wavenumber outside which the excited spectrum at time t carries
// less than `tail_fraction` of its weight. Sets the required X extent through
// the group velocity dX/dtau = 2k.
double excitation_k_cut(const Model& m, double t, double tail_fraction = 1e-6);

struct Measurement {
    double tau = 0.0;
    double norm2 = 0.0;
    double bound_prob = 0.0;
    double p_ex = 0.0;
    double visibility = 0.0;
    double negativity = 0.0;
    std::array<double, 2> branch_norm2{};
    std::array<double, 2> mean_y{};
};

class Fft2;  // FFTW wrapper, one plan set per grid shape

// Two-branch wavefunction on the (X, Y) grid under
//   H_br = P_x^2 - 2/cosh^2 X + g X Y + Omega_br (P_y^2 + Y^2) / 2,
// propagated with Strang splitting (spectral kinetic step).
class GridWavefunction {
  public:
    GridWavefunction(const Model& m, const GridSpec& spec, double t_end_hint);
    ~GridWavefunction();
    GridWavefunction(const GridWavefunction&) = delete;
    GridWavefunction& operator=(const GridWavefunction&) = delete;

    void propagate(double t_end);
    Measurement measure() const;
    // Visibility of the state after projecting out the bound X component.
    double detected_visibility() const;

    double time() const { return tau_; }
    const GridSpec& spec() const { return spec_; }
    double norm2() const;
    double bound_projection() const;
    std::array<double, 2> mean_y() const;
    const std::vector<cplx>& branch(int br) const { return psi_[br]; }

    void write_snapshot(const std::string& path) const;

  private:
    void apply_position_phase(const std::vector<cplx>& table);
    void apply_kinetic();

    Model model_;
    GridSpec spec_;
    double tau_ = 0.0;
    std::array<std::vector<cplx>, 2> psi_;
    std::vector<double> bound_vec_;            // grid-normalized psi_b samples
    std::array<std::vector<cplx>, 2> vfull_, vhalf_, kin_;
    std::vector<double> mask_;
    std::unique_ptr<Fft2> fft_;
};

// Mean-field (1D) mode: particle driven by g <Y>(t) X. omega1_only restricts
// the drive to its high-frequency tone.
class SNGridWavefunction {
  public:
    SNGridWavefunction(const Model& m, const GridSpec& spec, double t_end_hint,
                       bool omega1_only = false);
    ~SNGridWavefunction();
    SNGridWavefunction(const SNGridWavefunction&) = delete;
    SNGridWavefunction& operator=(const SNGridWavefunction&) = delete;

    void propagate(double t_end);
    double time() const { return tau_; }
    double norm2() const;
    double bound_projection() const;
    double p_ex() const { return 1.0 - bound_projection(); }

  private:
    Model model_;
    GridSpec spec_;
    bool omega1_only_ = false;
    double tau_ = 0.0;
    std::vector<cplx> psi_;
    std::vector<double> bound_vec_;
    std::vector<cplx> kin_;
    std::vector<double> x_, well_;
    std::vector<double> mask_;
    std::unique_ptr<Fft2> fft_;  // 1D plans (ny = 1)
};

}  // namespace gesim::oracle
