#pragma once

#include <complex>
#include <functional>

#include "gesim/kgrid.hpp"

namespace gesim::pt {

using cplx = std::complex<double>;

// Bound-state amplitude 1/(sqrt(2) cosh X). Energy is -1 in internal units.
double eval_bound(double X);

// Delta-normalized continuum amplitude (tanh X - ik) e^{ikX} / (sqrt(2 pi)(1 - ik)),
// energy k^2.
cplx eval_scattering(double k, double X);

// Dipole overlap <k|X|b> in closed form: (sqrt(pi)/2) / ((1 + ik) cosh(k pi/2)).
cplx overlap_J(double k);

// |J_k|^2 = (pi/4) / ((1 + k^2) cosh^2(k pi/2)), evaluated without overflow.
double overlap_J_abs2(double k);

// Finite-box quadrature surrogates for the improper inner products. Box error
// decays like e^{-x_max}; defaults keep it far below the test tolerances.
struct BoxQuadrature {
    double x_max = 40.0;
    int points_per_panel = 16;
};

double bound_norm(const BoxQuadrature& q = {});                    // <b|b>
cplx bound_scattering_overlap(double k, const BoxQuadrature& q = {});  // <b|k>
cplx overlap_J_quadrature(double k, const BoxQuadrature& q = {});  // <k|X|b>

// Sifting check of <k'|k> = delta(k - k'): returns Re of the nested quadrature
// integral of <k'|k> f(k') dk' over the supplied outer grid, which should
// approximate f(k). Throws QuadratureResolutionError when the outer grid cannot
// resolve the sin((k - k') x_max) kernel.
double delta_normalization_check(double k, const std::function<double(double)>& test_fn,
                                 const KGrid& outer, const BoxQuadrature& q = {});

}  // namespace gesim::pt
