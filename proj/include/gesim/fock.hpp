#pragma once

#include <complex>
#include <vector>

namespace gesim {

using cplx = std::complex<double>;

// Truncation that keeps the coherent tail mass below 1e-12.
int fock_n_max(double alpha_abs2);

// Oscillator-sector vector in the shared truncated Fock basis, tagged with the
// branch frequency it evolves under.
struct FockVector {
    std::vector<cplx> c;
    double omega = 0.0;

    static FockVector coherent(cplx beta, double omega, int n_max);
    // a^dagger |beta>, unnormalized: norm^2 = 1 + |beta|^2.
    static FockVector raised_coherent(cplx beta, double omega, int n_max);

    double norm2() const;
    int size() const { return static_cast<int>(c.size()); }
};

cplx fock_inner(const FockVector& a, const FockVector& b);

// <n|Y|n'> = (delta_{n,n'-1} sqrt(n') + delta_{n,n'+1} sqrt(n'+1)) / sqrt(2)
double ladder_element(int n, int n_prime);

}  // namespace gesim
