#include "gesim/fock.hpp"

#include <cmath>

#include "gesim/errors.hpp"

namespace gesim {

int fock_n_max(double alpha_abs2) {
    return static_cast<int>(std::ceil(alpha_abs2 + 10.0 * std::sqrt(alpha_abs2 + 1.0) + 10.0));
}

FockVector FockVector::coherent(cplx beta, double omega, int n_max) {
    FockVector v;
    v.omega = omega;
    v.c.resize(n_max + 1);
    cplx a = std::exp(-0.5 * std::norm(beta));
    for (int n = 0; n <= n_max; ++n) {
        v.c[n] = a;
        a *= beta / std::sqrt(static_cast<double>(n + 1));
    }
    if (std::abs(1.0 - v.norm2()) > 1e-12)
        throw TruncationError("coherent tail mass above 1e-12 at n_max = " + std::to_string(n_max));
    return v;
}

FockVector FockVector::raised_coherent(cplx beta, double omega, int n_max) {
    FockVector coh = coherent(beta, omega, n_max);
    FockVector v;
    v.omega = omega;
    v.c.assign(n_max + 1, cplx{0.0, 0.0});
    for (int n = 0; n + 1 <= n_max; ++n)
        v.c[n + 1] = std::sqrt(static_cast<double>(n + 1)) * coh.c[n];
    const double expected = 1.0 + std::norm(beta);
    if (std::abs(expected - v.norm2()) > 1e-10 * expected)
        throw TruncationError("raised-coherent tail mass too large at n_max = " + std::to_string(n_max));
    return v;
}

double FockVector::norm2() const {
    double s = 0.0;
    for (const auto& z : c) s += std::norm(z);
    return s;
}

cplx fock_inner(const FockVector& a, const FockVector& b) {
    const int n = std::min(a.size(), b.size());
    cplx s{0.0, 0.0};
    for (int i = 0; i < n; ++i) s += std::conj(a.c[i]) * b.c[i];
    return s;
}

double ladder_element(int n, int n_prime) {
    if (n < 0 || n_prime < 0) throw PhysicsError("ladder_element: negative occupation");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (n == n_prime - 1) return inv_sqrt2 * std::sqrt(static_cast<double>(n_prime));
    if (n == n_prime + 1) return inv_sqrt2 * std::sqrt(static_cast<double>(n_prime + 1));
    return 0.0;
}

}  // namespace gesim
