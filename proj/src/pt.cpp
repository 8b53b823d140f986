#include "gesim/pt.hpp"

#include <cmath>
#include <numbers>

#include "gesim/errors.hpp"
#include "gesim/quadrature.hpp"

namespace gesim::pt {

namespace {
constexpr double pi = std::numbers::pi;
const double sqrt_2pi = std::sqrt(2.0 * pi);
}  // namespace

double eval_bound(double X) {
    // 1/cosh avoids overflow: 2 e^{-|X|} / (1 + e^{-2|X|})
    const double e = std::exp(-std::abs(X));
    const double sech = 2.0 * e / (1.0 + e * e);
    return sech / std::sqrt(2.0);
}

cplx eval_scattering(double k, double X) {
    const cplx num(std::tanh(X), -k);
    const cplx den(1.0, -k);
    return num / (sqrt_2pi * den) * std::polar(1.0, k * X);
}

cplx overlap_J(double k) {
    const double arg = 0.5 * pi * k;
    if (std::abs(arg) > 700.0) return {0.0, 0.0};
    const cplx den = cplx(1.0, k) * std::cosh(arg);
    return (std::sqrt(pi) / 2.0) / den;
}

double overlap_J_abs2(double k) {
    const double arg = 0.5 * pi * k;
    if (std::abs(arg) > 350.0) return 0.0;
    const double ch = std::cosh(arg);
    return (pi / 4.0) / ((1.0 + k * k) * ch * ch);
}

double bound_norm(const BoxQuadrature& q) {
    auto f = [](double X) {
        double b = eval_bound(X);
        return b * b;
    };
    return quad::integrate(f, -q.x_max, q.x_max, 1.0, q.points_per_panel);
}

namespace {

// Complex quadrature with panels sized against the e^{ikX} oscillation.
cplx integrate_cplx(const std::function<cplx(double)>& f, double a, double b,
                    double osc_rate, int pts) {
    const double width = std::min(1.0, pi / (2.0 * std::max(osc_rate, 0.5)));
    auto bounds = quad::march_bounds(a, b, [width](double) { return width; }, 1u << 22);
    auto p = quad::composite_gl(bounds, pts);
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i < p.nodes.size(); ++i) sum += p.weights[i] * f(p.nodes[i]);
    return sum;
}

}  // namespace

cplx bound_scattering_overlap(double k, const BoxQuadrature& q) {
    auto f = [k](double X) { return eval_bound(X) * eval_scattering(k, X); };
    return integrate_cplx(f, -q.x_max, q.x_max, std::abs(k), q.points_per_panel);
}

cplx overlap_J_quadrature(double k, const BoxQuadrature& q) {
    // <k|X|b> = int psi_k^*(X) X psi_b(X) dX
    auto f = [k](double X) { return std::conj(eval_scattering(k, X)) * X * eval_bound(X); };
    return integrate_cplx(f, -q.x_max, q.x_max, std::abs(k), q.points_per_panel);
}

double delta_normalization_check(double k, const std::function<double(double)>& test_fn,
                                 const KGrid& outer, const BoxQuadrature& q) {
    outer.validate();
    // The finite-box kernel oscillates in k' with period 2 pi / x_max.
    const double kernel_period = 2.0 * pi / q.x_max;
    if (outer.max_gap() > kernel_period / 5.0)
        throw QuadratureResolutionError(
            "outer k-grid spacing cannot resolve the finite-box delta kernel (need <= " +
            std::to_string(kernel_period / 5.0) + ")");

    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < outer.size(); ++i) {
        const double kp = outer.nodes[i];
        const double fv = test_fn(kp);
        if (fv == 0.0) continue;
        auto f = [k, kp](double X) {
            return std::conj(eval_scattering(kp, X)) * eval_scattering(k, X);
        };
        acc += outer.weights[i] * fv * integrate_cplx(f, -q.x_max, q.x_max,
                                                      std::abs(k) + std::abs(kp), q.points_per_panel);
    }
    return acc.real();
}

}  // namespace gesim::pt
