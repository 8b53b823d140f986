#include "gesim/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "gesim/errors.hpp"

namespace gesim::quad {

namespace {

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
};

Rule compute_rule(int n) {
    // Newton iteration on P_n with the Chebyshev-angle initial guess.
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

const Rule& rule(int n) {
    static std::map<int, Rule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
    return it->second;
}

}  // namespace

const std::vector<double>& gl_nodes(int n) { return rule(n).x; }
const std::vector<double>& gl_weights(int n) { return rule(n).w; }

Panelization composite_gl(const std::vector<double>& bounds, int points_per_panel) {
    const auto& x = gl_nodes(points_per_panel);
    const auto& w = gl_weights(points_per_panel);
    Panelization p;
    if (bounds.size() < 2) return p;
    p.nodes.reserve((bounds.size() - 1) * x.size());
    p.weights.reserve((bounds.size() - 1) * x.size());
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double a = bounds[i], b = bounds[i + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (std::size_t j = 0; j < x.size(); ++j) {
            p.nodes.push_back(mid + half * x[j]);
            p.weights.push_back(half * w[j]);
        }
    }
    return p;
}

std::vector<double> march_bounds(double a, double b,
                                 const std::function<double(double)>& max_width,
                                 std::size_t max_panels) {
    std::vector<double> bounds{a};
    double x = a;
    while (x < b) {
        double step = max_width(x);
        if (!(step > 0.0)) throw std::invalid_argument("march_bounds: non-positive panel width");
        x = std::min(x + step, b);
        bounds.push_back(x);
        if (bounds.size() > max_panels)
            throw QuadratureResolutionError("panel count exceeds limit; integrand too oscillatory for requested span");
    }
    return bounds;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double panel_width, int points_per_panel) {
    auto bounds = march_bounds(a, b, [panel_width](double) { return panel_width; }, 1u << 24);
    auto p = composite_gl(bounds, points_per_panel);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.nodes.size(); ++i) sum += p.weights[i] * f(p.nodes[i]);
    return sum;
}

}  // namespace gesim::quad
