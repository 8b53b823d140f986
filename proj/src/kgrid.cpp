#include "gesim/kgrid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gesim/errors.hpp"
#include "gesim/model.hpp"
#include "gesim/quadrature.hpp"

namespace gesim {

double KGrid::max_gap() const {
    double gap = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) gap = std::max(gap, nodes[i] - nodes[i - 1]);
    return gap;
}

void KGrid::validate() const {
    if (nodes.size() != weights.size() || nodes.empty())
        throw PhysicsError("KGrid: empty or mismatched nodes/weights");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (weights[i] <= 0.0) throw PhysicsError("KGrid: non-positive weight");
        if (i > 0 && nodes[i] <= nodes[i - 1]) throw PhysicsError("KGrid: nodes not increasing");
    }
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        if (std::abs(nodes[i] + nodes[n - 1 - i]) > 1e-12 ||
            std::abs(weights[i] - weights[n - 1 - i]) > 1e-14)
            throw PhysicsError("KGrid: grid not symmetric about 0");
    }
}

namespace {

KGrid mirror_half(const quad::Panelization& half, double span, std::size_t panels) {
    KGrid g;
    g.span = span;
    g.refined_panels = panels;
    const std::size_t n = half.nodes.size();
    g.nodes.resize(2 * n);
    g.weights.resize(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        g.nodes[n + i] = half.nodes[i];
        g.weights[n + i] = half.weights[i];
        g.nodes[n - 1 - i] = -half.nodes[i];
        g.weights[n - 1 - i] = half.weights[i];
    }
    g.validate();
    return g;
}

}  // namespace

KGrid build_kgrid(double t, double span) {
    if (t < 0.0) throw PhysicsError("build_kgrid: negative time");
    // Lobe width in k at wavenumber k is pi/(k t); cap panels at half of it.
    // Node budget ~ 16 * span^2 * t / pi; cap at ~4e6 nodes.
    const double tt = std::max(t, 0.0);
    auto width = [tt](double k) {
        double w = 0.25;
        if (tt > 0.0) w = std::min(w, std::numbers::pi / (2.0 * tt * std::max(k, 0.05)));
        return w;
    };
    std::vector<double> bounds;
    try {
        bounds = quad::march_bounds(0.0, span, width, 250000);
    } catch (const QuadratureResolutionError&) {
        throw QuadratureResolutionError(
            "resonance kernel too narrow to panelize at t = " + std::to_string(t));
    }
    auto half = quad::composite_gl(bounds, 16);
    return mirror_half(half, span, bounds.size() - 1);
}

KGrid build_kgrid(const Model& /*m*/, double t) { return build_kgrid(t, kgrid_default_span); }

KGrid build_uniform_kgrid(double span, std::size_t panels, int points_per_panel) {
    if (panels == 0) throw PhysicsError("build_uniform_kgrid: need at least one panel");
    std::vector<double> bounds(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i)
        bounds[i] = span * static_cast<double>(i) / static_cast<double>(panels);
    auto half = quad::composite_gl(bounds, points_per_panel);
    return mirror_half(half, span, panels);
}

}  // namespace gesim
