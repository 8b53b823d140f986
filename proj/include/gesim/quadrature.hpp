#pragma once

#include <functional>
#include <vector>

namespace gesim::quad {

// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
// Computed once per order via Newton iteration and cached.
const std::vector<double>& gl_nodes(int n);
const std::vector<double>& gl_weights(int n);

struct Panelization {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Composite Gauss-Legendre rule: one n-point panel per [bounds[i], bounds[i+1]].
Panelization composite_gl(const std::vector<double>& bounds, int points_per_panel);

// Panel boundaries marching a to b with a position-dependent width cap.
std::vector<double> march_bounds(double a, double b,
                                 const std::function<double(double)>& max_width,
                                 std::size_t max_panels);

// Integrate f over [a, b] with fixed-width panels (width capped at panel_width).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double panel_width, int points_per_panel = 16);

}  // namespace gesim::quad
