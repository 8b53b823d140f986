#pragma once

#include <cstddef>
#include <vector>

namespace gesim {

struct Model;

// Quadrature grid over the continuum wavenumber axis, symmetric about k = 0.
// Nodes never include the endpoints of a panel, so integrable 1/sqrt endpoints
// are harmless.
struct KGrid {
    std::vector<double> nodes;    // strictly increasing, symmetric about 0
    std::vector<double> weights;  // positive

    double span = 0.0;            // background half-width
    std::size_t refined_panels = 0;

    std::size_t size() const { return nodes.size(); }
    double max_gap() const;
    void validate() const;  // throws PhysicsError on a malformed grid
};

// Background span: |J_k|^2 < 1e-9 outside |k| <= 8.
inline constexpr double kgrid_default_span = 8.0;

// Build a grid that resolves every sinc lobe of the time-t excitation kernel:
// panel width <= min(0.25, half the local lobe width pi/(k t)), 16-point
// Gauss-Legendre per panel (>= 32 nodes per lobe). Throws
// QuadratureResolutionError when the required node count explodes.
KGrid build_kgrid(double t, double span = kgrid_default_span);
KGrid build_kgrid(const Model& m, double t);

// Uniformly panelized symmetric grid (used for sifting tests and CSV dumps).
KGrid build_uniform_kgrid(double span, std::size_t panels, int points_per_panel = 8);

}  // namespace gesim
