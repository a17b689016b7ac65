#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vortexem::fd {

/// Fornberg weights: w[j] such that f^(order)(x0) ~ sum_j w[j] f(nodes[j]).
std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int order);

/// Five-point stencil (offsets relative to node i, in units of h) used for a fourth-order
/// derivative at node i of a uniform grid with `count` nodes: centred in the interior,
/// shifted one-sided at the two nodes nearest each end.
struct Stencil {
    std::ptrdiff_t first;          // index of the first stencil node
    std::vector<double> weights;   // multiply by 1/h^order
};

/// Fourth-order first-derivative stencil at node i.
Stencil first_derivative_stencil(std::size_t i, std::size_t count);

/// Fourth-order second-derivative stencil at node i (six points near the ends).
Stencil second_derivative_stencil(std::size_t i, std::size_t count);

/// Sixth-order (seven-point) derivative of samples on a uniform grid of spacing h, one-sided
/// near the ends.  Differences are taken relative to the centre value so constant input
/// yields exactly zero.
std::vector<double> derivative(std::span<const double> values, double h);

/// Running integral F_k = int_{x_0}^{x_k} f on a uniform grid; each cell integrates the
/// quintic through its six nearest nodes (sixth order).
std::vector<double> cumulative_integral(std::span<const double> values, double h);

/// Composite trapezoid of `values` over `x` (not necessarily uniform).
double trapezoid(std::span<const double> x, std::span<const double> values);

}  // namespace vortexem::fd
