#pragma once

// Invariant sweeps shared by the unit tests and the acceptance binary. Each
// returns the worst defect observed over a seeded random sample.

#include <cstdint>
#include <string>
#include <vector>

#include "causal_locus/hypersurface.hpp"

namespace props {

double jet_product_rule(std::uint64_t seed, int trials);
double jet_sqrt_square(std::uint64_t seed, int trials);

// Random cubic graphs x2 + sum c_ij x^i y^j over Minkowski and over the
// perturbed chart.
std::vector<causal::GraphSurface> random_surfaces(std::uint64_t seed, int count);
std::vector<causal::Vec> random_points(std::uint64_t seed, int count, int n, double half_width);

// Worst |g(nu, nu) - det(g) B| / (1 + |B|); det(g) = -1 in Minkowski.
double nu_norm_identity(std::uint64_t seed, int points);
double cofactor_identity(std::uint64_t seed, int points);

double geodesic_energy_drift(std::uint64_t seed, int curves);
double transport_inner_product_drift(std::uint64_t seed, int curves);
// err(h) / err(h/2) for the endpoint of a geodesic on the perturbed chart.
double rk4_order_ratio();

}  // namespace props
