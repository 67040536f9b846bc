#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "causal_locus/hypersurface.hpp"
#include "causal_locus/metric.hpp"

namespace causal {

struct CatalogEntry {
  std::string id;
  std::string title;
  int n = 2;
  std::string f;        // height function over (x, y) / (x1, ..., xn)
  std::string ambient;  // "minkowski" or "perturbed"
  // Closed forms of B_F and A_F as printed for the example, when available.
  std::string B_closed;
  std::string A_closed;
  // phi with A = phi B^{1+alpha} on a neighbourhood of the origin, when known.
  std::string phi;
  int alpha = 0;
};

// The builtin examples: F1, F2, F3, kobayashi, lightcone, lightplane,
// perturbed.
const std::vector<CatalogEntry>& catalog();
// Throws ValidationError for an unknown id.
const CatalogEntry& catalog_entry(std::string_view id);
GraphSurface catalog_surface(const CatalogEntry& e);

// Quadratic perturbation of Minkowski in 2+1 dimensions, admissible at the
// origin:
//   g00 = -(1 + eps x1^2), g01 = eps x0 x2, g11 = 1 + eps x2^2,
//   g12 = eps x1^2,        g22 = 1 + eps x0 x1, g02 = 0.
MetricChart perturbed_metric(double eps = 0.1);
// Minkowski plus eps x1^2 (dx1 dx2 + dx2 dx1)/2, i.e. g12 = eps x1^2.
MetricChart g12_perturbed_metric(double eps = 0.1);

struct SelfCheck {
  std::string id;
  bool applicable = false;
  double max_rel_B = 0.0;
  double max_rel_A = 0.0;
  bool pass = true;
};

// Compares the computed B and A against the closed forms at three seeded
// random points in [-0.5, 0.5]^2.
SelfCheck self_check(const CatalogEntry& e, std::uint64_t seed = 20240531, double tol = 1e-11);

}  // namespace causal
