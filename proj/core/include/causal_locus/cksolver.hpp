#pragma once

#include <optional>
#include <string>

#include "causal_locus/expr.hpp"
#include "causal_locus/jet.hpp"
#include "causal_locus/series.hpp"

namespace causal {

// Light-like graph in Minkowski space with f(x', 0) = lambda(x') and
// f_{x_n} = sqrt(1 - sum_{i<n} f_{x_i}^2), as a series of the given order.
// lambda is an expression in x1..x_{n-1} without constant or linear part.
SeriesSurface build_lightlike(int n, const Expr& lambda, int order);
SeriesSurface build_lightlike(int n, std::string_view lambda, int order);

// Graph with A_F = phi (B_F)^{1 + alpha} in Minkowski space, from
// f(x', 0) = eta0(x') and f_{x_n}(x', 0) = 1 + eta1(x'). eta0 has no
// constant or linear part, eta1 no constant part; phi is an expression in
// x1..xn and alpha a non-negative integer.
SeriesSurface build_admissible(int n, const Expr& eta0, const Expr& eta1, const Expr& phi,
                               int alpha, int order);
SeriesSurface build_admissible(int n, std::string_view eta0, std::string_view eta1,
                               std::string_view phi, int alpha, int order);

struct SeriesResidual {
  std::string target;  // "B" or "A - phi B^(1+alpha)"
  int valid_order = 0;
  double max_abs = 0.0;
  Jet jet{1, 0};
};

// B_F when phi is absent, otherwise A_F - phi (B_F)^{1+alpha}, computed in
// jet arithmetic on the series and truncated to the order it is valid to.
SeriesResidual series_residual(const SeriesSurface& s, const std::optional<Expr>& phi,
                               int alpha = 0);
// Same with phi given as a jet about the origin.
SeriesResidual series_residual(const SeriesSurface& s, const Jet& phi, int alpha);

// The x_n = 0 data read back from a series: f(x', 0) to the series order and
// f_{x_n}(x', 0) - 1 to one less, as jets in all n variables.
Jet initial_value(const SeriesSurface& s);
Jet initial_slope(const SeriesSurface& s);

// Largest |c_k - delta_{k1}| over the coefficients of x_n^k, k <= order:
// zero exactly when f(0, ..., 0, t) = t to the series order.
double axis_defect(const SeriesSurface& s);

// Antiderivative in x_var vanishing at x_var = 0; raises the order by one.
Jet integrate(const Jet& a, int var);

}  // namespace causal
