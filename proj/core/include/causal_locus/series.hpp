#pragma once

#include <map>
#include <string>

#include "causal_locus/jet.hpp"

namespace causal {

// A height function given as a truncated power series about the origin of
// (x1, ..., xn), together with a record of how it was produced.
struct SeriesSurface {
  int n = 0;
  int order = 0;
  Jet f{1, 0};
  std::string builder;                          // "lightlike", "admissible", ...
  std::map<std::string, std::string> inputs;    // lambda / eta0 / eta1 / phi / alpha

  // Plain evaluation of the truncated polynomial.
  double value_at(std::span<const double> x) const { return f.evaluate(x); }
};

// JSON with n, order, builder, inputs and coefficients in graded-lex order.
// Coefficients are written as hex floats so a round trip is bit exact.
std::string to_json(const SeriesSurface& s);
SeriesSurface series_from_json(const std::string& text);

}  // namespace causal
