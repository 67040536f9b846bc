#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causal_locus/hypersurface.hpp"
#include "causal_locus/metric.hpp"

namespace causal::cli {

struct SpecValue {
  std::string text;
  bool quoted = false;
  int line = 0;
};

// Flat key = value pairs grouped by [table]; top-level keys live under "".
using SpecTables = std::map<std::string, std::map<std::string, SpecValue>>;

// Syntax only: comments start with '#', strings are double-quoted, other
// values are bare tokens. Throws ParseError with the byte offset of the
// offending character.
SpecTables parse_spec_text(std::string_view text);

struct SurfaceSpec {
  std::string name;
  int n = 2;
  // Exactly one source is set.
  std::string f;
  std::string series_path;
  std::string example;
  // "minkowski", "perturbed" or "components".
  std::string metric_kind = "minkowski";
  double metric_eps = 0.1;
  std::vector<std::pair<std::string, std::string>> components;
  std::map<std::string, SpecValue> params;
};

// Validates tables and keys; unknown keys throw ValidationError.
SurfaceSpec surface_spec_from_tables(const SpecTables& t);
SurfaceSpec load_surface_spec(const std::string& path);
// "examples:ID" refers to the builtin catalog.
SurfaceSpec example_spec(std::string_view id);

MetricChart make_metric(const SurfaceSpec& s);
GraphSurface make_surface(const SurfaceSpec& s);

// "0.1, -0.2" or "0.1 -0.2".
std::vector<double> parse_point(std::string_view text);
double parse_number(const SpecValue& v, const std::string& key);

}  // namespace causal::cli
