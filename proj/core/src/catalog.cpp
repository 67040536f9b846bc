#include "causal_locus/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "causal_locus/errors.hpp"

namespace causal {

namespace {

const char* kF2h1 =
    "(-14*x^5*y^7 - 19*x^4*y^5 - 3*x^4*y^4 - 8*x^3*y^3 + 3*x^3*y^2 + 9*x^3*y - 2*x^2*y"
    " - 2*x^2 + 4*x*y^5 + 6*y^3 + 6*y^2)";
const char* kF2h2 =
    "(-9*x^4*y^4 - 6*x^3*y^2 - 16*x^2*y^6 - x^2 - 24*x*y^4 - 24*x*y^3 - 3*y^2 - 18*y - 9)";

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  c.push_back({"F1", "degenerate light-like point, bounded non-analytic H", 2,
               "y + x^2 + x^3 + y*x^4", "minkowski",
               "-x^2*(4 + 12*x + (11 + 16*y)*x^2 + 24*y*x^3 + 16*y^2*x^4 + x^6)",
               "2*x^4*(6 + 6*x + 4*y*x^2 + 7*x^4 + 9*x^5 + 10*y*x^6)",
               "-2*x^2*(6 + 6*x + 4*y*x^2 + 7*x^4 + 9*x^5 + 10*y*x^6)/"
               "(4 + 12*x + (11 + 16*y)*x^2 + 24*y*x^3 + 16*y^2*x^4 + x^6)",
               0});
  c.push_back({"F2", "degenerate light-like point, unbounded H", 2,
               "y - (1 + y)*x^3 - y^3*x^4", "minkowski",
               std::string("x^3*(2 + ") + kF2h2 + "*x)",
               std::string("6*x^4*(1 + ") + kF2h1 + "*x)",
               std::string("6*x*(1 + ") + kF2h1 + "*x)/(2 + " + kF2h2 + "*x)", 0});
  c.push_back({"F3", "degenerate light-like point, analytic H", 2, "y + x^3 + x^4 + y*x^5",
               "minkowski",
               "-x^4*(9 + 26*x + 2*(8 + 15*y)*x^2 + 40*y*x^3 + 25*y^2*x^4 + x^6)",
               "2*x^6*(9 + 8*x + 5*y*x^2 + 12*x^5 + 14*x^6 + 15*y*x^7)",
               "-2*x^2*(9 + 8*x + 5*y*x^2 + 12*x^5 + 14*x^6 + 15*y*x^7)/"
               "(9 + 26*x + 2*(8 + 15*y)*x^2 + 40*y*x^3 + 25*y^2*x^4 + x^6)",
               0});
  c.push_back({"kobayashi", "zero mean curvature, changes causal type", 2, "(x + 1)*tanh(y)",
               "minkowski", "", "0", "0", 0});
  c.push_back({"lightcone", "light cone through the origin", 2, "sqrt(x1^2 + (x2 + 1)^2) - 1",
               "minkowski", "0", "0", "0", 0});
  c.push_back({"lightplane", "light-like plane", 2, "x2", "minkowski", "0", "0", "0", 0});
  c.push_back({"perturbed", "light-like plane over a quadratically perturbed metric", 2, "x2",
               "perturbed", "", "", "", 0});
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& catalog_entry(std::string_view id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  std::string known;
  for (const auto& e : catalog()) known += (known.empty() ? "" : ", ") + e.id;
  throw ValidationError("unknown example '" + std::string(id) + "' (known: " + known + ")");
}

MetricChart perturbed_metric(double eps) {
  const std::string e = std::to_string(eps);
  return MetricChart::from_strings(2, {{"g00", "-(1 + " + e + "*x1^2)"},
                                       {"g01", e + "*x0*x2"},
                                       {"g11", "1 + " + e + "*x2^2"},
                                       {"g12", e + "*x1^2"},
                                       {"g22", "1 + " + e + "*x0*x1"}});
}

MetricChart g12_perturbed_metric(double eps) {
  return MetricChart::from_strings(2, {{"g12", std::to_string(eps) + "*x1^2"}});
}

GraphSurface catalog_surface(const CatalogEntry& e) {
  MetricChart amb = e.ambient == "perturbed" ? perturbed_metric() : MetricChart::minkowski(e.n);
  return GraphSurface(HeightFunction::parse(e.n, e.f), amb);
}

SelfCheck self_check(const CatalogEntry& e, std::uint64_t seed, double tol) {
  SelfCheck r;
  r.id = e.id;
  if (e.B_closed.empty() && e.A_closed.empty()) return r;
  r.applicable = true;
  GraphSurface F = catalog_surface(e);
  VarTable vars = VarTable::domain(e.n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto rel = [](double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
  };
  for (int k = 0; k < 3; ++k) {
    Vec p(e.n);
    for (int i = 0; i < e.n; ++i) p(i) = u(rng);
    PointReport rep = point_report(F, p);
    std::span<const double> xs(p.data(), static_cast<std::size_t>(e.n));
    if (!e.B_closed.empty())
      r.max_rel_B = std::max(r.max_rel_B, rel(rep.B, parse(e.B_closed, vars).eval(xs)));
    if (!e.A_closed.empty())
      r.max_rel_A = std::max(r.max_rel_A, rel(rep.A, parse(e.A_closed, vars).eval(xs)));
  }
  r.pass = r.max_rel_B <= tol && r.max_rel_A <= tol;
  return r;
}

}  // namespace causal
