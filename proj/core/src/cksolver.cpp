#include "causal_locus/cksolver.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <json.hpp>

#include "causal_locus/errors.hpp"
#include "causal_locus/hypersurface.hpp"

namespace causal {

namespace {

void check_shape(int n, int order) {
  if (n < 1 || n + 1 > kMaxDim) throw ValidationError("unsupported dimension n=" + std::to_string(n));
  if (order < 2) throw ValidationError("series order must be at least 2");
  if (n < 2) throw ValidationError("series builders need n >= 2");
}

std::vector<Jet> coordinate_jets(int n, int order) {
  std::vector<Jet> x;
  for (int i = 0; i < n; ++i) x.push_back(Jet::variable(i, 0.0, n, order));
  return x;
}

// Data expressions in x1..x_{n-1}, evaluated as jets in all n variables.
Jet eval_data(const Expr& e, int n, int order, const char* what) {
  if (e.slots_used() > n - 1)
    throw ValidationError(std::string(what) + " may only use x1..x" + std::to_string(n - 1));
  auto x = coordinate_jets(n, order);
  return e.eval(std::span<const Jet>(x.data(), static_cast<std::size_t>(n - 1)));
}

double gradient_norm(const Jet& a, int vars) {
  double s = 0.0;
  for (int i = 0; i < vars; ++i) s += a.gradient(i) * a.gradient(i);
  return std::sqrt(s);
}

Jet cut(const Jet& a, int order) { return a.order() == order ? a : a.extended(order); }

VarTable data_vars(int n) {
  if (n == 2) {
    VarTable v;
    v.add("x1", 0);
    v.add("x", 0);
    return v;
  }
  return VarTable::domain(n - 1);
}

}  // namespace

Jet integrate(const Jet& a, int var) {
  if (var < 0 || var >= a.nvars()) throw ValidationError("integration variable out of range");
  Jet r(a.nvars(), a.order() + 1);
  const JetLayout& L = r.layout();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] == 0.0) continue;
    const auto t = L.shift_index(k, var);
    r[static_cast<std::size_t>(t)] = a[k] / (L.exponents(k)[var] + 1);
  }
  return r;
}

SeriesSurface build_lightlike(int n, const Expr& lambda, int order) {
  check_shape(n, order);
  const int xn = n - 1;
  Jet lam = eval_data(lambda, n, order, "lambda");
  const double g0 = gradient_norm(lam, n - 1);
  if (g0 >= 1.0)
    throw DomainError("|grad lambda(0)| = " + std::to_string(g0) +
                      " >= 1: sqrt(1 - |grad f|^2) is undefined at the base point");
  if (lam.max_abs(1) > 0.0)
    throw ValidationError("lambda must have vanishing constant and linear terms at the origin");

  // Picard iteration f = lambda + int_0^{x_n} sqrt(1 - sum_{i<n} f_i^2); each
  // pass fixes one more power of x_n, so order + 1 passes are exact.
  Jet f = lam;
  for (int pass = 0; pass <= order; ++pass) {
    Jet rhs = Jet::constant(1.0, n, order - 1);
    for (int i = 0; i < n - 1; ++i) {
      Jet fi = partial(f, i);
      rhs -= fi * fi;
    }
    f = lam + integrate(sqrt(rhs), xn);
  }

  SeriesSurface s;
  s.n = n;
  s.order = order;
  s.f = std::move(f);
  s.builder = "lightlike";
  s.inputs["lambda"] = lambda.str();
  return s;
}

SeriesSurface build_lightlike(int n, std::string_view lambda, int order) {
  return build_lightlike(n, parse(lambda, data_vars(n)), order);
}

SeriesSurface build_admissible(int n, const Expr& eta0, const Expr& eta1, const Expr& phi,
                               int alpha, int order) {
  check_shape(n, order);
  if (alpha < 0) throw ValidationError("alpha must be a non-negative integer");
  if (phi.slots_used() > n) throw ValidationError("phi may only use x1..x" + std::to_string(n));
  const int xn = n - 1;
  Jet e0 = eval_data(eta0, n, order, "eta0");
  Jet e1 = eval_data(eta1, n, order - 1, "eta1");
  if (e0.max_abs(1) > 0.0)
    throw ValidationError("eta0 must have vanishing constant and linear terms at the origin");
  if (e1.value() != 0.0) throw ValidationError("eta1 must vanish at the origin");
  auto xs = coordinate_jets(n, order - 2);
  Jet ph = phi.eval(xs);

  // First-order system in (f, g = f_{x_n}):
  //   (1 - Q) g_{x_n} = phi B^{1+alpha} - sum_{k<n} (1 - Q + f_k^2 - g^2) f_kk
  //                     - 2 sum_{j<k<n} f_j f_k f_jk - 2 g sum_{k<n} f_k g_k,
  // with Q = sum_{k<n} f_k^2 and B = 1 - Q - g^2.
  Jet f = e0;
  Jet g = 1.0 + e1;
  const int m = order - 2;
  for (int pass = 0; pass <= order; ++pass) {
    std::vector<Jet> fk, gk;
    for (int k = 0; k < n - 1; ++k) {
      fk.push_back(cut(partial(f, k), m));
      gk.push_back(partial(g, k));
    }
    Jet g2 = cut(g, m);
    Jet Q(n, m);
    for (const Jet& a : fk) Q += a * a;
    Jet B = 1.0 - Q - g2 * g2;
    Jet rhs = ph * ipow(B, 1 + alpha);
    Jet cross(n, m);
    for (int k = 0; k < n - 1; ++k) {
      Jet fkk = partial(partial(f, k), k);
      rhs -= (1.0 - Q + fk[k] * fk[k] - g2 * g2) * fkk;
      for (int j = 0; j < k; ++j) rhs -= 2.0 * fk[j] * fk[k] * partial(partial(f, j), k);
      cross += fk[k] * gk[k];
    }
    rhs -= 2.0 * g2 * cross;
    Jet denom = 1.0 - Q;
    if (std::abs(denom.value()) < 1e-14) throw NumericError("1 - Q_f vanishes at the base point");
    Jet gn = rhs / denom;
    g = 1.0 + e1 + integrate(gn, xn);
    f = e0 + integrate(g, xn);
  }

  SeriesSurface s;
  s.n = n;
  s.order = order;
  s.f = std::move(f);
  s.builder = "admissible";
  s.inputs["eta0"] = eta0.str();
  s.inputs["eta1"] = eta1.str();
  s.inputs["phi"] = phi.str();
  s.inputs["alpha"] = std::to_string(alpha);
  return s;
}

SeriesSurface build_admissible(int n, std::string_view eta0, std::string_view eta1,
                               std::string_view phi, int alpha, int order) {
  return build_admissible(n, parse(eta0, data_vars(n)), parse(eta1, data_vars(n)),
                          parse(phi, VarTable::domain(n)), alpha, order);
}

SeriesResidual series_residual(const SeriesSurface& s, const std::optional<Expr>& phi, int alpha) {
  if (!phi) {
    SurfaceJets J = minkowski_surface_jets(s.f);
    SeriesResidual r;
    r.target = "B";
    r.valid_order = J.B.order();
    r.max_abs = J.B.max_abs();
    r.jet = J.B;
    return r;
  }
  auto xs = coordinate_jets(s.n, s.order - 2);
  return series_residual(s, phi->eval(xs), alpha);
}

SeriesResidual series_residual(const SeriesSurface& s, const Jet& phi, int alpha) {
  if (alpha < 0) throw ValidationError("alpha must be a non-negative integer");
  SurfaceJets J = minkowski_surface_jets(s.f);
  const int m = J.A.order();
  if (phi.nvars() != s.n || phi.order() < m)
    throw ValidationError("phi jet does not match the series shape");
  Jet res = J.A - cut(phi, m) * ipow(cut(J.B, m), 1 + alpha);
  SeriesResidual r;
  r.target = "A - phi B^(1+alpha)";
  r.valid_order = m;
  r.max_abs = res.max_abs();
  r.jet = std::move(res);
  return r;
}

Jet initial_value(const SeriesSurface& s) {
  Jet r(s.n, s.order);
  for (std::size_t k = 0; k < r.size(); ++k)
    if (r.layout().exponents(k)[s.n - 1] == 0) r[k] = s.f[k];
  return r;
}

Jet initial_slope(const SeriesSurface& s) {
  Jet d = partial(s.f, s.n - 1);
  Jet r(s.n, s.order - 1);
  for (std::size_t k = 0; k < r.size(); ++k)
    if (r.layout().exponents(k)[s.n - 1] == 0) r[k] = d[k];
  r[0] -= 1.0;
  return r;
}

double axis_defect(const SeriesSurface& s) {
  std::vector<int> a(static_cast<std::size_t>(s.n), 0);
  double m = 0.0;
  for (int k = 0; k <= s.order; ++k) {
    a.back() = k;
    m = std::max(m, std::abs(s.f.coeff(a) - (k == 1 ? 1.0 : 0.0)));
  }
  return m;
}

// ---------------------------------------------------------------- JSON

namespace {

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double unhex(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ParseError("malformed coefficient '" + s + "'", 0);
  return v;
}

}  // namespace

std::string to_json(const SeriesSurface& s) {
  nlohmann::ordered_json j;
  j["schema"] = "causal_locus.series/1";
  j["n"] = s.n;
  j["order"] = s.order;
  j["builder"] = s.builder;
  j["inputs"] = s.inputs;
  auto& c = j["coefficients"] = nlohmann::ordered_json::array();
  for (double v : s.f.coeffs()) c.push_back(hex(v));
  return j.dump(2) + "\n";
}

SeriesSurface series_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("series file is not valid JSON: ") + e.what(), e.byte);
  }
  try {
    if (j.value("schema", "") != "causal_locus.series/1")
      throw ValidationError("series file has an unknown schema");
    SeriesSurface s;
    s.n = j.at("n").get<int>();
    s.order = j.at("order").get<int>();
    if (s.n < 1 || s.n + 1 > kMaxDim || s.order < 0)
      throw ValidationError("series file has an invalid shape");
    s.builder = j.value("builder", "");
    if (j.contains("inputs")) s.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
    s.f = Jet(s.n, s.order);
    const auto& c = j.at("coefficients");
    if (!c.is_array() || c.size() != s.f.size())
      throw ValidationError("series file needs " + std::to_string(s.f.size()) +
                            " coefficients for n=" + std::to_string(s.n) +
                            ", order=" + std::to_string(s.order));
    for (std::size_t k = 0; k < c.size(); ++k) s.f[k] = unhex(c[k].get<std::string>());
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed series file: ") + e.what());
  }
}

}  // namespace causal
