#include "causal_locus_cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "causal_locus/catalog.hpp"
#include "causal_locus/cksolver.hpp"
#include "causal_locus/errors.hpp"
#include "causal_locus/fermi.hpp"
#include "causal_locus/locus.hpp"
#include "causal_locus_cli/spec_file.hpp"

#ifndef CAUSAL_LOCUS_VERSION
#define CAUSAL_LOCUS_VERSION "0.0.0"
#endif

namespace causal::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kReportSchema = "causal_locus.report/1";

struct Options {
  std::string spec;
  std::string f;
  std::string metric;
  int n = 0;
  std::string point;
  std::optional<double> step, tol, half_length;
  std::string out;
  std::string csv;
  bool json = false;
  bool timing = false;
  // verify fermi
  std::optional<double> eps, fd_step, t_max;
  bool no_transport = false;
  // verify prop32
  std::vector<std::string> c;
  // build
  std::string lambda, eta0 = "0", eta1 = "0", phi = "0";
  int alpha = 0;
  int order = 0;
  // examples
  std::string id;
};

// ---------------------------------------------------------------- json helpers

json to_j(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_j(const Mat& m) {
  json a = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

json to_j(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json to_j(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// key = value lines for the default (non --json) output. Long arrays are
// summarized; --json carries everything.
void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  out << prefix << " = ";
  if (j.is_array()) {
    const std::string d = j.dump();
    if (d.size() <= 160) {
      out << d;
    } else {
      out << "[" << j.size() << " items]";
    }
  } else if (j.is_string()) {
    out << j.get<std::string>();
  } else {
    out << j.dump();
  }
  out << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw ValidationError("cannot write '" + path + "'");
  o << text;
  if (!o) throw ValidationError("write to '" + path + "' failed");
}

struct CsvRow {
  double t;
  Vec x;
  double B;
  std::string cls;
};

void write_csv(const std::string& path, int dim, const std::vector<CsvRow>& rows) {
  std::ostringstream s;
  s << "t";
  for (int i = 0; i < dim; ++i) s << ",x" << i;
  s << ",B,cls\n";
  for (const CsvRow& r : rows) {
    s << fmt(r.t);
    for (Eigen::Index i = 0; i < r.x.size(); ++i) s << "," << fmt(r.x(i));
    s << "," << fmt(r.B) << "," << r.cls << "\n";
  }
  write_text_file(path, s.str());
}

// ---------------------------------------------------------------- inputs

struct Resolved {
  SurfaceSpec spec;
  bool has_surface = false;
  json inputs = json::object();
};

Resolved resolve(const Options& o, bool surface_required) {
  Resolved r;
  if (!o.spec.empty() && !o.f.empty()) throw ValidationError("give either --spec or --f, not both");
  if (o.spec.rfind("examples:", 0) == 0) {
    r.spec = example_spec(o.spec.substr(9));
    r.has_surface = true;
  } else if (!o.spec.empty()) {
    r.spec = load_surface_spec(o.spec);
    r.has_surface = true;
  } else {
    if (o.n > 0) r.spec.n = o.n;
    if (!o.f.empty()) {
      r.spec.f = o.f;
      r.has_surface = true;
    }
  }
  if (!o.spec.empty() && o.n > 0 && o.n != r.spec.n)
    throw ValidationError("--n " + std::to_string(o.n) + " conflicts with n = " +
                          std::to_string(r.spec.n) + " from the spec file");
  if (!o.metric.empty()) {
    if (o.metric != "minkowski" && o.metric != "perturbed")
      throw ValidationError("--metric must be minkowski or perturbed");
    r.spec.metric_kind = o.metric;
    r.spec.components.clear();
  }
  if (surface_required && !r.has_surface)
    throw ValidationError("a surface is required: pass --spec FILE, --spec examples:ID or --f EXPR");

  if (!o.spec.empty()) r.inputs["spec"] = o.spec;
  if (!r.spec.name.empty()) r.inputs["name"] = r.spec.name;
  r.inputs["n"] = r.spec.n;
  if (!r.spec.example.empty()) r.inputs["example"] = r.spec.example;
  if (!r.spec.f.empty()) r.inputs["f"] = r.spec.f;
  if (!r.spec.series_path.empty()) r.inputs["series"] = r.spec.series_path;
  r.inputs["metric"] = r.spec.metric_kind;
  if (r.spec.metric_kind == "perturbed") r.inputs["metric_eps"] = r.spec.metric_eps;
  return r;
}

double param(Resolved& r, const char* key, const std::optional<double>& flag, double fallback) {
  double v = fallback;
  auto it = r.spec.params.find(key);
  if (flag) {
    v = *flag;
  } else if (it != r.spec.params.end()) {
    v = parse_number(it->second, key);
  }
  r.inputs[key] = v;
  return v;
}

Vec point(Resolved& r, const Options& o, int dim) {
  std::string text = o.point;
  if (text.empty()) {
    auto it = r.spec.params.find("point");
    if (it != r.spec.params.end()) text = it->second.text;
  }
  Vec p = Vec::Zero(dim);
  if (!text.empty()) {
    auto xs = parse_point(text);
    if (static_cast<int>(xs.size()) != dim)
      throw ValidationError("point has " + std::to_string(xs.size()) + " coordinates, expected " +
                            std::to_string(dim));
    for (int i = 0; i < dim; ++i) p(i) = xs[static_cast<std::size_t>(i)];
  }
  r.inputs["point"] = to_j(p);
  return p;
}

std::optional<ClassClaim> catalog_claim(const Resolved& r) {
  if (r.spec.example.empty()) return std::nullopt;
  const CatalogEntry& e = catalog_entry(r.spec.example);
  if (e.phi.empty()) return std::nullopt;
  ClassClaim c;
  c.phi = parse(e.phi, VarTable::domain(e.n));
  c.alpha = e.alpha;
  return c;
}

// ---------------------------------------------------------------- reports

json point_report_json(const GraphSurface& F, const PointReport& pr) {
  json j;
  j["cls"] = causal_type_name(pr.cls.type);
  j["f"] = F.f.value(pr.p);
  j["F"] = to_j(F.lift(pr.p));
  j["B"] = pr.B;
  j["gradB"] = to_j(pr.gradB);
  j["A"] = pr.A;
  j["H"] = to_j(pr.H);
  j["Hhat"] = to_j(pr.Hhat);
  j["Hvec"] = pr.Hvec ? to_j(*pr.Hvec) : json(nullptr);
  j["omegaH"] = to_j(pr.omegaH);
  j["theta"] = pr.theta;
  j["S"] = to_j(pr.S);
  j["Scof"] = to_j(pr.Scof);
  j["nu"] = to_j(pr.nu);
  j["h"] = to_j(pr.h);
  j["tol_B"] = pr.cls.tol_B;
  j["tol_grad"] = pr.cls.tol_grad;
  return j;
}

json line_json(const LineCheckReport& l) {
  json j;
  j["max_residual"] = l.max_residual;
  j["tol"] = l.tol;
  j["all_degenerate"] = l.all_degenerate;
  j["pass"] = l.pass;
  j["samples"] = l.geodesic.size();
  j["residual"] = to_j(l.residual);
  return j;
}

std::vector<CsvRow> line_rows(const GraphSurface& N, const LineCheckReport& l) {
  std::vector<CsvRow> rows;
  for (std::size_t k = 0; k < l.geodesic.size(); ++k) {
    const auto& s = l.geodesic[k];
    const Vec q = s.x.tail(s.x.size() - 1);
    const PointReport pr = point_report(N, q);
    rows.push_back({s.t, s.x, pr.B, causal_type_name(l.cls[k])});
  }
  return rows;
}

struct Outcome {
  json results;
  std::string verdict;
  bool pass = true;
};

Outcome cmd_analyze(const Options& o, Resolved& r) {
  GraphSurface F = make_surface(r.spec);
  const Vec p = point(r, o, F.n());
  Tolerances tol;
  if (o.tol) tol.tol_B = *o.tol;
  r.inputs["tol_B"] = tol.tol_B < 0 ? json("default") : json(tol.tol_B);
  const PointReport pr = point_report(F, p, tol);
  Outcome out;
  out.results = point_report_json(F, pr);
  out.verdict = causal_type_name(pr.cls.type);
  return out;
}

Outcome cmd_lightline(const Options& o, Resolved& r) {
  GraphSurface F = make_surface(r.spec);
  const Vec p = point(r, o, F.n());
  const double hl = param(r, "half_length", o.half_length, 0.5);
  const double step = param(r, "step", o.step, 1e-3);
  const double tol = param(r, "tol", o.tol, 1e-12);
  Normalization N = normalize_at_lightlike(F, p);
  const LineCheckReport l = verify_lightline(N.surface, Vec::Zero(F.n()), hl, step, tol);
  Outcome out;
  out.results["normalization"] = {{"R", to_j(N.R)}, {"origin", to_j(N.origin)}, {"shift", N.shift}};
  out.results["line"] = line_json(l);
  out.verdict = l.pass ? "pass" : "fail";
  out.pass = l.pass;
  if (!o.csv.empty()) write_csv(o.csv, F.n() + 1, line_rows(N.surface, l));
  return out;
}

Outcome cmd_dichotomy(const Options& o, Resolved& r) {
  GraphSurface F = make_surface(r.spec);
  const Vec p = point(r, o, F.n());
  DichotomyOptions opt;
  opt.step = param(r, "step", o.step, opt.step);
  opt.line_half_length = param(r, "half_length", o.half_length, opt.line_half_length);
  opt.line_tol = param(r, "tol", o.tol, opt.line_tol);
  opt.claim = catalog_claim(r);
  if (opt.claim) r.inputs["claim"] = {{"phi", opt.claim->phi.str()}, {"alpha", opt.claim->alpha}};
  const DichotomyReport d = dichotomy_check(F, p, opt);

  Outcome out;
  json& j = out.results;
  j["case"] = dichotomy_name(d.verdict);
  j["cls"] = causal_type_name(d.cls);
  j["grad_norm"] = d.grad_norm;
  j["class_residual"] = to_j(d.class_residual);
  if (d.verdict == Dichotomy::CaseA) {
    j["null_defect"] = d.null_defect;
    j["margin"] = d.margin;
    j["B_minus"] = d.B_minus;
    j["B_plus"] = d.B_plus;
    j["sign_change"] = d.sign_change;
    j["locus_samples"] = d.locus->samples.size();
    j["hit_degenerate"] = d.locus->hit_degenerate;
    j["stop_backward"] = d.locus->stop_backward;
    j["stop_forward"] = d.locus->stop_forward;
  }
  if (d.line) j["line"] = line_json(*d.line);
  out.verdict = dichotomy_name(d.verdict);
  out.pass = d.pass;

  if (!o.csv.empty()) {
    std::vector<CsvRow> rows;
    if (d.locus) {
      for (const LocusSample& s : d.locus->samples)
        rows.push_back({s.s, F.lift(s.p), s.B, causal_type_name(s.cls)});
    } else if (d.line) {
      rows = line_rows(normalize_at_lightlike(F, p).surface, *d.line);
    }
    write_csv(o.csv, F.n() + 1, rows);
  }
  return out;
}

Outcome cmd_prop41(const Options& o, Resolved& r) {
  GraphSurface F = make_surface(r.spec);
  const Vec p = point(r, o, F.n());
  const double hl = param(r, "half_length", o.half_length, 0.2);
  const double step = param(r, "step", o.step, 1e-3);
  const double tol = param(r, "tol", o.tol, 1e-8);
  const std::vector<Vec> gamma = null_direction_curve(F, p, hl, step);
  const ProportionalityReport pr = prop41_check(F, gamma, step, tol);
  Outcome out;
  out.results["defect"] = pr.defect;
  out.results["max_B"] = pr.max_B;
  out.results["max_gradB"] = pr.max_gradB;
  out.results["samples"] = pr.samples;
  out.pass = pr.defect < tol;
  out.verdict = out.pass ? "pass" : "fail";
  if (!o.csv.empty()) {
    std::vector<CsvRow> rows;
    for (std::size_t k = 0; k < gamma.size(); ++k) {
      const PointReport q = point_report(F, gamma[k]);
      rows.push_back({-hl + static_cast<double>(k) * step, F.lift(gamma[k]), q.B,
                      causal_type_name(q.cls.type)});
    }
    write_csv(o.csv, F.n() + 1, rows);
  }
  return out;
}

Outcome cmd_prop32(const Options& o, Resolved& r) {
  const int n = r.spec.n;
  if (o.c.empty()) throw ValidationError("prop32 needs the coefficients c_jk via repeated --c");
  std::vector<Expr> c;
  for (const auto& s : o.c) c.push_back(parse(s, VarTable::domain(n)));
  r.inputs["c"] = o.c;
  const double hl = param(r, "half_length", o.half_length, 0.4);
  const double tol = param(r, "tol", o.tol, 1e-10);
  std::vector<double> grid;
  const int N = 41;
  for (int k = 0; k < N; ++k) grid.push_back(-hl + 2.0 * hl * k / (N - 1));
  const AxisResidualReport a = prop32_reference_check(make_metric(r.spec), c, grid);
  Outcome out;
  out.results = {{"B", a.B}, {"dB", a.dB}, {"A", a.A}, {"dA", a.dA}, {"points", a.points},
                 {"jets", a.jets}};
  out.pass = std::max({a.B, a.dB, a.A, a.dA}) < tol;
  out.verdict = out.pass ? "pass" : "fail";
  return out;
}

Outcome cmd_theorem_d(const Options& o, Resolved& r) {
  GraphSurface F = make_surface(r.spec);
  const Vec p = point(r, o, F.n());
  TheoremDOptions opt;
  opt.line_half_length = param(r, "half_length", o.half_length, opt.line_half_length);
  opt.line_step = param(r, "step", o.step, opt.line_step);
  const TheoremDReport t = theorem_d_check(F, p, opt);
  Outcome out;
  json& j = out.results;
  json shells = json::array();
  for (const ShellEstimate& s : t.shells)
    shells.push_back({{"radius", s.radius}, {"inf", s.inf}, {"sup", s.sup}, {"points", s.points}});
  j["shells"] = shells;
  j["applicable"] = t.applicable;
  j["sup_diverges"] = t.sup_diverges;
  j["inf_degenerates"] = t.inf_degenerates;
  j["bounded"] = t.bounded;
  j["sup_slope"] = t.sup_slope;
  j["inf_slope"] = t.inf_slope;
  j["slope_threshold"] = t.slope_threshold;
  j["B_order"] = t.B_order;
  j["B_order_rounded"] = t.B_order_rounded;
  j["even_m"] = t.even_m;
  if (t.line) j["line"] = line_json(*t.line);
  j["note"] = t.note;
  if (!t.applicable) {
    out.verdict = "not_applicable";
  } else if (t.bounded) {
    out.verdict = "bounded";
  } else if (t.sup_diverges && t.inf_degenerates) {
    out.verdict = "sup_diverges+inf_degenerates";
  } else {
    out.verdict = t.sup_diverges ? "sup_diverges" : "inf_degenerates";
  }
  // Bounded |H| at a degenerate point must come with the light-like line.
  out.pass = !(t.applicable && t.bounded && t.line && !t.line->pass);
  return out;
}

Outcome cmd_fermi(const Options& o, Resolved& r) {
  const MetricChart g = make_metric(r.spec);
  const int d = g.dim();
  const Vec p = point(r, o, d);
  const double eps = param(r, "eps", o.eps, 0.5);
  const double fd = param(r, "fd_step", o.fd_step, 0.01);
  const double t_max = param(r, "t_max", o.t_max, 1.0);
  const double step = param(r, "step", o.step, 1e-3);
  const double tol = param(r, "tol", o.tol, 1e-6);
  r.inputs["transport"] = !o.no_transport;
  if (!(t_max > 0.0)) throw ValidationError("t_max must be positive");

  // v = e0 + s e_n, null at p.
  const Mat G = g.g(p);
  const double a = G(d - 1, d - 1), b = G(0, d - 1), c = G(0, 0);
  const double disc = b * b - a * c;
  if (!(disc > 0.0) || a == 0.0) throw NumericError("no null vector of the form e0 + s e_n at p");
  Vec v = Vec::Zero(d);
  v(0) = 1.0;
  v(d - 1) = (-b + std::sqrt(disc)) / a;
  r.inputs["velocity"] = to_j(v);

  const double margin = 0.05 * t_max;
  const FermiChart fc = build_fermi_chart(g, p, v, -margin, t_max + margin, eps, step, !o.no_transport);
  std::vector<double> ts;
  for (int k = 0; k <= 20; ++k) ts.push_back(t_max * k / 20.0);
  const FermiReport f = verify_fermi(fc, ts, fd);
  Outcome out;
  json& j = out.results;
  j["a1"] = f.a1;
  j["a2"] = f.a2;
  j["a3"] = f.a3;
  j["frame"] = f.frame;
  j["velocity"] = f.velocity;
  j["injective"] = f.injective;
  j["det_min"] = f.det_min;
  j["det_max"] = f.det_max;
  j["fd_step"] = f.fd_step;
  j["t"] = to_j(f.t);
  j["a2_t"] = to_j(f.a2_t);
  j["a3_t"] = to_j(f.a3_t);
  j["a2_tol"] = tol;
  j["a3_tol"] = 10.0 * tol;
  out.pass = f.a2 < tol && f.a3 < 10.0 * tol && f.injective;
  out.verdict = out.pass ? "pass" : "fail";
  if (!o.csv.empty()) {
    std::vector<CsvRow> rows;
    for (const auto& s : fc.sigma()) rows.push_back({s.t, s.x, 0.0, "geodesic"});
    write_csv(o.csv, d, rows);
  }
  return out;
}

Jet data_jet(const std::string& text, int n, int order) {
  const Expr e = parse(text, VarTable::domain(n));
  std::vector<Jet> x;
  for (int i = 0; i < n; ++i) x.push_back(Jet::variable(i, 0.0, n, order));
  return e.eval(x);
}

Outcome cmd_build(const Options& o, const std::string& kind, json& inputs) {
  const int n = o.n > 0 ? o.n : 2;
  const int order = o.order > 0 ? o.order : (kind == "lightlike" ? 10 : 12);
  const double tol = o.tol.value_or(1e-11);
  inputs["kind"] = kind;
  inputs["n"] = n;
  inputs["order"] = order;
  inputs["tol"] = tol;
  SeriesSurface s;
  SeriesResidual res;
  Outcome out;
  if (kind == "lightlike") {
    if (o.lambda.empty()) throw ValidationError("build lightlike needs --lambda");
    inputs["lambda"] = o.lambda;
    s = build_lightlike(n, std::string_view(o.lambda), order);
    res = series_residual(s, std::nullopt);
    out.results["eta0_recovery"] = (initial_value(s) - data_jet(o.lambda, n, order)).max_abs();
  } else {
    inputs["eta0"] = o.eta0;
    inputs["eta1"] = o.eta1;
    inputs["phi"] = o.phi;
    inputs["alpha"] = o.alpha;
    s = build_admissible(n, std::string_view(o.eta0), std::string_view(o.eta1),
                         std::string_view(o.phi), o.alpha, order);
    res = series_residual(s, parse(o.phi, VarTable::domain(n)), o.alpha);
    out.results["eta0_recovery"] = (initial_value(s) - data_jet(o.eta0, n, order)).max_abs();
    out.results["eta1_recovery"] = (initial_slope(s) - data_jet(o.eta1, n, order - 1)).max_abs();
  }
  const double scale = s.f.max_abs();
  out.results["residual_target"] = res.target;
  out.results["residual_order"] = res.valid_order;
  out.results["residual"] = res.max_abs;
  out.results["coefficient_scale"] = scale;
  out.results["axis_defect"] = axis_defect(s);
  out.results["coefficients"] = s.f.size();
  if (!o.out.empty()) {
    write_text_file(o.out, to_json(s));
    out.results["written"] = o.out;
  }
  // Relative to the coefficient size: high-order coefficients grow quickly
  // and the residual then sits at rounding level of the largest one.
  out.pass = res.max_abs <= tol * (1.0 + scale);
  out.verdict = out.pass ? "pass" : "fail";
  return out;
}

Outcome cmd_examples(const Options& o) {
  Outcome out;
  json list = json::array();
  std::vector<const CatalogEntry*> entries;
  if (!o.id.empty()) {
    entries.push_back(&catalog_entry(o.id));
  } else {
    for (const auto& e : catalog()) entries.push_back(&e);
  }
  for (const CatalogEntry* e : entries) {
    const SelfCheck sc = self_check(*e);
    json j;
    j["id"] = e->id;
    j["title"] = e->title;
    j["n"] = e->n;
    j["f"] = e->f;
    j["ambient"] = e->ambient;
    j["phi"] = e->phi.empty() ? json(nullptr) : json(e->phi);
    j["alpha"] = e->alpha;
    j["self_check"] = {{"applicable", sc.applicable},
                       {"max_rel_B", sc.max_rel_B},
                       {"max_rel_A", sc.max_rel_A},
                       {"pass", sc.pass}};
    out.pass = out.pass && sc.pass;
    list.push_back(j);
  }
  out.results["examples"] = list;
  out.verdict = out.pass ? "pass" : "fail";
  return out;
}

json versions() {
  return {{"causal_locus", CAUSAL_LOCUS_VERSION},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                        "." + std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"cli11", CLI11_VERSION}};
}

void emit_error(std::ostream& err, const char* type, const std::string& message,
                std::optional<std::size_t> offset = std::nullopt) {
  json e;
  e["type"] = type;
  e["message"] = message;
  if (offset) e["offset"] = *offset;
  err << json{{"error", e}}.dump() << "\n";
}

void add_common(CLI::App* a, Options& o, bool surface) {
  a->add_option("--spec", o.spec, "Surface spec file, or examples:ID");
  if (surface) {
    a->add_option("--f", o.f, "Height function expression over x1..xn");
    a->add_option("--point", o.point, "Base point, e.g. \"0.1,0\"");
  }
  a->add_option("--n", o.n, "Domain dimension when --f is used")->check(CLI::Range(1, kMaxDim - 1));
  a->add_option("--metric", o.metric, "Ambient: minkowski or perturbed");
  a->add_option("--step", o.step, "Integration step");
  a->add_option("--tol", o.tol, "Tolerance of the check");
  a->add_option("--out", o.out, "Write the report to this file instead of stdout");
  a->add_flag("--json", o.json, "Emit the JSON report");
  a->add_flag("--timing", o.timing, "Include wall-clock time in the report");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Causal character and mean curvature of graph hypersurfaces in Lorentzian space",
               "causal_locus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CAUSAL_LOCUS_VERSION);

  auto* analyze = app.add_subcommand("analyze", "Fundamental data and causal type at one point");
  add_common(analyze, o, true);

  auto* verify = app.add_subcommand("verify", "Run a locus or Fermi-coordinate check");
  verify->require_subcommand(1);
  std::map<std::string, CLI::App*> checks;
  const std::pair<const char*, const char*> check_list[] = {
      {"lightline", "Light-like geodesic through a degenerate light-like point"},
      {"dichotomy", "Classify a light-like point as case a (null locus) or b (line)"},
      {"prop41", "Null direction curve is a reparametrized geodesic"},
      {"prop32", "Axis residuals of the reference quadratic surfaces"},
      {"theoremD", "Mean curvature bounds on shrinking shells"},
      {"fermi", "Fermi coordinates along a null geodesic"}};
  for (const auto& [name, help] : check_list) {
    auto* c = verify->add_subcommand(name, help);
    add_common(c, o, std::string(name) != "prop32");
    c->add_option("--half-length", o.half_length, "Half length of the curve or axis");
    if (std::string(name) != "prop32" && std::string(name) != "fermi")
      c->add_option("--csv", o.csv, "Write curve samples (t, x0..xn, B, cls)");
    checks[name] = c;
  }
  checks["fermi"]->add_option("--csv", o.csv, "Write the geodesic samples");
  checks["fermi"]->add_option("--eps", o.eps, "Half-width of the Fermi box");
  checks["fermi"]->add_option("--fd-step", o.fd_step, "Finite-difference step");
  checks["fermi"]->add_option("--t-max", o.t_max, "Geodesic parameter range [0, t_max]");
  checks["fermi"]->add_flag("--no-transport", o.no_transport, "Keep frame components constant");
  checks["prop32"]->add_option("--c", o.c, "Coefficient c_jk, repeated in order (1,1),(1,2),...");

  auto* build = app.add_subcommand("build", "Build a series surface from data");
  build->require_subcommand(1);
  auto* lightlike = build->add_subcommand("lightlike", "Light-like graph from lambda");
  auto* admissible = build->add_subcommand("admissible", "A = phi B^(1+alpha) from eta0, eta1");
  for (auto* b : {lightlike, admissible}) {
    b->add_option("--n", o.n, "Domain dimension")->check(CLI::Range(2, kMaxDim - 1));
    b->add_option("--order", o.order, "Series order")->check(CLI::Range(2, 40));
    b->add_option("--tol", o.tol, "Residual tolerance relative to the coefficient size");
    b->add_option("--out", o.out, "Series file to write");
    b->add_flag("--json", o.json, "Emit the JSON report");
    b->add_flag("--timing", o.timing, "Include wall-clock time in the report");
  }
  lightlike->add_option("--lambda", o.lambda, "f(x', 0)")->required();
  admissible->add_option("--eta0", o.eta0, "f(x', 0)");
  admissible->add_option("--eta1", o.eta1, "f_{x_n}(x', 0) - 1");
  admissible->add_option("--phi", o.phi, "phi(x1..xn)");
  admissible->add_option("--alpha", o.alpha, "Non-negative integer exponent");

  auto* examples = app.add_subcommand("examples", "List the builtin examples with self-checks");
  examples->add_option("id", o.id, "Show one entry");
  examples->add_flag("--json", o.json, "Emit the JSON report");
  examples->add_flag("--timing", o.timing, "Include wall-clock time in the report");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << CAUSAL_LOCUS_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "usage", e.what());
    return kParse;
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::string command;
  try {
    Outcome res;
    json inputs = json::object();
    if (analyze->parsed()) {
      command = "analyze";
      Resolved r = resolve(o, true);
      res = cmd_analyze(o, r);
      inputs = r.inputs;
    } else if (verify->parsed()) {
      for (const auto& [name, c] : checks) {
        if (!c->parsed()) continue;
        command = "verify " + name;
        Resolved r = resolve(o, name != "prop32" && name != "fermi");
        if (name == "lightline") res = cmd_lightline(o, r);
        if (name == "dichotomy") res = cmd_dichotomy(o, r);
        if (name == "prop41") res = cmd_prop41(o, r);
        if (name == "prop32") res = cmd_prop32(o, r);
        if (name == "theoremD") res = cmd_theorem_d(o, r);
        if (name == "fermi") res = cmd_fermi(o, r);
        inputs = r.inputs;
      }
    } else if (build->parsed()) {
      const std::string kind = lightlike->parsed() ? "lightlike" : "admissible";
      command = "build " + kind;
      res = cmd_build(o, kind, inputs);
    } else {
      command = "examples";
      res = cmd_examples(o);
      if (!o.id.empty()) inputs["id"] = o.id;
    }

    json rep;
    rep["schema"] = kReportSchema;
    rep["command"] = command;
    rep["inputs"] = inputs;
    rep["verdict"] = res.verdict;
    rep["pass"] = res.pass;
    rep["results"] = res.results;
    rep["versions"] = versions();
    if (o.timing) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      rep["wall_seconds"] = dt.count();
    }

    std::ostringstream text;
    if (o.json) {
      text << rep.dump(2) << "\n";
    } else {
      flatten(rep, "", text);
    }
    // build --out names the series file; the report still goes to stdout.
    if (!o.out.empty() && !build->parsed()) {
      write_text_file(o.out, text.str());
    } else {
      out << text.str();
    }
    if (!res.pass) {
      emit_error(err, "check_failed", command + ": verdict " + res.verdict);
      return kValidation;
    }
    return kOk;
  } catch (const ParseError& e) {
    emit_error(err, "parse", e.detail(), e.offset());
    return kParse;
  } catch (const ValidationError& e) {
    emit_error(err, "validation", e.what());
    return kValidation;
  } catch (const DomainError& e) {
    emit_error(err, "domain", e.what());
    return kNumeric;
  } catch (const NumericError& e) {
    emit_error(err, "numeric", e.what());
    return kNumeric;
  } catch (const Error& e) {
    emit_error(err, "error", e.what());
    return kValidation;
  }
}

}  // namespace causal::cli
