#include "causal_locus/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "causal_locus/errors.hpp"

namespace causal {

namespace {

using JetMat = std::vector<std::vector<Jet>>;

Jet cut(const Jet& a, int order) { return a.order() == order ? a : a.truncated(order); }

// Evaluates many polynomials (jets in m variables) at the same argument jets,
// sharing the monomial table.
class Substituter {
 public:
  Substituter(std::shared_ptr<const JetLayout> layout, std::span<const Jet> args)
      : layout_(std::move(layout)) {
    const JetLayout& L = *layout_;
    const int nv = args[0].nvars(), ord = args[0].order();
    mono_.reserve(L.size());
    mono_.push_back(Jet::constant(1.0, nv, ord));
    for (std::size_t k = 1; k < L.size(); ++k)
      mono_.push_back(mono_[L.parent(k)] * args[static_cast<std::size_t>(L.parent_var(k))]);
  }

  Jet apply(const Jet& p) const {
    Jet r = Jet::constant(p[0], mono_[0].nvars(), mono_[0].order());
    if (p.layout_ptr() != layout_) throw ValidationError("substitution layout mismatch");
    for (std::size_t k = 1; k < layout_->size(); ++k)
      if (p[k] != 0.0) r += p[k] * mono_[k];
    return r;
  }

 private:
  std::shared_ptr<const JetLayout> layout_;
  std::vector<Jet> mono_;
};

// Determinant of the submatrix M[rows][cols] by Laplace expansion along the
// first remaining row, memoized over column subsets.
Jet det_sub(const JetMat& M, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int m = static_cast<int>(rows.size());
  const Jet& proto = M[0][0];
  if (m == 0) return Jet::constant(1.0, proto.nvars(), proto.order());
  std::map<unsigned, Jet> memo;
  // det over rows [r, m) and the column positions in mask (|mask| = m - r).
  auto rec = [&](auto&& self, int r, unsigned mask) -> Jet {
    if (r == m) return Jet::constant(1.0, proto.nvars(), proto.order());
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Jet acc(proto.nvars(), proto.order());
    int position = 0;
    for (int c = 0; c < m; ++c) {
      if (!(mask & (1u << c))) continue;
      const Jet& entry = M[static_cast<std::size_t>(rows[r])][static_cast<std::size_t>(cols[c])];
      if (entry.max_abs() != 0.0) {
        Jet term = entry * self(self, r + 1, mask & ~(1u << c));
        if (position % 2 == 0)
          acc += term;
        else
          acc -= term;
      }
      ++position;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(rec, 0, (1u << m) - 1u);
}

std::vector<int> range_without(int count, int skip) {
  std::vector<int> v;
  for (int i = 0; i < count; ++i)
    if (i != skip) v.push_back(i);
  return v;
}

Jet det_full(const JetMat& M) {
  const int m = static_cast<int>(M.size());
  return det_sub(M, range_without(m, -1), range_without(m, -1));
}

// Adjugate: adj(S)_ij = (-1)^{i+j} det(S without row j and column i), so
// that adj(S) S = det(S) I.
JetMat adjugate(const JetMat& S) {
  const int m = static_cast<int>(S.size());
  JetMat out(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Jet minor = det_sub(S, range_without(m, j), range_without(m, i));
      out[i].push_back((i + j) % 2 == 0 ? minor : -minor);
    }
  return out;
}

Mat values_of(const JetMat& M) {
  Mat out(static_cast<Eigen::Index>(M.size()), static_cast<Eigen::Index>(M[0].size()));
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = M[i][j].value();
  return out;
}

Vec values_of(const std::vector<Jet>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].value();
  return out;
}

SurfaceJets minkowski_from_f(const Jet& fj) {
  const int n = fj.nvars();
  const int K = fj.order();
  if (K < 2) throw ValidationError("surface jets need f to order >= 2");
  SurfaceJets J;
  J.K = K;
  J.f = fj;
  std::vector<Jet> fi;
  for (int i = 0; i < n; ++i) fi.push_back(partial(fj, i));
  JetMat fij(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) fij[i].push_back(partial(fi[i], j));

  // B = 1 - |grad f|^2, s_ij = delta_ij - f_i f_j
  J.B = Jet::constant(1.0, n, K - 1);
  for (int i = 0; i < n; ++i) J.B -= fi[i] * fi[i];
  J.S.resize(static_cast<std::size_t>(n));
  J.Scof.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet fifj = fi[i] * fi[j];
      J.S[i].push_back((i == j ? 1.0 : 0.0) - fifj);
      J.Scof[i].push_back(i == j ? J.B + fifj : fifj);
    }
  J.nu.push_back(Jet::constant(-1.0, n, K - 1));
  for (int i = 0; i < n; ++i) J.nu.push_back(-fi[i]);
  J.h = fij;

  // A = B lap f - 1/2 grad B . grad f
  Jet B2 = cut(J.B, K - 2);
  Jet A(n, K - 2);
  for (int i = 0; i < n; ++i) {
    A += B2 * fij[i][i];
    A -= 0.5 * (partial(J.B, i) * cut(fi[i], K - 2));
  }
  J.A = A;
  return J;
}

SurfaceJets general_from_f(const GraphSurface& F, const Vec& p, const Jet& fj) {
  const int n = F.n();
  const int d = n + 1;
  const int K = fj.order();
  if (K < 2) throw ValidationError("surface jets need f to order >= 2");
  const MetricChart& g = F.ambient;

  // Components of F and its first and second partials.
  std::vector<Jet> Fa;
  Fa.push_back(fj);
  for (int i = 0; i < n; ++i) Fa.push_back(Jet::variable(i, p(i), n, K));
  JetMat Fu(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) Fu[i].push_back(partial(Fa[a], i));
  std::vector<JetMat> Fuu(static_cast<std::size_t>(n), JetMat(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < d; ++a) Fuu[i][j].push_back(partial(Fu[i][a], j));

  Vec P(d);
  for (int a = 0; a < d; ++a) P(a) = Fa[a].value();

  // g along F to order K-1, and its ambient partials along F to order K-2.
  JetMat gF;
  std::vector<JetMat> dgF(static_cast<std::size_t>(d));
  if (g.supports_jets()) {
    std::vector<Jet> amb;
    for (int a = 0; a < d; ++a) amb.push_back(Jet::variable(a, P(a), d, K - 1));
    JetMat G = g.components_on(amb);
    std::vector<Jet> disp1, disp2;
    for (int a = 0; a < d; ++a) {
      Jet da = Fa[a] - P(a);
      disp1.push_back(cut(da, K - 1));
      disp2.push_back(cut(da, K - 2));
    }
    Substituter sub1(G[0][0].layout_ptr(), disp1);
    gF.resize(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) gF[a].push_back(sub1.apply(G[a][b]));
    Substituter sub2(JetLayout::get(d, K - 2), disp2);
    for (int c = 0; c < d; ++c) {
      dgF[c].resize(static_cast<std::size_t>(d));
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) dgF[c][a].push_back(sub2.apply(partial(G[a][b], c)));
    }
  } else {
    if (K != 2)
      throw ValidationError("metric '" + g.label() +
                            "' is only sampled; surface jets beyond first order need a metric "
                            "given by expressions");
    std::vector<Jet> F1;
    for (int a = 0; a < d; ++a) F1.push_back(cut(Fa[a], 1));
    gF = g.components_on(F1);
    MetricSample s = g.at_unchecked(P);
    for (int c = 0; c < d; ++c) {
      dgF[c].resize(static_cast<std::size_t>(d));
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) dgF[c][a].push_back(Jet::constant(s.dg[c](a, b), n, 0));
    }
  }

  SurfaceJets J;
  J.K = K;
  J.f = fj;

  // s_ij = g(F_i, F_j); mu_ik = sum_a F_i^a g_ak
  JetMat mu(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) {
      Jet acc(n, K - 1);
      for (int a = 0; a < d; ++a) acc += Fu[i][a] * gF[a][k];
      mu[i].push_back(std::move(acc));
    }
  J.S.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet acc(n, K - 1);
      for (int k = 0; k < d; ++k) acc += mu[i][k] * Fu[j][k];
      J.S[i].push_back(std::move(acc));
    }
  J.B = det_full(J.S);
  J.Scof = adjugate(J.S);

  // Expanding det(mu rows; xi row) along the xi row gives
  // sum_k xi_k (-1)^{n+k} M_k with M_k the minor without column k. The extra
  // factor (-1)^{n+1} orients the normal so that Minkowski gives -(1, grad f).
  for (int k = 0; k < d; ++k) {
    Jet Mk = det_sub(mu, range_without(n, -1), range_without(d, k));
    J.nu.push_back(k % 2 == 1 ? Mk : -Mk);
  }

  // h_ij = g(D_i F_j, nu) with D_i F_j = F_ij + Gamma(F_i, F_j). Lowering
  // with g turns Gamma into the first-kind symbols, so no inverse is needed.
  std::vector<Jet> nu2;
  for (const Jet& v : J.nu) nu2.push_back(cut(v, K - 2));
  JetMat g2(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) g2[a].push_back(cut(gF[a][b], K - 2));
  JetMat Fu2(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) Fu2[i].push_back(cut(Fu[i][a], K - 2));
  std::vector<JetMat> Glow(static_cast<std::size_t>(d), JetMat(static_cast<std::size_t>(d)));
  for (int e = 0; e < d; ++e)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Jet v = dgF[a][e][b] + dgF[b][e][a] - dgF[e][a][b];
        v *= 0.5;
        if (v.order() != K - 2) v = v.extended(K - 2);
        Glow[e][a].push_back(std::move(v));
      }

  J.h.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet hij(n, K - 2);
      for (int e = 0; e < d; ++e) {
        Jet De(n, K - 2);
        for (int c = 0; c < d; ++c) De += g2[e][c] * Fuu[i][j][c];
        for (int a = 0; a < d; ++a) {
          Jet t(n, K - 2);
          for (int b = 0; b < d; ++b) t += Glow[e][a][b] * Fu2[j][b];
          De += Fu2[i][a] * t;
        }
        hij += nu2[e] * De;
      }
      J.h[i].push_back(std::move(hij));
    }

  Jet A(n, K - 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A += cut(J.Scof[i][j], K - 2) * J.h[i][j];
  J.A = A;
  return J;
}

}  // namespace

// ---------------------------------------------------------------- HeightFunction

HeightFunction HeightFunction::expression(int n, Expr e) {
  if (n < 1 || n + 1 > kMaxDim) throw ValidationError("unsupported dimension n=" + std::to_string(n));
  if (e.slots_used() > n) throw ValidationError("height function uses a variable beyond x" + std::to_string(n));
  HeightFunction h;
  h.kind_ = Kind::Expression;
  h.n_ = n;
  h.expr_ = std::move(e);
  return h;
}

HeightFunction HeightFunction::parse(int n, std::string_view text) {
  return expression(n, causal::parse(text, VarTable::domain(n)));
}

HeightFunction HeightFunction::series(SeriesSurface s) {
  if (s.f.nvars() != s.n) throw ValidationError("series jet has the wrong number of variables");
  HeightFunction h;
  h.kind_ = Kind::Series;
  h.n_ = s.n;
  h.series_ = std::make_shared<const SeriesSurface>(std::move(s));
  return h;
}

HeightFunction HeightFunction::affine(const HeightFunction& base, const Mat& R, const Vec& c,
                                      double shift) {
  const int n = base.n();
  if (R.rows() != n || R.cols() != n || c.size() != n)
    throw ValidationError("affine reparametrization has the wrong dimension");
  HeightFunction h;
  h.kind_ = Kind::Affine;
  h.n_ = n;
  h.base_ = std::make_shared<const HeightFunction>(base);
  h.R_ = R;
  h.c_ = c;
  h.shift_ = shift;
  return h;
}

std::string HeightFunction::describe() const {
  switch (kind_) {
    case Kind::Expression: return expr_.str();
    case Kind::Series:
      return "series(" + series_->builder + ", order " + std::to_string(series_->order) + ")";
    case Kind::Affine: return "affine(" + base_->describe() + ")";
  }
  return "";
}

Jet HeightFunction::eval(std::span<const Jet> coords) const {
  if (static_cast<int>(coords.size()) != n_)
    throw ValidationError("height function needs " + std::to_string(n_) + " coordinates");
  switch (kind_) {
    case Kind::Expression: return expr_.eval(coords);
    case Kind::Series: return substitute(series_->f, coords);
    case Kind::Affine: {
      std::vector<Jet> x;
      for (int i = 0; i < n_; ++i) {
        Jet xi = Jet::constant(c_(i), coords[0].nvars(), coords[0].order());
        for (int k = 0; k < n_; ++k)
          if (R_(i, k) != 0.0) xi += R_(i, k) * coords[k];
        x.push_back(std::move(xi));
      }
      return base_->eval(x) - shift_;
    }
  }
  throw ValidationError("malformed height function");
}

Jet HeightFunction::jet_at(const Vec& p, int order) const {
  if (p.size() != n_) throw ValidationError("point dimension mismatch");
  std::vector<Jet> coords;
  for (int i = 0; i < n_; ++i) coords.push_back(Jet::variable(i, p(i), n_, order));
  return eval(coords);
}

double HeightFunction::value(const Vec& p) const {
  if (p.size() != n_) throw ValidationError("point dimension mismatch");
  switch (kind_) {
    case Kind::Expression: return expr_.eval(std::span<const double>(p.data(), static_cast<std::size_t>(n_)));
    case Kind::Series:
      return series_->f.evaluate(std::span<const double>(p.data(), static_cast<std::size_t>(n_)));
    case Kind::Affine: return base_->value(c_ + R_ * p) - shift_;
  }
  throw ValidationError("malformed height function");
}

// ---------------------------------------------------------------- GraphSurface

GraphSurface::GraphSurface(HeightFunction f_, MetricChart ambient_)
    : f(std::move(f_)), ambient(std::move(ambient_)) {
  if (ambient.dim() != f.n() + 1)
    throw ValidationError("ambient chart has dimension " + std::to_string(ambient.dim()) +
                          ", graph over " + std::to_string(f.n()) + " variables needs " +
                          std::to_string(f.n() + 1));
}

Vec GraphSurface::lift(const Vec& p) const {
  Vec x(n() + 1);
  x(0) = f.value(p);
  x.tail(n()) = p;
  return x;
}

const char* causal_type_name(CausalType c) {
  switch (c) {
    case CausalType::Spacelike: return "spacelike";
    case CausalType::Timelike: return "timelike";
    case CausalType::LightlikeNondegenerate: return "lightlike_nondegenerate";
    case CausalType::LightlikeDegenerate: return "lightlike_degenerate";
  }
  return "?";
}

bool is_lightlike(CausalType c) {
  return c == CausalType::LightlikeNondegenerate || c == CausalType::LightlikeDegenerate;
}

// ---------------------------------------------------------------- pointwise data

SurfaceJets surface_jets(const GraphSurface& F, const Vec& p, int K, Path path) {
  if (p.size() != F.n()) throw ValidationError("point has " + std::to_string(p.size()) +
                                               " coordinates, surface has " + std::to_string(F.n()));
  Jet fj = F.f.jet_at(p, K);
  bool fast = path == Path::Minkowski || (path == Path::Auto && F.ambient.is_minkowski());
  if (path == Path::Minkowski && !F.ambient.is_minkowski())
    throw ValidationError("closed-form path needs the builtin Minkowski ambient");
  return fast ? minkowski_from_f(fj) : general_from_f(F, p, fj);
}

SurfaceJets minkowski_surface_jets(const Jet& f) { return minkowski_from_f(f); }

double default_tol_B(const Mat& S) {
  return 1e-10 * (1.0 + S.cwiseAbs().rowwise().sum().maxCoeff());
}

CausalClass classify(double B, const Vec& gradB, const Mat& S, const Tolerances& tol) {
  CausalClass c;
  c.tol_B = tol.tol_B < 0 ? default_tol_B(S) : tol.tol_B;
  c.tol_grad = tol.tol_grad;
  if (B > c.tol_B)
    c.type = CausalType::Spacelike;
  else if (B < -c.tol_B)
    c.type = CausalType::Timelike;
  else
    c.type = gradB.norm() <= c.tol_grad ? CausalType::LightlikeDegenerate
                                        : CausalType::LightlikeNondegenerate;
  return c;
}

PointReport point_report(const GraphSurface& F, const Vec& p, const Tolerances& tol, Path path) {
  const int n = F.n();
  if (!F.ambient.is_minkowski()) check_signature(F.ambient.at_unchecked(F.lift(p)).g);
  SurfaceJets J = surface_jets(F, p, 2, path);
  PointReport r;
  r.p = p;
  r.S = values_of(J.S);
  r.B = J.B.value();
  r.gradB.resize(n);
  for (int i = 0; i < n; ++i) r.gradB(i) = J.B.gradient(i);
  r.Scof = values_of(J.Scof);
  r.nu = values_of(J.nu);
  r.h = values_of(J.h);
  r.A = J.A.value();
  r.theta = std::sqrt(std::abs(r.B));
  r.cls = classify(r.B, r.gradB, r.S, tol);
  if (std::abs(r.B) > r.cls.tol_B) {
    const double H = r.A / (n * std::pow(std::abs(r.B), 1.5));
    r.H = H;
    r.Hhat = (r.B > 0 ? 1.0 : -1.0) * H;
    r.Hvec = Vec(r.A / (n * r.B * r.B) * r.nu);
    r.omegaH = r.A / (n * r.B);
  }
  return r;
}

MetricChart minkowski_as_components(int n) {
  std::vector<std::vector<Expr>> g(static_cast<std::size_t>(n + 1),
                                   std::vector<Expr>(static_cast<std::size_t>(n + 1)));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) g[i][j] = Expr::number(i == j ? (i == 0 ? -1.0 : 1.0) : 0.0);
  return MetricChart::from_components(n, g);
}

ConsistencyResiduals minkowski_consistency(const GraphSurface& F, const Vec& p) {
  if (!F.ambient.is_minkowski())
    throw ValidationError("minkowski_consistency needs the builtin Minkowski ambient");
  GraphSurface G(F.f, minkowski_as_components(F.n()));
  PointReport fast = point_report(F, p, {}, Path::Minkowski);
  PointReport gen = point_report(G, p, {}, Path::General);
  ConsistencyResiduals r;
  r.B_fast = fast.B;
  r.B_general = gen.B;
  r.A_fast = fast.A;
  r.A_general = gen.A;
  r.dB = std::abs(fast.B - gen.B);
  r.dA = std::abs(fast.A - gen.A);
  r.dnu = (fast.nu - gen.nu).cwiseAbs().maxCoeff();
  return r;
}

double admissibility_residual(const GraphSurface& F, const Expr& phi, double alpha,
                              std::span<const Vec> grid) {
  int alpha_int = 0;
  const bool integral = alpha == std::round(alpha) && std::abs(alpha) < 64;
  if (integral) alpha_int = static_cast<int>(alpha);
  std::vector<double> res(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Vec& p = grid[k];
    SurfaceJets J = surface_jets(F, p, 2);
    const double B = J.B.value();
    const double A = J.A.value();
    const double ph = phi.eval(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
    double Bp;
    if (integral) {
      Bp = 1.0;
      for (int m = 0; m < 1 + alpha_int; ++m) Bp *= B;
      if (1 + alpha_int < 0) Bp = std::pow(B, 1 + alpha_int);
    } else {
      Bp = std::pow(std::abs(B), 1.0 + alpha);
    }
    res[k] = std::abs(A - ph * Bp);
  }
  double m = 0.0;
  for (double v : res) m = std::max(m, v);
  return m;
}

Normalization normalize_at_lightlike(const GraphSurface& F, const Vec& o, const Tolerances& tol) {
  const int n = F.n();
  PointReport r = point_report(F, o, tol);
  if (!is_lightlike(r.cls.type))
    throw ValidationError(std::string("normalization needs a light-like point, got ") +
                          causal_type_name(r.cls.type) + " (B = " + std::to_string(r.B) + ")");
  const Vec P = F.lift(o);
  if (!F.ambient.is_minkowski()) {
    AdmissibilityReport adm = F.ambient.is_admissible_at(P);
    if (!adm.admissible)
      throw ValidationError("ambient chart is not admissible at F(o) (metric residual " +
                            std::to_string(std::max({adm.g00, adm.g0i, adm.gjk})) +
                            ", Christoffel residual " + std::to_string(adm.christoffel) + ")");
  }
  Jet f1 = F.f.jet_at(o, 1);
  Vec grad(n);
  for (int i = 0; i < n; ++i) grad(i) = f1.gradient(i);
  const double gn = grad.norm();
  if (gn < 1e-12)
    throw ValidationError("inconsistent input: grad f vanishes at o, so B(o) = 1, not 0");

  Vec u = grad / gn;
  Mat R = Mat::Identity(n, n);
  Vec en = Vec::Zero(n);
  en(n - 1) = 1.0;
  Vec v = u - en;
  if (v.norm() > 1e-15) {
    if (n == 1) throw ValidationError("cannot orient a one-dimensional graph by a rotation");
    R = Mat::Identity(n, n) - 2.0 * v * v.transpose() / v.squaredNorm();
    // Householder has det -1; flipping the first column restores +1 without
    // touching the last column.
    R.col(0) *= -1.0;
  }

  const double shift = F.f.value(o);
  const bool identity = (R - Mat::Identity(n, n)).cwiseAbs().maxCoeff() == 0.0 &&
                        o.cwiseAbs().maxCoeff() == 0.0 && shift == 0.0;
  if (identity) return {F, R, o, shift};

  HeightFunction fn = HeightFunction::affine(F.f, R, o, shift);
  MetricChart amb = F.ambient;
  if (!F.ambient.is_minkowski()) {
    Mat L = Mat::Zero(n + 1, n + 1);
    L(0, 0) = 1.0;
    L.bottomRightCorner(n, n) = R;
    amb = MetricChart::pullback(F.ambient, L, P);
  }
  Normalization out{GraphSurface(fn, amb), R, o, shift};

  Jet g1 = out.surface.f.jet_at(Vec::Zero(n), 1);
  double off = std::abs(g1.value());
  for (int i = 0; i < n; ++i) off = std::max(off, std::abs(g1.gradient(i) - (i == n - 1 ? 1.0 : 0.0)));
  if (off > 1e-6)
    throw NumericError("normalization failed: grad f(o) = " + std::to_string(gn) +
                       " differs from a unit light-like gradient");
  return out;
}

Lemma23Report lemma_2_3_check(const GraphSurface& F, const Vec& o,
                              const std::optional<ClassClaim>& claim, double tol) {
  const int n = F.n();
  Lemma23Report r;
  if (claim) {
    auto grid = box_grid(o, claim->radius, 5);
    double res = admissibility_residual(F, claim->phi, claim->alpha, grid);
    r.class_residual = res;
    if (res > claim->tol)
      throw ValidationError("surface is not in the claimed class: residual " + std::to_string(res));
  }
  SurfaceJets J = surface_jets(F, o, 2);
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  auto second = [&](int i, int j) {
    std::fill(a.begin(), a.end(), 0);
    a[static_cast<std::size_t>(i)] += 1;
    a[static_cast<std::size_t>(j)] += 1;
    return J.f.derivative(a);
  };
  r.Bxn = J.B.gradient(n - 1);
  r.fxnxn = second(n - 1, n - 1);
  for (int j = 0; j < n - 1; ++j) {
    const double fnj = second(n - 1, j);
    r.identity = std::max(r.identity, std::abs(J.B.gradient(j) + 2.0 * fnj));
    r.max_fxnxj = std::max(r.max_fxnxj, std::abs(fnj));
  }
  r.degenerate = r.max_fxnxj <= tol;
  return r;
}

std::vector<Vec> box_grid(const Vec& center, double half_width, int points_per_axis) {
  const int n = static_cast<int>(center.size());
  if (points_per_axis < 1) throw ValidationError("grid needs at least one point per axis");
  std::vector<Vec> out;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (;;) {
    Vec p = center;
    for (int i = 0; i < n; ++i) {
      double s = points_per_axis == 1 ? 0.0
                                      : -half_width + 2.0 * half_width * idx[i] / (points_per_axis - 1);
      p(i) += s;
    }
    out.push_back(p);
    int k = 0;
    while (k < n && ++idx[k] == points_per_axis) idx[k++] = 0;
    if (k == n) break;
  }
  return out;
}

}  // namespace causal
