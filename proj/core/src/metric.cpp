#include "causal_locus/metric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "causal_locus/errors.hpp"

namespace causal {

namespace {

std::size_t tri_index(int n1, int i, int j) {
  if (i > j) std::swap(i, j);
  // Row-major upper triangle of an n1 x n1 matrix.
  return static_cast<std::size_t>(i * n1 - i * (i - 1) / 2 + (j - i));
}

void require_point(const Vec& p, int dim) {
  if (p.size() != dim)
    throw ValidationError("point has " + std::to_string(p.size()) + " coordinates, chart has " +
                          std::to_string(dim));
}

}  // namespace

Mat minkowski_eta(int dim) {
  Mat eta = Mat::Identity(dim, dim);
  eta(0, 0) = -1.0;
  return eta;
}

Vec Christoffels::contract(const Vec& u, const Vec& w) const {
  Vec r(dim);
  for (int c = 0; c < dim; ++c) r(c) = u.dot(gamma[c] * w);
  return r;
}

double Christoffels::max_abs() const {
  double m = 0.0;
  for (int c = 0; c < dim; ++c) m = std::max(m, gamma[c].cwiseAbs().maxCoeff());
  return m;
}

void check_signature(const Mat& g) {
  const int dim = static_cast<int>(g.rows());
  if (!g.allFinite()) throw NumericError("metric has non-finite components");
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  const Vec ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  int negative = 0;
  for (int i = 0; i < dim; ++i) {
    if (std::abs(ev(i)) <= 1e-12 * scale)
      throw NumericError("metric is degenerate (eigenvalue " + std::to_string(ev(i)) + ")");
    if (ev(i) < 0) ++negative;
  }
  if (negative != 1)
    throw NumericError("metric signature is (" + std::to_string(dim - negative) + "," +
                       std::to_string(negative) + "), expected (" + std::to_string(dim - 1) +
                       ",1)");
}

MetricChart MetricChart::minkowski(int n) {
  if (n < 1 || n + 1 > kMaxDim) throw ValidationError("unsupported dimension n=" + std::to_string(n));
  MetricChart m;
  m.kind_ = Kind::Minkowski;
  m.n_ = n;
  m.label_ = "minkowski";
  return m;
}

MetricChart MetricChart::from_components(int n, const std::vector<std::vector<Expr>>& g) {
  if (n < 1 || n + 1 > kMaxDim) throw ValidationError("unsupported dimension n=" + std::to_string(n));
  const int n1 = n + 1;
  if (static_cast<int>(g.size()) != n1)
    throw ValidationError("metric needs " + std::to_string(n1) + " component rows");
  MetricChart m;
  m.kind_ = Kind::Components;
  m.n_ = n;
  m.label_ = "components";
  for (int i = 0; i < n1; ++i) {
    if (static_cast<int>(g[i].size()) != n1)
      throw ValidationError("metric component row " + std::to_string(i) + " has wrong length");
    for (int j = i; j < n1; ++j) {
      const Expr& e = g[i][j];
      if (!e.valid()) throw ValidationError("metric component g" + std::to_string(i) + std::to_string(j) + " missing");
      if (e.slots_used() > n1)
        throw ValidationError("metric component uses a coordinate beyond x" + std::to_string(n));
      m.comps_.push_back(e);
    }
  }
  return m;
}

MetricChart MetricChart::from_strings(int n,
                                      const std::vector<std::pair<std::string, std::string>>& g) {
  const int n1 = n + 1;
  if (n < 1 || n1 > kMaxDim) throw ValidationError("unsupported dimension n=" + std::to_string(n));
  VarTable vars = VarTable::spacetime(n);
  std::vector<std::vector<Expr>> comps(static_cast<std::size_t>(n1),
                                       std::vector<Expr>(static_cast<std::size_t>(n1)));
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      comps[i][j] = Expr::number(i == j ? (i == 0 ? -1.0 : 1.0) : 0.0);
  for (const auto& [key, text] : g) {
    if (key.size() != 3 || key[0] != 'g' || !std::isdigit(static_cast<unsigned char>(key[1])) ||
        !std::isdigit(static_cast<unsigned char>(key[2])))
      throw ValidationError("unknown metric key '" + key + "'");
    int i = key[1] - '0', j = key[2] - '0';
    if (i >= n1 || j >= n1) throw ValidationError("metric key '" + key + "' out of range");
    Expr e = parse(text, vars);
    comps[i][j] = e;
    comps[j][i] = e;
  }
  return from_components(n, comps);
}

MetricChart MetricChart::sampled(int n, Sampler sampler, std::string label) {
  if (n < 1 || n + 1 > kMaxDim) throw ValidationError("unsupported dimension n=" + std::to_string(n));
  MetricChart m;
  m.kind_ = Kind::Sampled;
  m.n_ = n;
  m.sampler_ = std::move(sampler);
  m.label_ = std::move(label);
  return m;
}

MetricChart MetricChart::pullback(const MetricChart& base, const Mat& L, const Vec& b) {
  const int d = base.dim();
  if (L.rows() != d || L.cols() != d || b.size() != d)
    throw ValidationError("pullback map has the wrong dimension");
  if (std::abs(L.determinant()) < 1e-14) throw ValidationError("pullback map is singular");
  MetricChart m;
  m.kind_ = Kind::Pullback;
  m.n_ = base.n_;
  m.label_ = "pullback(" + base.label_ + ")";
  m.base_ = std::make_shared<const MetricChart>(base);
  m.L_ = L;
  m.b_ = b;
  return m;
}

const Expr& MetricChart::component(int i, int j) const {
  if (kind_ != Kind::Components) throw ValidationError("chart has no component expressions");
  return comps_[tri_index(dim(), i, j)];
}

bool MetricChart::supports_jets() const {
  switch (kind_) {
    case Kind::Minkowski:
    case Kind::Components: return true;
    case Kind::Sampled: return false;
    case Kind::Pullback: return base_->supports_jets();
  }
  return false;
}

MetricSample MetricChart::at_unchecked(const Vec& p) const {
  const int d = dim();
  require_point(p, d);
  MetricSample s;
  switch (kind_) {
    case Kind::Minkowski:
      s.g = minkowski_eta(d);
      for (int k = 0; k < d; ++k) s.dg[k] = Mat::Zero(d, d);
      return s;
    case Kind::Components: {
      s.g.resize(d, d);
      for (int k = 0; k < d; ++k) s.dg[k].resize(d, d);
      std::array<double, kMaxDim> grad{};
      std::span<const double> xs(p.data(), static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
          double v = comps_[tri_index(d, i, j)].eval_gradient(
              xs, std::span<double>(grad.data(), static_cast<std::size_t>(d)));
          s.g(i, j) = s.g(j, i) = v;
          for (int k = 0; k < d; ++k) s.dg[k](i, j) = s.dg[k](j, i) = grad[k];
        }
      return s;
    }
    case Kind::Sampled:
      s = sampler_(p);
      if (s.g.rows() != d || s.g.cols() != d) throw NumericError("sampled metric has wrong shape");
      return s;
    case Kind::Pullback: {
      MetricSample bs = base_->at_unchecked(L_ * p + b_);
      s.g = L_.transpose() * bs.g * L_;
      for (int k = 0; k < d; ++k) {
        Mat dk = Mat::Zero(d, d);
        for (int m = 0; m < d; ++m) dk += L_(m, k) * bs.dg[m];
        s.dg[k] = L_.transpose() * dk * L_;
      }
      return s;
    }
  }
  return s;
}

MetricSample MetricChart::at(const Vec& p) const {
  MetricSample s = at_unchecked(p);
  if (kind_ != Kind::Minkowski) check_signature(s.g);
  return s;
}

std::vector<std::vector<Jet>> MetricChart::components_on(std::span<const Jet> coords) const {
  const int d = dim();
  if (static_cast<int>(coords.size()) != d)
    throw ValidationError("components_on needs " + std::to_string(d) + " coordinate jets");
  const int nv = coords[0].nvars(), ord = coords[0].order();
  std::vector<std::vector<Jet>> out(static_cast<std::size_t>(d));
  switch (kind_) {
    case Kind::Minkowski:
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          out[i].push_back(Jet::constant(i == j ? (i == 0 ? -1.0 : 1.0) : 0.0, nv, ord));
      return out;
    case Kind::Components:
      for (int i = 0; i < d; ++i) out[i].resize(static_cast<std::size_t>(d), Jet(nv, ord));
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) out[i][j] = out[j][i] = comps_[tri_index(d, i, j)].eval(coords);
      return out;
    case Kind::Sampled: {
      if (ord > 1) throw ValidationError("sampled metric '" + label_ + "' supports only first-order jets");
      Vec p(d);
      for (int k = 0; k < d; ++k) p(k) = coords[k].value();
      MetricSample s = at_unchecked(p);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          Jet g = Jet::constant(s.g(i, j), nv, ord);
          if (ord == 1)
            for (int k = 0; k < d; ++k) {
              Jet dx = coords[k];
              dx[0] = 0.0;
              g += s.dg[k](i, j) * dx;
            }
          out[i].push_back(std::move(g));
        }
      return out;
    }
    case Kind::Pullback: {
      std::vector<Jet> x;
      for (int m = 0; m < d; ++m) {
        Jet xm = Jet::constant(b_(m), nv, ord);
        for (int k = 0; k < d; ++k)
          if (L_(m, k) != 0.0) xm += L_(m, k) * coords[k];
        x.push_back(std::move(xm));
      }
      auto G = base_->components_on(x);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          Jet acc(nv, ord);
          for (int a = 0; a < d; ++a)
            for (int c = 0; c < d; ++c)
              if (L_(a, i) != 0.0 && L_(c, j) != 0.0) acc += (L_(a, i) * L_(c, j)) * G[a][c];
          out[i].push_back(std::move(acc));
        }
      return out;
    }
  }
  return out;
}

Christoffels MetricChart::christoffels(const MetricSample& s) const {
  const int d = dim();
  Christoffels G;
  G.dim = d;
  Eigen::FullPivLU<Mat> lu(s.g);
  if (!lu.isInvertible()) throw NumericError("metric matrix is singular");
  const Mat ginv = lu.inverse();
  // lower(d, a, b) = 1/2 (d_a g_db + d_b g_da - d_d g_ab)
  std::array<Mat, kMaxDim> lower;
  for (int dd = 0; dd < d; ++dd) {
    lower[dd].resize(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b)
        lower[dd](a, b) = lower[dd](b, a) =
            0.5 * (s.dg[a](dd, b) + s.dg[b](dd, a) - s.dg[dd](a, b));
  }
  for (int c = 0; c < d; ++c) {
    G.gamma[c] = Mat::Zero(d, d);
    for (int dd = 0; dd < d; ++dd)
      if (ginv(c, dd) != 0.0) G.gamma[c] += ginv(c, dd) * lower[dd];
  }
  return G;
}

Christoffels MetricChart::christoffels(const Vec& p) const {
  if (kind_ == Kind::Minkowski) {
    require_point(p, dim());
    Christoffels G;
    G.dim = dim();
    for (int c = 0; c < dim(); ++c) G.gamma[c] = Mat::Zero(dim(), dim());
    return G;
  }
  return christoffels(at(p));
}

AdmissibilityReport MetricChart::is_admissible_at(const Vec& p, double tol) const {
  AdmissibilityReport r;
  r.tol = tol;
  const int d = dim();
  MetricSample s = at_unchecked(p);
  r.g00 = std::abs(s.g(0, 0) + 1.0);
  for (int i = 1; i < d; ++i) r.g0i = std::max(r.g0i, std::abs(s.g(0, i)));
  for (int j = 1; j < d; ++j)
    for (int k = 1; k < d; ++k) r.gjk = std::max(r.gjk, std::abs(s.g(j, k) - (j == k ? 1.0 : 0.0)));
  for (int k = 0; k < d; ++k) r.derivative = std::max(r.derivative, s.dg[k].cwiseAbs().maxCoeff());
  try {
    r.christoffel = christoffels(s).max_abs();
  } catch (const NumericError&) {
    r.christoffel = std::numeric_limits<double>::infinity();
  }
  r.admissible = r.g00 <= tol && r.g0i <= tol && r.gjk <= tol && r.christoffel <= tol &&
                 r.derivative <= tol;
  return r;
}

}  // namespace causal
