#include "causal_locus/fermi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "causal_locus/errors.hpp"
#include "causal_locus/parallel.hpp"

namespace causal {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Gram-matrix pattern of a null frame.
double pattern(int a, int b) {
  if (a <= 1 && b <= 1) return a == b ? 0.0 : -1.0;
  return a == b ? 1.0 : 0.0;
}

Vec y_from_x(const Vec& x) {
  const int d = static_cast<int>(x.size());
  const int n = d - 1;
  Vec y(d);
  y(0) = (x(0) + x(n)) * kInvSqrt2;
  y(1) = (x(0) - x(n)) * kInvSqrt2;
  for (int i = 1; i < n; ++i) y(i + 1) = x(i);
  return y;
}

// Richardson-extrapolated central difference of a vector- or matrix-valued
// function along one coordinate.
template <typename T, typename Fn>
T richardson(Fn&& fn, const Vec& x, int k, double h) {
  auto central = [&](double s) {
    Vec xp = x, xm = x;
    xp(k) += s;
    xm(k) -= s;
    T r = fn(xp) - fn(xm);
    return T(r / (2.0 * s));
  };
  T d1 = central(h);
  T d2 = central(0.5 * h);
  return T((4.0 * d2 - d1) / 3.0);
}

}  // namespace

NullFrame null_frame_at(const MetricChart& chart, const Vec& p, const Vec& v, double tol) {
  const int d = chart.dim();
  if (v.size() != d) throw ValidationError("null vector has the wrong dimension");
  if (v.norm() == 0.0) throw ValidationError("null frame needs a nonzero vector");
  const Mat g = chart.at(p).g;
  const double q = inner(g, v, v);
  if (std::abs(q) > tol * std::max(1.0, v.squaredNorm()))
    throw ValidationError("vector is not null: g(v, v) = " + std::to_string(q));

  NullFrame fr;
  fr.e.push_back(v);
  Vec gv = g * v;
  int best = 0;
  for (int k = 1; k < d; ++k)
    if (std::abs(gv(k)) > std::abs(gv(best))) best = k;
  Vec w = Vec::Zero(d);
  w(best) = 1.0;
  const double gvw = gv(best);
  const double gww = g(best, best);
  Vec e1 = (w - (gww / (2.0 * gvw)) * v) / (-gvw);
  fr.e.push_back(e1);

  for (int k = 0; k < d && static_cast<int>(fr.e.size()) < d; ++k) {
    Vec u = Vec::Zero(d);
    u(k) = 1.0;
    u += inner(g, u, e1) * v + inner(g, u, v) * e1;
    for (std::size_t j = 2; j < fr.e.size(); ++j) u -= inner(g, u, fr.e[j]) * fr.e[j];
    const double nn = inner(g, u, u);
    if (nn < 1e-8) continue;
    fr.e.push_back(u / std::sqrt(nn));
  }
  if (static_cast<int>(fr.e.size()) != d) throw NumericError("could not complete the null frame");
  return fr;
}

double frame_defect(const Mat& g, std::span<const Vec> e) {
  double m = 0.0;
  const int d = static_cast<int>(e.size());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) m = std::max(m, std::abs(inner(g, e[a], e[b]) - pattern(a, b)));
  return m;
}

FermiChart build_fermi_chart(const MetricChart& chart, const Vec& p, const Vec& v_null, double t0,
                             double t1, double eps, double step, bool transport) {
  if (!(eps > 0.0)) throw ValidationError("Fermi half-width must be positive");
  NullFrame fr = null_frame_at(chart, p, v_null);
  FermiChart fc;
  fc.ambient_ = chart;
  fc.eps_ = eps;
  fc.step_ = step;
  fc.transported_ = transport;
  fc.sigma_ = geodesic_ivp(chart, p, v_null, t0, t1, step);
  if (transport) {
    fc.frame_ = parallel_transport(chart, fc.sigma_, std::span<const Vec>(fr.e), step);
  } else {
    fc.frame_.assign(fc.sigma_.size(), fr.e);
  }
  return fc;
}

void FermiChart::at(double t, Vec& x, std::vector<Vec>& E) const {
  if (t < t_min() - 1e-12 || t > t_max() + 1e-12)
    throw ValidationError("parameter " + std::to_string(t) + " outside the integrated span [" +
                          std::to_string(t_min()) + ", " + std::to_string(t_max()) + "]");
  const double r = (t - t_min()) / step_;
  auto k = static_cast<std::size_t>(std::clamp(std::floor(r + 1e-12), 0.0,
                                               static_cast<double>(sigma_.size() - 1)));
  x = sigma_[k].x;
  Vec v = sigma_[k].v;
  E = frame_[k];
  const double h = t - sigma_[k].t;
  if (h == 0.0) return;
  if (transported_) {
    geodesic_step(ambient_, x, v, E, h);
  } else {
    std::vector<Vec> none;
    geodesic_step(ambient_, x, v, none, h);
  }
}

Vec FermiChart::phi_y(const Vec& y) const {
  const int d = dim();
  if (y.size() != d) throw ValidationError("Fermi coordinates have the wrong dimension");
  Vec x;
  std::vector<Vec> E;
  at(y(0), x, E);
  Vec w = Vec::Zero(d);
  for (int i = 1; i < d; ++i) w += y(i) * E[static_cast<std::size_t>(i)];
  return exp_map(ambient_, x, w, 0.1);
}

Vec FermiChart::phi_x(const Vec& x) const { return phi_y(y_from_x(x)); }

Vec FermiChart::sigma_x(double t) const {
  Vec x = Vec::Zero(dim());
  x(0) = t * kInvSqrt2;
  x(dim() - 1) = t * kInvSqrt2;
  return x;
}

Mat FermiChart::jacobian(const Vec& x, double h) const {
  const int d = dim();
  Mat J(d, d);
  for (int k = 0; k < d; ++k)
    J.col(k) = richardson<Vec>([&](const Vec& z) { return phi_x(z); }, x, k, h);
  return J;
}

Mat FermiChart::metric(const Vec& x, double h) const {
  Mat J = jacobian(x, h);
  Mat g = ambient_.at_unchecked(phi_x(x)).g;
  return J.transpose() * g * J;
}

MetricSample FermiChart::metric_sample(const Vec& x, double h) const {
  MetricSample s;
  s.g = metric(x, h);
  for (int k = 0; k < dim(); ++k)
    s.dg[static_cast<std::size_t>(k)] =
        richardson<Mat>([&](const Vec& z) { return metric(z, h); }, x, k, h);
  return s;
}

MetricChart FermiChart::as_metric_chart(double h) const {
  FermiChart copy = *this;
  return MetricChart::sampled(
      dim() - 1, [copy, h](const Vec& x) { return copy.metric_sample(x, h); }, "fermi");
}

FermiReport verify_fermi(const FermiChart& fc, std::span<const double> t_samples, double fd_step) {
  FermiReport r;
  const int d = fc.dim();
  const double h = fd_step > 0.0 ? fd_step : fc.eps() / 50.0;
  if (2.0 * h > fc.eps())
    throw ValidationError("finite-difference step " + std::to_string(h) +
                          " is too large for the Fermi box of half-width " +
                          std::to_string(fc.eps()));
  r.fd_step = h;
  for (double t : t_samples)
    if (t - 2.0 * h * kInvSqrt2 < fc.t_min() || t + 2.0 * h * kInvSqrt2 > fc.t_max())
      throw ValidationError("sample t = " + std::to_string(t) +
                            " is too close to the end of the integrated geodesic");

  for (std::size_t k = 0; k < fc.sigma().size(); ++k) {
    const auto& s = fc.sigma()[k];
    const Mat g = fc.ambient().at_unchecked(s.x).g;
    r.frame = std::max(r.frame, frame_defect(g, fc.frame()[k]));
    r.velocity = std::max(r.velocity, (s.v - fc.frame()[k][0]).cwiseAbs().maxCoeff());
  }

  const Mat eta = minkowski_eta(d);
  struct Sample {
    double a1, a2, a3, dmin, dmax;
  };
  auto samples = parallel_map<Sample>(t_samples.size(), [&](std::size_t i) {
    const double t = t_samples[i];
    Sample out{};
    Vec xs;
    std::vector<Vec> E;
    fc.at(t, xs, E);
    const Vec xstar = fc.sigma_x(t);
    out.a1 = (fc.phi_x(xstar) - xs).cwiseAbs().maxCoeff();
    MetricSample ms = fc.metric_sample(xstar, h);
    out.a2 = (ms.g - eta).cwiseAbs().maxCoeff();
    out.a3 = fc.ambient().christoffels(ms).max_abs();
    // Jacobian determinant over y_i in {-eps/2, 0, eps/2}, i >= 1.
    out.dmin = std::numeric_limits<double>::infinity();
    out.dmax = -out.dmin;
    int count = 1;
    for (int j = 1; j < d; ++j) count *= 3;
    for (int c = 0; c < count; ++c) {
      Vec y = Vec::Zero(d);
      y(0) = t;
      int rem = c;
      for (int j = 1; j < d; ++j) {
        y(j) = 0.5 * fc.eps() * (rem % 3 - 1);
        rem /= 3;
      }
      Vec x(d);
      x(0) = (y(0) + y(1)) * kInvSqrt2;
      x(d - 1) = (y(0) - y(1)) * kInvSqrt2;
      for (int j = 1; j < d - 1; ++j) x(j) = y(j + 1);
      const double det = fc.jacobian(x, h).determinant();
      out.dmin = std::min(out.dmin, det);
      out.dmax = std::max(out.dmax, det);
    }
    return out;
  });

  r.det_min = std::numeric_limits<double>::infinity();
  r.det_max = -r.det_min;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Sample& s = samples[i];
    r.t.push_back(t_samples[i]);
    r.a2_t.push_back(s.a2);
    r.a3_t.push_back(s.a3);
    r.a1 = std::max(r.a1, s.a1);
    r.a2 = std::max(r.a2, s.a2);
    r.a3 = std::max(r.a3, s.a3);
    r.det_min = std::min(r.det_min, s.dmin);
    r.det_max = std::max(r.det_max, s.dmax);
  }
  r.injective = samples.empty() || r.det_min > 0.0 || r.det_max < 0.0;
  return r;
}

}  // namespace causal
