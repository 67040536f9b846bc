#include "causal_locus/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "causal_locus/errors.hpp"

namespace causal {

namespace {

struct State {
  Vec x, v;
  std::vector<Vec> E;
};

struct Deriv {
  Vec dx, dv;
  std::vector<Vec> dE;
};

Deriv rhs(const MetricChart& chart, const Vec& x, const Vec& v, const std::vector<Vec>& E) {
  Deriv d;
  d.dx = v;
  if (chart.is_minkowski()) {
    d.dv = Vec::Zero(v.size());
    d.dE.assign(E.size(), Vec::Zero(v.size()));
    return d;
  }
  Christoffels G = chart.christoffels(chart.at_unchecked(x));
  d.dv = -G.contract(v, v);
  d.dE.reserve(E.size());
  for (const Vec& e : E) d.dE.push_back(-G.contract(v, e));
  return d;
}

void rk4(const MetricChart& chart, State& s, double h) {
  auto shifted = [&](const Deriv& k, double a) {
    State t;
    t.x = s.x + a * k.dx;
    t.v = s.v + a * k.dv;
    t.E.reserve(s.E.size());
    for (std::size_t i = 0; i < s.E.size(); ++i) t.E.push_back(s.E[i] + a * k.dE[i]);
    return t;
  };
  Deriv k1 = rhs(chart, s.x, s.v, s.E);
  State s2 = shifted(k1, 0.5 * h);
  Deriv k2 = rhs(chart, s2.x, s2.v, s2.E);
  State s3 = shifted(k2, 0.5 * h);
  Deriv k3 = rhs(chart, s3.x, s3.v, s3.E);
  State s4 = shifted(k3, h);
  Deriv k4 = rhs(chart, s4.x, s4.v, s4.E);
  const double w = h / 6.0;
  s.x += w * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
  s.v += w * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
  for (std::size_t i = 0; i < s.E.size(); ++i)
    s.E[i] += w * (k1.dE[i] + 2.0 * k2.dE[i] + 2.0 * k3.dE[i] + k4.dE[i]);
}

void check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("step must be positive");
}

// Number of grid steps k*step inside [0, t], tolerant to rounding.
long steps_within(double t, double step) {
  return static_cast<long>(std::floor(std::abs(t) / step + 1e-9));
}

// Integrates the coupled state on the grid k*step for k in [-back, fwd],
// returning samples in increasing t.
std::vector<State> integrate(const MetricChart& chart, const State& s0, long back, long fwd,
                             double step) {
  std::vector<State> out(static_cast<std::size_t>(back + fwd + 1));
  out[static_cast<std::size_t>(back)] = s0;
  for (int dir : {1, -1}) {
    State s = s0;
    long count = dir > 0 ? fwd : back;
    for (long k = 1; k <= count; ++k) {
      try {
        rk4(chart, s, dir * step);
        if (!s.x.allFinite() || !s.v.allFinite()) throw NumericError("non-finite state");
        if (!chart.is_minkowski()) check_signature(chart.at_unchecked(s.x).g);
      } catch (const NumericError& e) {
        throw NumericError("geodesic integration failed after t = " +
                           std::to_string(dir * (k - 1) * step) + ": " + e.what());
      }
      out[static_cast<std::size_t>(back + dir * k)] = s;
    }
  }
  return out;
}

}  // namespace

Curve geodesic_ivp(const MetricChart& chart, const Vec& x0, const Vec& v0, double t0, double t1,
                   double step) {
  check_step(step);
  const int d = chart.dim();
  if (x0.size() != d || v0.size() != d) throw ValidationError("initial data has the wrong dimension");
  if (t0 > 0.0 || t1 < 0.0) throw ValidationError("parameter span must contain t = 0");
  const long back = steps_within(t0, step), fwd = steps_within(t1, step);
  Curve c;
  c.reserve(static_cast<std::size_t>(back + fwd + 1));
  if (chart.is_minkowski()) {
    for (long k = -back; k <= fwd; ++k) {
      const double t = k * step;
      c.push_back({t, Vec(x0 + t * v0), v0});
    }
    return c;
  }
  check_signature(chart.at_unchecked(x0).g);
  State s0{x0, v0, {}};
  auto states = integrate(chart, s0, back, fwd, step);
  for (long k = -back; k <= fwd; ++k) {
    const State& s = states[static_cast<std::size_t>(k + back)];
    c.push_back({k * step, s.x, s.v});
  }
  return c;
}

NullDefect null_defect(const MetricChart& chart, const Curve& curve) {
  if (curve.empty()) throw ValidationError("null_defect needs a nonempty curve");
  NullDefect r;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const double q = inner(chart.at_unchecked(curve[k].x).g, curve[k].v, curve[k].v);
    if (k == 0) r.initial = q;
    r.max_abs = std::max(r.max_abs, std::abs(q));
    r.max_drift = std::max(r.max_drift, std::abs(q - r.initial));
  }
  return r;
}

std::vector<std::vector<Vec>> parallel_transport(const MetricChart& chart, const Curve& curve,
                                                 std::span<const Vec> V0, double step) {
  check_step(step);
  if (curve.empty()) throw ValidationError("parallel_transport needs a nonempty curve");
  auto zero = std::find_if(curve.begin(), curve.end(),
                           [&](const CurveSample& s) { return std::abs(s.t) < 0.5 * step; });
  if (zero == curve.end()) throw ValidationError("curve has no sample at t = 0");
  const long back = zero - curve.begin();
  const long fwd = static_cast<long>(curve.size()) - 1 - back;
  for (std::size_t k = 1; k < curve.size(); ++k)
    if (std::abs(curve[k].t - curve[k - 1].t - step) > 1e-9 * std::max(1.0, step))
      throw ValidationError("curve grid spacing does not match the transport step");
  State s0{zero->x, zero->v, std::vector<Vec>(V0.begin(), V0.end())};
  for (const Vec& e : s0.E)
    if (e.size() != chart.dim()) throw ValidationError("transported vector has the wrong dimension");
  std::vector<std::vector<Vec>> out;
  out.reserve(curve.size());
  if (chart.is_minkowski()) {
    for (std::size_t k = 0; k < curve.size(); ++k) out.push_back(s0.E);
    return out;
  }
  auto states = integrate(chart, s0, back, fwd, step);
  for (auto& s : states) out.push_back(std::move(s.E));
  return out;
}

std::vector<Vec> parallel_transport(const MetricChart& chart, const Curve& curve, const Vec& V0,
                                    double step) {
  auto all = parallel_transport(chart, curve, std::span<const Vec>(&V0, 1), step);
  std::vector<Vec> out;
  out.reserve(all.size());
  for (auto& s : all) out.push_back(std::move(s[0]));
  return out;
}

void geodesic_step(const MetricChart& chart, Vec& x, Vec& v, std::vector<Vec>& E, double h) {
  State s{x, v, E};
  rk4(chart, s, h);
  x = s.x;
  v = s.v;
  E = std::move(s.E);
}

Vec exp_map(const MetricChart& chart, const Vec& p, const Vec& v, double step) {
  check_step(step);
  if (p.size() != chart.dim() || v.size() != chart.dim())
    throw ValidationError("exp_map arguments have the wrong dimension");
  if (chart.is_minkowski()) return p + v;
  const long N = std::max(1L, std::lround(1.0 / step));
  const double h = 1.0 / static_cast<double>(N);
  State s{p, v, {}};
  for (long k = 0; k < N; ++k) {
    rk4(chart, s, h);
    if (!s.x.allFinite()) throw NumericError("exp_map integration produced non-finite values");
  }
  return s.x;
}

Vec curve_acceleration_at(const MetricChart& chart, const Curve& curve, std::size_t k) {
  const std::size_t N = curve.size();
  if (k == 0 || k + 1 >= N) throw ValidationError("curve_acceleration needs an interior sample");
  Vec dv;
  if (k >= 2 && k + 2 < N) {
    const double h = (curve[k + 2].t - curve[k - 2].t) / 4.0;
    dv = (-curve[k + 2].v + 8.0 * curve[k + 1].v - 8.0 * curve[k - 1].v + curve[k - 2].v) / (12.0 * h);
  } else {
    const double h = (curve[k + 1].t - curve[k - 1].t) / 2.0;
    dv = (curve[k + 1].v - curve[k - 1].v) / (2.0 * h);
  }
  if (chart.is_minkowski()) return dv;
  return dv + chart.christoffels(curve[k].x).contract(curve[k].v, curve[k].v);
}

Vec curve_acceleration(const MetricChart& chart, const Curve& curve, double t) {
  if (curve.size() < 3) throw ValidationError("curve_acceleration needs at least three samples");
  std::size_t best = 0;
  for (std::size_t k = 1; k < curve.size(); ++k)
    if (std::abs(curve[k].t - t) < std::abs(curve[best].t - t)) best = k;
  return curve_acceleration_at(chart, curve, best);
}

}  // namespace causal
