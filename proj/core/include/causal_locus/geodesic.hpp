#pragma once

#include <span>
#include <vector>

#include "causal_locus/linalg.hpp"
#include "causal_locus/metric.hpp"

namespace causal {

struct CurveSample {
  double t = 0.0;
  Vec x;
  Vec v;
};

using Curve = std::vector<CurveSample>;

// Affinely parametrized geodesic with x(0) = x0, x'(0) = v0, sampled at
// t = k * step for every k with t in [t0, t1] (t0 <= 0 <= t1). Classical
// RK4 with fixed step; the builtin Minkowski chart returns the exact line.
// If the metric degenerates mid-integration the NumericError names the last
// good parameter value.
Curve geodesic_ivp(const MetricChart& chart, const Vec& x0, const Vec& v0, double t0, double t1,
                   double step = 1e-3);

struct NullDefect {
  double max_abs = 0.0;    // max |g(v, v)|
  double max_drift = 0.0;  // max |g(v, v) - g(v(t_first), v(t_first))|
  double initial = 0.0;
};

NullDefect null_defect(const MetricChart& chart, const Curve& curve);

// Parallel transport of each vector in V0 (given at the sample with t = 0)
// along a curve produced by geodesic_ivp. Result is indexed [sample][vector].
std::vector<std::vector<Vec>> parallel_transport(const MetricChart& chart, const Curve& curve,
                                                 std::span<const Vec> V0, double step);
std::vector<Vec> parallel_transport(const MetricChart& chart, const Curve& curve, const Vec& V0,
                                    double step);

// One RK4 step of the coupled system x' = v, v' = -Gamma(v, v),
// E_k' = -Gamma(v, E_k). Used to reach off-grid parameters smoothly.
void geodesic_step(const MetricChart& chart, Vec& x, Vec& v, std::vector<Vec>& E, double h);

// Endpoint of the unit-time geodesic from p with velocity v, using
// round(1/step) RK4 steps.
Vec exp_map(const MetricChart& chart, const Vec& p, const Vec& v, double step = 1e-3);

// D_t x' = dv/dt + Gamma(v, v) at the sample closest to t, with dv/dt from
// centered differences of the stored velocities (fourth order where two
// neighbours exist on each side).
Vec curve_acceleration(const MetricChart& chart, const Curve& curve, double t);
Vec curve_acceleration_at(const MetricChart& chart, const Curve& curve, std::size_t k);

}  // namespace causal
