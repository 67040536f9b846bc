#include <doctest.h>

#include <cmath>

#include "causal_locus/catalog.hpp"
#include "causal_locus/errors.hpp"
#include "causal_locus/geodesic.hpp"
#include "support/properties.hpp"

using namespace causal;

TEST_CASE("Minkowski null line") {
  const MetricChart m = MetricChart::minkowski(2);
  const Curve c = geodesic_ivp(m, Vec::Zero(3), make_vec({1, 0, 1}), -0.5, 1.0, 0.01);
  CHECK(c.size() == 151);
  for (const auto& s : c) CHECK((s.x - make_vec({s.t, 0, s.t})).cwiseAbs().maxCoeff() < 1e-14);
  const NullDefect d = null_defect(m, c);
  CHECK(d.max_abs == 0.0);
  CHECK(d.max_drift == 0.0);
}

TEST_CASE("Minkowski time-like line keeps g(v, v) = -1") {
  const MetricChart m = MetricChart::minkowski(2);
  const NullDefect d = null_defect(m, geodesic_ivp(m, Vec::Zero(3), make_vec({1, 0, 0}), 0.0, 1.0));
  CHECK(d.initial == -1.0);
  CHECK(d.max_abs == 1.0);
  CHECK(d.max_drift == 0.0);
}

TEST_CASE("perturbed geodesic: acceleration, reversal and null conservation") {
  const MetricChart g = perturbed_metric(0.1);
  const Vec x0 = make_vec({0.0, 0.1, -0.1});
  const Vec v0 = make_vec({1.0, 0.6, 0.8});
  const Curve c = geodesic_ivp(g, x0, v0, 0.0, 1.0, 1e-3);
  for (std::size_t k = 2; k + 2 < c.size(); k += 50) CHECK(curve_acceleration_at(g, c, k).norm() < 1e-6);
  CHECK(curve_acceleration(g, c, 0.5).norm() < 1e-6);

  const Curve r = geodesic_ivp(g, x0, -v0, -1.0, 0.0, 1e-3);
  REQUIRE(r.size() == c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const CurveSample& a = c[k];
    const CurveSample& b = r[r.size() - 1 - k];
    CHECK(b.t == doctest::Approx(-a.t));
    CHECK((a.x - b.x).norm() < 1e-12);
  }

  // Null initial data on this chart.
  const Vec p = Vec::Zero(3);
  const Curve n = geodesic_ivp(g, p, make_vec({1, 0, 1}), 0.0, 1.0, 1e-3);
  CHECK(null_defect(g, n).max_abs < 1e-8);
}

TEST_CASE("parallel transport") {
  const MetricChart m = MetricChart::minkowski(2);
  const Curve c = geodesic_ivp(m, Vec::Zero(3), make_vec({1, 0.5, 0.5}), 0.0, 1.0, 1e-2);
  const auto V = parallel_transport(m, c, make_vec({0.3, -1.0, 2.0}), 1e-2);
  for (const Vec& v : V) CHECK((v - make_vec({0.3, -1.0, 2.0})).norm() == 0.0);

  const MetricChart g = perturbed_metric(0.1);
  const Curve s = geodesic_ivp(g, make_vec({0.0, 0.2, 0.0}), make_vec({1.2, 0.3, 0.9}), 0.0, 1.0, 1e-3);
  const auto W = parallel_transport(g, s, s.front().v, 1e-3);
  double worst = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) worst = std::max(worst, (W[k] - s[k].v).cwiseAbs().maxCoeff());
  CHECK(worst < 1e-8);

  const auto U = parallel_transport(g, s, make_vec({0.1, 1.0, -0.5}), 1e-3);
  const double n0 = inner(g.g(s.front().x), U.front(), U.front());
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(std::abs(inner(g.g(s[k].x), U[k], U[k]) - n0) < 1e-8);
}

TEST_CASE("exponential map") {
  const MetricChart m = MetricChart::minkowski(2);
  const Vec p = make_vec({0.1, 0.2, 0.3}), v = make_vec({0.5, -0.3, 0.2});
  CHECK((exp_map(m, p, v) - (p + v)).norm() < 1e-14);
  const MetricChart g = perturbed_metric(0.1);
  CHECK((exp_map(g, p, Vec::Zero(3)) - p).norm() == 0.0);
  const Curve c = geodesic_ivp(g, p, v, 0.0, 0.5, 1e-3);
  CHECK((exp_map(g, p, 0.5 * v, 1e-3) - c.back().x).norm() < 1e-9);
}

TEST_CASE("acceleration of non-geodesic curves") {
  const MetricChart m = MetricChart::minkowski(2);
  Curve circle;
  for (int k = 0; k <= 1000; ++k) {
    const double t = k * 1e-3;
    circle.push_back({t, make_vec({0.0, std::cos(t), std::sin(t)}), make_vec({0.0, -std::sin(t), std::cos(t)})});
  }
  for (double t : {0.1, 0.5, 0.9}) {
    const Vec a = curve_acceleration(m, circle, t);
    CHECK((a + make_vec({0.0, std::cos(t), std::sin(t)})).norm() < 1e-6);
  }
  Curve line;
  for (int k = 0; k <= 1000; ++k) {
    const double t = k * 1e-3;
    line.push_back({t, make_vec({std::exp(t), 0.0, 0.0}), make_vec({std::exp(t), 0.0, 0.0})});
  }
  const Vec a = curve_acceleration(m, line, 0.5);
  CHECK(a(0) == doctest::Approx(std::exp(0.5)).epsilon(1e-8));
  CHECK(std::abs(a(1)) + std::abs(a(2)) == 0.0);
}

TEST_CASE("conservation and convergence order") {
  CHECK(props::geodesic_energy_drift(41, 8) < 1e-8);
  CHECK(props::transport_inner_product_drift(42, 6) < 1e-8);
  const double ratio = props::rk4_order_ratio();
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("geodesic errors") {
  const MetricChart m = MetricChart::minkowski(2);
  CHECK_THROWS_AS(geodesic_ivp(m, Vec::Zero(3), make_vec({1, 0, 1}), 0.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(geodesic_ivp(m, Vec::Zero(2), make_vec({1, 0}), 0.0, 1.0), ValidationError);
  const MetricChart z = MetricChart::from_strings(2, {{"g11", "1 - x0"}});
  CHECK_THROWS_AS(geodesic_ivp(z, Vec::Zero(3), make_vec({1, 0, 0}), 0.0, 2.0, 1e-2), NumericError);
}
