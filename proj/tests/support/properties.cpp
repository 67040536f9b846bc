#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "causal_locus/catalog.hpp"
#include "causal_locus/geodesic.hpp"
#include "causal_locus/jet.hpp"

namespace props {

using namespace causal;

namespace {

Jet random_jet(std::mt19937_64& rng, int nvars, int order) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Jet a(nvars, order);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = u(rng);
  return a;
}

}  // namespace

double jet_product_rule(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int nvars = 1 + t % 3, order = 3 + t % 6;
    const Jet a = random_jet(rng, nvars, order), b = random_jet(rng, nvars, order);
    for (int i = 0; i < nvars; ++i) {
      const Jet lhs = partial(a * b, i);
      const Jet rhs = partial(a, i) * b.truncated(order - 1) + a.truncated(order - 1) * partial(b, i);
      worst = std::max(worst, (lhs - rhs).max_abs() / std::max(1.0, lhs.max_abs()));
    }
  }
  return worst;
}

double jet_sqrt_square(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c0(-0.45, 0.45);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int nvars = 1 + t % 3, order = 2 + t % 8;
    Jet p = random_jet(rng, nvars, order);
    p[0] = 1.0 + c0(rng);
    const Jet s = sqrt(p);
    worst = std::max(worst, (s * s - p).max_abs() / std::max(1.0, p.max_abs()));
  }
  return worst;
}

std::vector<GraphSurface> random_surfaces(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<GraphSurface> out;
  for (int s = 0; s < count; ++s) {
    std::ostringstream f;
    f.precision(17);
    f << "x2";
    for (int deg = 2; deg <= 3; ++deg)
      for (int i = 0; i <= deg; ++i) f << " + (" << u(rng) << ")*x1^" << i << "*x2^" << deg - i;
    const MetricChart g = s % 2 == 0 ? MetricChart::minkowski(2) : perturbed_metric(0.1);
    out.emplace_back(HeightFunction::parse(2, f.str()), g);
  }
  return out;
}

std::vector<Vec> random_points(std::uint64_t seed, int count, int n, double half_width) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-half_width, half_width);
  std::vector<Vec> out;
  for (int k = 0; k < count; ++k) {
    Vec p(n);
    for (int i = 0; i < n; ++i) p(i) = u(rng);
    out.push_back(p);
  }
  return out;
}

double nu_norm_identity(std::uint64_t seed, int points) {
  const auto surfaces = random_surfaces(seed, 10);
  const auto pts = random_points(seed + 1, points, 2, 0.3);
  double worst = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const GraphSurface& F = surfaces[k % surfaces.size()];
    const PointReport r = point_report(F, pts[k]);
    const Mat g = F.ambient.g(F.lift(pts[k]));
    // g(nu, nu) = det(g) B; the unimodular charts (Minkowski) give -B.
    const double want = g.determinant() * r.B;
    worst = std::max(worst, std::abs(inner(g, r.nu, r.nu) - want) / (1.0 + std::abs(r.B)));
  }
  return worst;
}

double cofactor_identity(std::uint64_t seed, int points) {
  const auto surfaces = random_surfaces(seed, 10);
  const auto pts = random_points(seed + 1, points, 2, 0.3);
  double worst = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const GraphSurface& F = surfaces[k % surfaces.size()];
    const PointReport r = point_report(F, pts[k]);
    const Mat I = Mat::Identity(2, 2);
    const double scale = 1.0 + r.S.cwiseAbs().maxCoeff() * r.S.cwiseAbs().maxCoeff();
    worst = std::max(worst, (r.Scof * r.S - r.B * I).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

namespace {

// Null or time-like initial data at random points near the origin.
void random_ivp(std::mt19937_64& rng, const MetricChart& g, Vec& x0, Vec& v0, bool null) {
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  x0 = Vec(3);
  for (int i = 0; i < 3; ++i) x0(i) = u(rng);
  const Mat G = g.g(x0);
  Vec w(3);
  w << 0.0, 0.6 + u(rng), 0.5 + u(rng);
  // Solve for v0 = (s, w1, w2) with g(v0, v0) = 0 or -1.
  const double target = null ? 0.0 : -1.0;
  const double a = G(0, 0), b = G(0, 1) * w(1) + G(0, 2) * w(2);
  const double c = w.tail(2).dot(G.bottomRightCorner(2, 2) * w.tail(2)) - target;
  const double s = (-b - std::sqrt(b * b - a * c)) / a;
  v0 = w;
  v0(0) = s;
}

}  // namespace

double geodesic_energy_drift(std::uint64_t seed, int curves) {
  std::mt19937_64 rng(seed);
  const MetricChart g = perturbed_metric(0.1);
  double worst = 0.0;
  for (int k = 0; k < curves; ++k) {
    Vec x0, v0;
    random_ivp(rng, g, x0, v0, k % 2 == 0);
    const Curve c = geodesic_ivp(g, x0, v0, 0.0, 2.0, 1e-3);
    worst = std::max(worst, null_defect(g, c).max_drift);
  }
  return worst;
}

double transport_inner_product_drift(std::uint64_t seed, int curves) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const MetricChart g = perturbed_metric(0.1);
  double worst = 0.0;
  for (int k = 0; k < curves; ++k) {
    Vec x0, v0;
    random_ivp(rng, g, x0, v0, k % 2 == 0);
    const Curve c = geodesic_ivp(g, x0, v0, 0.0, 2.0, 1e-3);
    std::vector<Vec> V0;
    for (int j = 0; j < 3; ++j) V0.push_back(make_vec({u(rng), u(rng), u(rng)}));
    const auto V = parallel_transport(g, c, V0, 1e-3);
    const Mat G0 = g.g(c.front().x);
    for (std::size_t s = 0; s < c.size(); ++s) {
      const Mat G = g.g(c[s].x);
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b)
          worst = std::max(worst, std::abs(inner(G, V[s][a], V[s][b]) - inner(G0, V0[a], V0[b])));
    }
  }
  return worst;
}

double rk4_order_ratio() {
  const MetricChart g = perturbed_metric(0.1);
  const Vec x0 = make_vec({0.0, 0.3, -0.2});
  const Vec v0 = make_vec({1.5, 0.7, 0.9});
  auto end = [&](double h) { return geodesic_ivp(g, x0, v0, 0.0, 1.0, h).back().x; };
  const Vec ref = end(0.2 / 64);
  const double e1 = (end(0.2) - ref).norm(), e2 = (end(0.1) - ref).norm();
  return e1 / e2;
}

}  // namespace props
