#include <doctest.h>

#include <cmath>

#include "causal_locus/cksolver.hpp"
#include "causal_locus/errors.hpp"
#include "causal_locus/hypersurface.hpp"
#include "causal_locus/series.hpp"
#include "support/oracles.hpp"

using namespace causal;

namespace {

// Largest coefficient difference between a series and an exact polynomial,
// over the monomials the series carries.
double coeff_gap(const Jet& f, const oracle::Poly& want) {
  double worst = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    auto e = f.layout().exponents(k);
    worst = std::max(worst, std::abs(f[k] - want.coeff(std::vector<int>(e.begin(), e.end()))));
  }
  return worst;
}

oracle::Poly xn_poly(int n) { return oracle::Poly::var(n, n - 1); }

}  // namespace

TEST_CASE("lambda = 0 gives the light-like plane") {
  for (int n : {2, 3}) {
    const SeriesSurface s = build_lightlike(n, "0", 8);
    CHECK(coeff_gap(s.f, xn_poly(n)) == 0.0);
    CHECK(s.builder == "lightlike");
    CHECK(series_residual(s, std::nullopt).max_abs == 0.0);
  }
}

TEST_CASE("cone from its initial curve") {
  const SeriesSurface s2 = build_lightlike(2, "sqrt(1 + x1^2) - 1", 10);
  CHECK(coeff_gap(s2.f, oracle::cone_taylor(2, 10)) < 1e-11);
  CHECK(series_residual(s2, std::nullopt).max_abs < 1e-11);
  const SeriesSurface s3 = build_lightlike(3, "sqrt(1 + x1^2 + x2^2) - 1", 8);
  CHECK(coeff_gap(s3.f, oracle::cone_taylor(3, 8)) < 1e-11);
  CHECK(series_residual(s3, std::nullopt).max_abs < 1e-11);
}

TEST_CASE("quadratic initial curve gives an identically light-like series") {
  const SeriesSurface s = build_lightlike(2, "x1^2/2", 10);
  const SeriesResidual r = series_residual(s, std::nullopt);
  CHECK(r.target == "B");
  CHECK(r.valid_order == 9);
  CHECK(r.max_abs < 1e-12);
  CHECK_THROWS_AS(build_lightlike(2, "2*x1", 6), DomainError);
  CHECK_THROWS_AS(build_lightlike(2, "1 + x1^2", 6), ValidationError);
}

TEST_CASE("admissible builder: plane and Kobayashi") {
  for (int alpha : {0, 1, 2}) {
    const SeriesSurface p = build_admissible(2, "0", "0", "0", alpha, 8);
    CHECK(coeff_gap(p.f, xn_poly(2)) == 0.0);
  }
  const SeriesSurface k = build_admissible(2, "0", "x1", "0", 0, 12);
  CHECK(coeff_gap(k.f, oracle::kobayashi_taylor(12)) < 1e-10);
  CHECK(series_residual(k, parse("0", VarTable::domain(2))).max_abs < 1e-10);
}

TEST_CASE("degenerate admissible data") {
  const SeriesSurface s = build_admissible(2, "x1^2", "x1^2", "1", 0, 10);
  CHECK(series_residual(s, parse("1", VarTable::domain(2))).max_abs < 1e-10);
  CHECK(axis_defect(s) < 1e-10);
  const Lemma23Report l = lemma_2_3_check(GraphSurface(HeightFunction::series(s), MetricChart::minkowski(2)),
                                          Vec::Zero(2));
  CHECK(l.degenerate);
  // Kobayashi data (grad eta1 != 0): the axis is tanh(t), off by t^3/3.
  CHECK(axis_defect(build_admissible(2, "0", "x1", "0", 0, 8)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("corrupted coefficient is detected") {
  SeriesSurface s = build_lightlike(2, "sqrt(1 + x1^2) - 1", 10);
  s.f.set_coeff(std::vector<int>{2, 2}, s.f.coeff(std::vector<int>{2, 2}) + 1e-3);
  CHECK(series_residual(s, std::nullopt).max_abs > 1e-4);
  SeriesSurface k = build_admissible(2, "0", "x1", "0", 0, 10);
  k.f.set_coeff(std::vector<int>{1, 3}, k.f.coeff(std::vector<int>{1, 3}) + 1e-3);
  CHECK(series_residual(k, parse("0", VarTable::domain(2))).max_abs > 1e-4);
}

TEST_CASE("initial data round trip") {
  const VarTable v = VarTable::domain(3);
  const SeriesSurface s = build_admissible(3, "x1^2 - 0.5*x1*x2 + x2^3", "0.3*x1 + x2^2", "x1 - x3", 0, 9);
  const Jet eta0 = initial_value(s);
  const Jet eta1 = initial_slope(s);
  for (std::size_t k = 0; k < eta0.size(); ++k) {
    auto e = eta0.layout().exponents(k);
    const std::vector<int> a(e.begin(), e.end());
    const double want = a == std::vector<int>{2, 0, 0} ? 1.0 : a == std::vector<int>{1, 1, 0} ? -0.5
                        : a == std::vector<int>{0, 3, 0} ? 1.0 : 0.0;
    CHECK(eta0[k] == want);
  }
  for (std::size_t k = 0; k < eta1.size(); ++k) {
    auto e = eta1.layout().exponents(k);
    const std::vector<int> a(e.begin(), e.end());
    const double want = a == std::vector<int>{1, 0, 0} ? 0.3 : a == std::vector<int>{0, 2, 0} ? 1.0 : 0.0;
    CHECK(eta1[k] == doctest::Approx(want).epsilon(1e-15));
  }
  CHECK(eta1.order() == 8);
  CHECK(series_residual(s, parse("x1 - x3", v)).max_abs < 1e-10);
}

TEST_CASE("class inclusion: alpha = 1 surfaces satisfy the alpha = 0 relation with phi B") {
  const SeriesSurface s = build_admissible(2, "x1^2", "0.5*x1", "1 + x2", 1, 10);
  const SeriesResidual r1 = series_residual(s, parse("1 + x2", VarTable::domain(2)), 1);
  CHECK(r1.max_abs < 1e-10);
  const SurfaceJets J = minkowski_surface_jets(s.f);
  const Jet phi = parse("1 + x2", VarTable::domain(2)).eval(std::vector<Jet>{
      Jet::variable(0, 0.0, 2, J.B.order()), Jet::variable(1, 0.0, 2, J.B.order())});
  const SeriesResidual r0 = series_residual(s, phi * J.B, 0);
  CHECK(r0.valid_order == r1.valid_order);
  CHECK(r0.max_abs < 1e-10);
}

TEST_CASE("series JSON round trip is bit exact") {
  const SeriesSurface s = build_admissible(2, "x1^2", "x1^2", "1", 0, 8);
  const SeriesSurface t = series_from_json(to_json(s));
  CHECK(t.n == s.n);
  CHECK(t.order == s.order);
  CHECK(t.builder == s.builder);
  CHECK(t.inputs == s.inputs);
  for (std::size_t k = 0; k < s.f.size(); ++k) CHECK(t.f[k] == s.f[k]);
  CHECK_THROWS_AS(series_from_json("{"), ParseError);
  CHECK_THROWS_AS(series_from_json(R"({"n": 2, "order": 2, "coefficients": ["0x1p+0"]})"), ValidationError);
}

TEST_CASE("integration in one variable") {
  const Jet x = Jet::variable(0, 0.0, 2, 3), y = Jet::variable(1, 0.0, 2, 3);
  const Jet a = 1.0 + x * y + 3.0 * y * y;
  const Jet I = integrate(a, 1);
  CHECK(I.order() == 4);
  CHECK(I.coeff(std::vector<int>{0, 1}) == 1.0);
  CHECK(I.coeff(std::vector<int>{1, 2}) == 0.5);
  CHECK(I.coeff(std::vector<int>{0, 3}) == 1.0);
  CHECK((partial(I, 1) - a).max_abs() == 0.0);
}
