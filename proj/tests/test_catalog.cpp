#include <doctest.h>

#include <random>

#include "causal_locus/catalog.hpp"
#include "causal_locus/errors.hpp"
#include "support/oracles.hpp"

using namespace causal;

TEST_CASE("catalog lists the seven builtin examples") {
  std::vector<std::string> ids;
  for (const auto& e : catalog()) ids.push_back(e.id);
  CHECK(ids == std::vector<std::string>{"F1", "F2", "F3", "kobayashi", "lightcone", "lightplane", "perturbed"});
  CHECK(catalog_entry("F3").f == "y + x^3 + x^4 + y*x^5");
  CHECK_THROWS_AS(catalog_entry("F4"), ValidationError);
}

TEST_CASE("every entry passes its self-check") {
  for (const auto& e : catalog()) {
    const SelfCheck s = self_check(e);
    CHECK_MESSAGE(s.pass, e.id);
    if (s.applicable) {
      CHECK(s.max_rel_B <= 1e-11);
      CHECK(s.max_rel_A <= 1e-11);
    }
  }
  CHECK_FALSE(self_check(catalog_entry("perturbed")).applicable);
}

TEST_CASE("brute-force differentiation settles the printed F1 tail") {
  const oracle::Poly B = oracle::minkowski_B(oracle::f1());
  const oracle::Poly A = oracle::minkowski_A(oracle::f1());
  CHECK(oracle::max_abs_diff(B, oracle::printed_B1()) == 0.0);
  CHECK(oracle::max_abs_diff(A, oracle::printed_A1(false)) == 0.0);
  CHECK(oracle::max_abs_diff(A, oracle::printed_A1(true)) == 20.0);
  const std::vector<double> p{1.0, 1.0};
  CHECK(A.eval(p) == 84.0);
  CHECK(B.eval(p) == -84.0);
}

TEST_CASE("printed F3 polynomials and F2 leading factors") {
  CHECK(oracle::max_abs_diff(oracle::minkowski_B(oracle::f3()), oracle::printed_B3()) == 0.0);
  CHECK(oracle::max_abs_diff(oracle::minkowski_A(oracle::f3()), oracle::printed_A3()) == 0.0);
  const oracle::Poly B2 = oracle::minkowski_B(oracle::f2());
  const oracle::Poly A2 = oracle::minkowski_A(oracle::f2());
  CHECK(B2.min_degree_in(0) == 3);
  CHECK(A2.min_degree_in(0) == 4);
  CHECK(oracle::max_abs_diff(oracle::slice(B2, 3), oracle::Poly::constant(2, 2.0)) == 0.0);
  CHECK(oracle::max_abs_diff(oracle::slice(A2, 4), oracle::Poly::constant(2, 6.0)) == 0.0);
}

TEST_CASE("catalog surfaces match the exact polynomials at random points") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const std::vector<std::pair<std::string, oracle::Poly>> cases{
      {"F1", oracle::f1()}, {"F2", oracle::f2()}, {"F3", oracle::f3()}};
  for (const auto& [id, f] : cases) {
    const GraphSurface F = catalog_surface(catalog_entry(id));
    const oracle::Poly B = oracle::minkowski_B(f), A = oracle::minkowski_A(f);
    for (int k = 0; k < 20; ++k) {
      const std::vector<double> p{u(rng), u(rng)};
      const PointReport r = point_report(F, make_vec({p[0], p[1]}));
      CHECK(std::abs(r.B - B.eval(p)) <= 1e-12 * std::max(1.0, std::abs(B.eval(p))));
      CHECK(std::abs(r.A - A.eval(p)) <= 1e-12 * std::max(1.0, std::abs(A.eval(p))));
    }
  }
}

TEST_CASE("perturbed test metrics are admissible at the origin") {
  CHECK(perturbed_metric(0.1).is_admissible_at(Vec::Zero(3)).admissible);
  CHECK(g12_perturbed_metric(0.1).is_admissible_at(Vec::Zero(3)).admissible);
  const PointReport r = point_report(catalog_surface(catalog_entry("perturbed")), Vec::Zero(2));
  CHECK(is_lightlike(r.cls.type));
}
