#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "causal_locus/expr.hpp"
#include "causal_locus/jet.hpp"
#include "causal_locus/linalg.hpp"

namespace causal {

// Metric components and their first partials at one point.
struct MetricSample {
  Mat g;
  std::array<Mat, kMaxDim> dg;  // dg[k](i, j) = d g_ij / d x_k
};

// Gamma^c_{ab} stored as gamma[c](a, b).
struct Christoffels {
  int dim = 0;
  std::array<Mat, kMaxDim> gamma;

  double operator()(int c, int a, int b) const { return gamma[c](a, b); }
  // Gamma(u, w)^c = Gamma^c_{ab} u^a w^b.
  Vec contract(const Vec& u, const Vec& w) const;
  double max_abs() const;
};

struct AdmissibilityReport {
  double g00 = 0.0;         // |g00 + 1|
  double g0i = 0.0;         // max |g0i|, i >= 1
  double gjk = 0.0;         // max |gjk - delta_jk|, j,k >= 1
  double christoffel = 0.0;  // max |Gamma|
  double derivative = 0.0;   // max |d g|
  double tol = 0.0;
  bool admissible = false;
};

// A Lorentzian metric of signature (-,+,...,+) on one coordinate patch with
// coordinates x0..xn.
class MetricChart {
 public:
  enum class Kind { Minkowski, Components, Sampled, Pullback };

  using Sampler = std::function<MetricSample(const Vec&)>;

  static MetricChart minkowski(int n);
  // Component expressions over VarTable::spacetime(n), indexed g[i][j]; only
  // the upper triangle is read.
  static MetricChart from_components(int n, const std::vector<std::vector<Expr>>& g);
  // Parses "g00", "g01", ... from text; missing components default to the
  // Minkowski value.
  static MetricChart from_strings(int n, const std::vector<std::pair<std::string, std::string>>& g);
  // A metric known only through point samples (value and first derivatives).
  static MetricChart sampled(int n, Sampler sampler, std::string label);
  // Pullback along the affine map x = L y + b.
  static MetricChart pullback(const MetricChart& base, const Mat& L, const Vec& b);

  Kind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  int dim() const noexcept { return n_ + 1; }
  bool is_minkowski() const noexcept { return kind_ == Kind::Minkowski; }
  const std::string& label() const noexcept { return label_; }
  // Component expression g_ij for Kind::Components.
  const Expr& component(int i, int j) const;

  // Checked query: throws NumericError unless g(p) has signature (n, 1).
  MetricSample at(const Vec& p) const;
  MetricSample at_unchecked(const Vec& p) const;
  Mat g(const Vec& p) const { return at(p).g; }

  // g_ij(x(u)) as jets, where coords are the ambient coordinates expressed
  // as jets in some other variables u. Sampled charts support this only to
  // first order.
  std::vector<std::vector<Jet>> components_on(std::span<const Jet> coords) const;
  // True if components_on accepts jets of any order.
  bool supports_jets() const;

  Christoffels christoffels(const Vec& p) const;
  Christoffels christoffels(const MetricSample& s) const;

  AdmissibilityReport is_admissible_at(const Vec& p, double tol = 1e-9) const;

 private:
  MetricChart() = default;

  Kind kind_ = Kind::Minkowski;
  int n_ = 0;
  std::string label_;
  std::vector<Expr> comps_;  // row-major upper triangle
  Sampler sampler_;
  std::shared_ptr<const MetricChart> base_;
  Mat L_;
  Vec b_;
};

// Throws NumericError unless g is symmetric with one negative and n positive
// eigenvalues, none near zero.
void check_signature(const Mat& g);

// Metric inner product g(u, w).
inline double inner(const Mat& g, const Vec& u, const Vec& w) { return u.dot(g * w); }

Mat minkowski_eta(int dim);

}  // namespace causal
