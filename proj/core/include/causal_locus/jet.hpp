#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace causal {

class Jet;

// Monomial enumeration shared by every jet with the same (nvars, order).
//
// Monomials are stored in graded-lexicographic order: first by total degree,
// then lexicographically descending in the exponent of x_0. For two
// variables the sequence is 1, x, y, x^2, xy, y^2, x^3, ...
class JetLayout {
 public:
  static std::shared_ptr<const JetLayout> get(int nvars, int order);

  int nvars() const noexcept { return nvars_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return degree_begin_.back(); }

  std::span<const int> exponents(std::size_t k) const {
    return {exponents_.data() + k * static_cast<std::size_t>(nvars_),
            static_cast<std::size_t>(nvars_)};
  }
  int degree(std::size_t k) const { return degree_[k]; }

  // First index of the block of monomials of total degree d (d <= order+1).
  std::size_t degree_begin(int d) const { return degree_begin_[d]; }

  // Index of the monomial with the given exponents, or -1 if its degree
  // exceeds the order.
  std::ptrdiff_t index_of(std::span<const int> alpha) const;

  // Index of alpha_k + e_var, or -1 if truncated.
  std::int32_t shift_index(std::size_t k, int var) const {
    return shift_[k * static_cast<std::size_t>(nvars_) + var];
  }

  // For k > 0, alpha_k = alpha_{parent(k)} + e_{parent_var(k)}. Used to build
  // monomial values incrementally.
  std::size_t parent(std::size_t k) const { return parent_[k]; }
  int parent_var(std::size_t k) const { return parent_var_[k]; }

  JetLayout(int nvars, int order);

 private:
  int nvars_;
  int order_;
  std::vector<int> exponents_;
  std::vector<int> degree_;
  std::vector<std::size_t> degree_begin_;
  // Monomials are keyed by sum_v alpha_v (order+1)^v, so the key of a
  // product is the sum of keys as long as the degree stays within order.
  std::vector<std::int64_t> key_;
  std::vector<std::int32_t> lookup_;

  friend class Jet;
  friend Jet operator*(const Jet& a, const Jet& b);
  std::vector<std::int32_t> shift_;
  std::vector<std::size_t> parent_;
  std::vector<int> parent_var_;
};

std::size_t binomial(int n, int k);

// Truncated multivariate Taylor expansion sum_{|alpha| <= order} c_alpha h^alpha
// about some base point. Values are immutable in spirit; arithmetic returns new
// jets and mixing jets of different shape throws ValidationError.
class Jet {
 public:
  Jet(int nvars, int order);

  static Jet constant(double c, int nvars, int order);
  // The coordinate function x_i expanded at base.
  static Jet variable(int i, double base, int nvars, int order);

  int nvars() const noexcept { return layout_->nvars(); }
  int order() const noexcept { return layout_->order(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const JetLayout& layout() const noexcept { return *layout_; }
  const std::shared_ptr<const JetLayout>& layout_ptr() const noexcept { return layout_; }

  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::span<double> coeffs() noexcept { return coeffs_; }
  double operator[](std::size_t k) const { return coeffs_[k]; }
  double& operator[](std::size_t k) { return coeffs_[k]; }

  double value() const { return coeffs_[0]; }
  double coeff(std::span<const int> alpha) const;
  void set_coeff(std::span<const int> alpha, double c);
  // Partial derivative of the represented function at the base point:
  // alpha! * c_alpha.
  double derivative(std::span<const int> alpha) const;
  // First-order partial d/dx_i at the base point.
  double gradient(int i) const;

  // Sum of c_alpha h^alpha for a displacement h.
  double evaluate(std::span<const double> h) const;

  Jet truncated(int new_order) const;
  Jet extended(int new_order) const;
  // Largest |c_alpha| over monomials with degree <= max_degree.
  double max_abs(int max_degree) const;
  double max_abs() const { return max_abs(order()); }
  bool is_constant() const;

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  Jet& operator+=(double c);
  Jet& operator-=(double c);
  Jet& operator*=(double c);
  Jet& operator/=(double c);
  Jet operator-() const;

 private:
  explicit Jet(std::shared_ptr<const JetLayout> layout);
  void require_same_shape(const Jet& other, const char* op) const;

  std::shared_ptr<const JetLayout> layout_;
  std::vector<double> coeffs_;

  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet partial(const Jet& a, int i);
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double c);
Jet operator+(double c, Jet a);
Jet operator-(Jet a, double c);
Jet operator-(double c, const Jet& a);
Jet operator*(Jet a, double c);
Jet operator*(double c, Jet a);
Jet operator/(Jet a, double c);
Jet operator/(double c, const Jet& a);

// Formal partial derivative; the result has order one less than the input.
Jet partial(const Jet& a, int i);

// Univariate analytic kernels applied through the Taylor expansion of the
// kernel at the constant term of the argument.
enum class Kernel { Sqrt, Exp, Log, Sin, Cos, Tanh, Pow, Reciprocal };

// Taylor coefficients f^(k)(a0)/k!, k = 0..order, of a kernel at a0.
std::vector<double> kernel_taylor(Kernel kernel, double a0, int order, double exponent = 0.0);

Jet compose(Kernel kernel, const Jet& a, double exponent = 0.0);

Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet tanh(const Jet& a);
Jet pow(const Jet& a, double exponent);
Jet reciprocal(const Jet& a);
// Integer power by repeated squaring; negative exponents go through
// reciprocal().
Jet ipow(const Jet& a, int exponent);

// Polynomial substitution p(args_0, ..., args_{m-1}) where p is a jet in m
// variables read as a polynomial in the displacement. All args share one
// shape, which is the shape of the result.
Jet substitute(const Jet& p, std::span<const Jet> args);

}  // namespace causal
