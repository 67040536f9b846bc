#include "causal_locus/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "causal_locus/errors.hpp"

namespace causal {

namespace {

void enumerate_degree(int nvars, int var, int remaining, std::vector<int>& alpha,
                      std::vector<int>& out) {
  if (var == nvars - 1) {
    alpha[var] = remaining;
    out.insert(out.end(), alpha.begin(), alpha.end());
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    alpha[var] = a;
    enumerate_degree(nvars, var + 1, remaining - a, alpha, out);
  }
  alpha[var] = 0;
}

}  // namespace

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

JetLayout::JetLayout(int nvars, int order) : nvars_(nvars), order_(order) {
  if (nvars < 1) throw ValidationError("jet needs at least one variable");
  if (order < 0) throw ValidationError("jet order must be non-negative");

  std::int64_t radix = order + 1;
  std::int64_t table = 1;
  for (int v = 0; v < nvars; ++v) {
    table *= radix;
    if (table > 50'000'000) throw ValidationError("jet shape too large");
  }

  std::vector<int> alpha(static_cast<std::size_t>(nvars), 0);
  degree_begin_.push_back(0);
  for (int d = 0; d <= order; ++d) {
    enumerate_degree(nvars, 0, d, alpha, exponents_);
    degree_begin_.push_back(exponents_.size() / static_cast<std::size_t>(nvars));
  }
  const std::size_t count = size();

  degree_.resize(count);
  key_.resize(count);
  lookup_.assign(static_cast<std::size_t>(table), -1);
  for (std::size_t k = 0; k < count; ++k) {
    auto e = exponents(k);
    int deg = 0;
    std::int64_t key = 0, scale = 1;
    for (int v = 0; v < nvars; ++v) {
      deg += e[v];
      key += e[v] * scale;
      scale *= radix;
    }
    degree_[k] = deg;
    key_[k] = key;
    lookup_[static_cast<std::size_t>(key)] = static_cast<std::int32_t>(k);
  }

  shift_.assign(count * static_cast<std::size_t>(nvars), -1);
  parent_.assign(count, 0);
  parent_var_.assign(count, -1);
  for (std::size_t k = 0; k < count; ++k) {
    std::int64_t scale = 1;
    for (int v = 0; v < nvars; ++v, scale *= radix) {
      if (degree_[k] < order) {
        auto target = lookup_[static_cast<std::size_t>(key_[k] + scale)];
        shift_[k * static_cast<std::size_t>(nvars) + v] = target;
        // The first variable found while walking parents in index order
        // gives each monomial a unique parent.
        if (parent_var_[static_cast<std::size_t>(target)] < 0) {
          parent_[static_cast<std::size_t>(target)] = k;
          parent_var_[static_cast<std::size_t>(target)] = v;
        }
      }
    }
  }
}

std::shared_ptr<const JetLayout> JetLayout::get(int nvars, int order) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetLayout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, order}];
  if (!slot) slot = std::make_shared<const JetLayout>(nvars, order);
  return slot;
}

std::ptrdiff_t JetLayout::index_of(std::span<const int> alpha) const {
  if (alpha.size() != static_cast<std::size_t>(nvars_))
    throw ValidationError("multi-index has " + std::to_string(alpha.size()) +
                          " entries, jet has " + std::to_string(nvars_) + " variables");
  int deg = 0;
  std::int64_t key = 0, scale = 1;
  for (int v = 0; v < nvars_; ++v) {
    if (alpha[v] < 0) throw ValidationError("negative exponent in multi-index");
    deg += alpha[v];
    key += alpha[v] * scale;
    scale *= order_ + 1;
  }
  if (deg > order_) return -1;
  return lookup_[static_cast<std::size_t>(key)];
}

Jet::Jet(std::shared_ptr<const JetLayout> layout)
    : layout_(std::move(layout)), coeffs_(layout_->size(), 0.0) {}

Jet::Jet(int nvars, int order) : Jet(JetLayout::get(nvars, order)) {}

Jet Jet::constant(double c, int nvars, int order) {
  Jet j(nvars, order);
  j.coeffs_[0] = c;
  return j;
}

Jet Jet::variable(int i, double base, int nvars, int order) {
  if (i < 0 || i >= nvars)
    throw ValidationError("variable index " + std::to_string(i) + " out of range for " +
                          std::to_string(nvars) + " variables");
  Jet j(nvars, order);
  j.coeffs_[0] = base;
  if (order >= 1) j.coeffs_[1 + static_cast<std::size_t>(i)] = 1.0;
  return j;
}

double Jet::coeff(std::span<const int> alpha) const {
  auto k = layout_->index_of(alpha);
  return k < 0 ? 0.0 : coeffs_[static_cast<std::size_t>(k)];
}

void Jet::set_coeff(std::span<const int> alpha, double c) {
  auto k = layout_->index_of(alpha);
  if (k < 0) throw ValidationError("multi-index exceeds jet order");
  coeffs_[static_cast<std::size_t>(k)] = c;
}

double Jet::derivative(std::span<const int> alpha) const {
  double fact = 1.0;
  for (int a : alpha)
    for (int m = 2; m <= a; ++m) fact *= m;
  return coeff(alpha) * fact;
}

double Jet::gradient(int i) const {
  if (i < 0 || i >= nvars()) throw ValidationError("gradient index out of range");
  if (order() < 1) throw ValidationError("gradient needs a jet of order >= 1");
  return coeffs_[1 + static_cast<std::size_t>(i)];
}

double Jet::evaluate(std::span<const double> h) const {
  const auto& L = *layout_;
  if (h.size() != static_cast<std::size_t>(nvars()))
    throw ValidationError("displacement dimension mismatch");
  std::vector<double> mono(size());
  mono[0] = 1.0;
  double sum = coeffs_[0];
  for (std::size_t k = 1; k < size(); ++k) {
    mono[k] = mono[L.parent(k)] * h[static_cast<std::size_t>(L.parent_var(k))];
    sum += coeffs_[k] * mono[k];
  }
  return sum;
}

Jet Jet::truncated(int new_order) const {
  if (new_order > order()) throw ValidationError("truncation cannot raise the order");
  if (new_order < 0) throw ValidationError("jet order must be non-negative");
  Jet r(nvars(), new_order);
  std::copy_n(coeffs_.begin(), r.size(), r.coeffs_.begin());
  return r;
}

Jet Jet::extended(int new_order) const {
  if (new_order < order()) return truncated(new_order);
  Jet r(nvars(), new_order);
  std::copy(coeffs_.begin(), coeffs_.end(), r.coeffs_.begin());
  return r;
}

double Jet::max_abs(int max_degree) const {
  max_degree = std::min(max_degree, order());
  if (max_degree < 0) return 0.0;
  double m = 0.0;
  for (std::size_t k = 0; k < layout_->degree_begin(max_degree + 1); ++k)
    m = std::max(m, std::abs(coeffs_[k]));
  return m;
}

bool Jet::is_constant() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](double c) { return c == 0.0; });
}

void Jet::require_same_shape(const Jet& other, const char* op) const {
  if (layout_ != other.layout_)
    throw ValidationError(std::string("jet shape mismatch in ") + op + ": (" +
                          std::to_string(nvars()) + "," + std::to_string(order()) + ") vs (" +
                          std::to_string(other.nvars()) + "," + std::to_string(other.order()) +
                          ")");
}

Jet& Jet::operator+=(const Jet& other) {
  require_same_shape(other, "+");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  require_same_shape(other, "-");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& other) {
  *this = *this * other;
  return *this;
}

Jet& Jet::operator+=(double c) {
  coeffs_[0] += c;
  return *this;
}

Jet& Jet::operator-=(double c) {
  coeffs_[0] -= c;
  return *this;
}

Jet& Jet::operator*=(double c) {
  for (double& x : coeffs_) x *= c;
  return *this;
}

Jet& Jet::operator/=(double c) {
  if (c == 0.0) throw DomainError("division of a jet by zero");
  for (double& x : coeffs_) x /= c;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& x : r.coeffs_) x = -x;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_same_shape(b, "*");
  const JetLayout& L = *a.layout_;
  Jet r(a.layout_);
  const int d = L.order();
  const double* ac = a.coeffs_.data();
  const double* bc = b.coeffs_.data();
  double* rc = r.coeffs_.data();
  const std::int64_t* key = L.key_.data();
  const std::int32_t* lookup = L.lookup_.data();
  for (std::size_t i = 0; i < L.size(); ++i) {
    const double ai = ac[i];
    if (ai == 0.0) continue;
    const std::size_t jend = L.degree_begin(d - L.degree(i) + 1);
    const std::int64_t ki = key[i];
    for (std::size_t j = 0; j < jend; ++j) {
      const double bj = bc[j];
      if (bj == 0.0) continue;
      rc[lookup[ki + key[j]]] += ai * bj;
    }
  }
  return r;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
Jet operator+(Jet a, double c) { return a += c; }
Jet operator+(double c, Jet a) { return a += c; }
Jet operator-(Jet a, double c) { return a -= c; }
Jet operator-(double c, const Jet& a) { return (-a) += c; }
Jet operator*(Jet a, double c) { return a *= c; }
Jet operator*(double c, Jet a) { return a *= c; }
Jet operator/(Jet a, double c) { return a /= c; }
Jet operator/(double c, const Jet& a) { return reciprocal(a) *= c; }

Jet partial(const Jet& a, int i) {
  if (a.order() < 1) throw ValidationError("partial derivative of an order-0 jet");
  if (i < 0 || i >= a.nvars()) throw ValidationError("partial derivative index out of range");
  const JetLayout& L = a.layout();
  Jet r(a.nvars(), a.order() - 1);
  for (std::size_t k = 0; k < r.size(); ++k) {
    auto src = L.shift_index(k, i);
    r.coeffs_[k] = (L.exponents(k)[static_cast<std::size_t>(i)] + 1) *
                   a.coeffs_[static_cast<std::size_t>(src)];
  }
  return r;
}

std::vector<double> kernel_taylor(Kernel kernel, double a0, int order, double exponent) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  auto need_positive = [&](const char* name) {
    if (!(a0 > 0.0) && !(order == 0 && a0 == 0.0))
      throw DomainError(std::string(name) + " needs a positive constant term, got " +
                        std::to_string(a0));
  };
  switch (kernel) {
    case Kernel::Sqrt:
      exponent = 0.5;
      need_positive("sqrt");
      [[fallthrough]];
    case Kernel::Pow: {
      if (kernel == Kernel::Pow) need_positive("pow");
      c[0] = std::pow(a0, exponent);
      for (int k = 1; k <= order; ++k) c[k] = c[k - 1] * (exponent - k + 1) / (k * a0);
      break;
    }
    case Kernel::Reciprocal: {
      if (a0 == 0.0) throw DomainError("reciprocal of a jet with zero constant term");
      c[0] = 1.0 / a0;
      for (int k = 1; k <= order; ++k) c[k] = -c[k - 1] / a0;
      break;
    }
    case Kernel::Exp: {
      c[0] = std::exp(a0);
      for (int k = 1; k <= order; ++k) c[k] = c[k - 1] / k;
      break;
    }
    case Kernel::Log: {
      if (!(a0 > 0.0))
        throw DomainError("log needs a positive constant term, got " + std::to_string(a0));
      c[0] = std::log(a0);
      double p = 1.0;
      for (int k = 1; k <= order; ++k) {
        p /= a0;
        c[k] = ((k % 2 == 1) ? p : -p) / k;
      }
      break;
    }
    case Kernel::Sin:
    case Kernel::Cos: {
      // Derivatives cycle through sin, cos, -sin, -cos.
      const double s = std::sin(a0), co = std::cos(a0);
      const double cyc_sin[4] = {s, co, -s, -co};
      const double cyc_cos[4] = {co, -s, -co, s};
      const double* cyc = kernel == Kernel::Sin ? cyc_sin : cyc_cos;
      double fact = 1.0;
      for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        c[k] = cyc[k % 4] / fact;
      }
      break;
    }
    case Kernel::Tanh: {
      // T' = 1 - T^2 gives (k+1) T_{k+1} = [k == 0] - sum_{j<=k} T_j T_{k-j}.
      c[0] = std::tanh(a0);
      for (int k = 0; k < order; ++k) {
        double s = (k == 0) ? 1.0 : 0.0;
        for (int j = 0; j <= k; ++j) s -= c[j] * c[k - j];
        c[k + 1] = s / (k + 1);
      }
      break;
    }
  }
  return c;
}

Jet compose(Kernel kernel, const Jet& a, double exponent) {
  const double a0 = a.value();
  auto c = kernel_taylor(kernel, a0, a.order(), exponent);
  Jet delta = a;
  delta[0] = 0.0;
  Jet r = Jet::constant(c.back(), a.nvars(), a.order());
  for (int k = a.order() - 1; k >= 0; --k) {
    r = r * delta;
    r[0] += c[static_cast<std::size_t>(k)];
  }
  return r;
}

Jet sqrt(const Jet& a) { return compose(Kernel::Sqrt, a); }
Jet exp(const Jet& a) { return compose(Kernel::Exp, a); }
Jet log(const Jet& a) { return compose(Kernel::Log, a); }
Jet sin(const Jet& a) { return compose(Kernel::Sin, a); }
Jet cos(const Jet& a) { return compose(Kernel::Cos, a); }
Jet tanh(const Jet& a) { return compose(Kernel::Tanh, a); }
Jet pow(const Jet& a, double exponent) { return compose(Kernel::Pow, a, exponent); }
Jet reciprocal(const Jet& a) { return compose(Kernel::Reciprocal, a); }

Jet ipow(const Jet& a, int exponent) {
  if (exponent < 0) return reciprocal(ipow(a, -exponent));
  Jet result = Jet::constant(1.0, a.nvars(), a.order());
  Jet base = a;
  unsigned e = static_cast<unsigned>(exponent);
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Jet substitute(const Jet& p, std::span<const Jet> args) {
  if (args.size() != static_cast<std::size_t>(p.nvars()))
    throw ValidationError("substitute: expected " + std::to_string(p.nvars()) + " arguments, got " +
                          std::to_string(args.size()));
  if (args.empty()) throw ValidationError("substitute: no arguments");
  const int nv = args[0].nvars(), ord = args[0].order();
  for (const Jet& g : args)
    if (g.nvars() != nv || g.order() != ord)
      throw ValidationError("substitute: argument jets differ in shape");

  const JetLayout& L = p.layout();
  std::vector<Jet> mono;
  mono.reserve(L.size());
  mono.push_back(Jet::constant(1.0, nv, ord));
  Jet r = Jet::constant(p[0], nv, ord);
  for (std::size_t k = 1; k < L.size(); ++k) {
    mono.push_back(mono[L.parent(k)] * args[static_cast<std::size_t>(L.parent_var(k))]);
    if (p[k] != 0.0) r += p[k] * mono.back();
  }
  return r;
}

}  // namespace causal
