#pragma once

// Reference computations that avoid the library's jet and expression code:
// exact polynomial arithmetic on sparse coefficient maps, closed series, and
// finite-difference Christoffel symbols.

#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "causal_locus/linalg.hpp"
#include "causal_locus/metric.hpp"

namespace oracle {

using causal::Mat;
using causal::Vec;

struct Poly {
  int nvars = 2;
  std::map<std::vector<int>, double> c;

  static Poly constant(int nvars, double v) {
    Poly p{nvars, {}};
    if (v != 0.0) p.c[std::vector<int>(static_cast<std::size_t>(nvars), 0)] = v;
    return p;
  }
  static Poly var(int nvars, int i) {
    Poly p{nvars, {}};
    std::vector<int> a(static_cast<std::size_t>(nvars), 0);
    a[static_cast<std::size_t>(i)] = 1;
    p.c[a] = 1.0;
    return p;
  }
  double coeff(const std::vector<int>& a) const {
    auto it = c.find(a);
    return it == c.end() ? 0.0 : it->second;
  }
  int min_degree_in(int v) const {
    int m = 1 << 20;
    for (const auto& [a, x] : c)
      if (x != 0.0) m = std::min(m, a[static_cast<std::size_t>(v)]);
    return m;
  }
  double eval(std::span<const double> x) const {
    double s = 0.0;
    for (const auto& [a, v] : c) {
      double t = v;
      for (std::size_t i = 0; i < a.size(); ++i) t *= std::pow(x[i], a[i]);
      s += t;
    }
    return s;
  }
};

inline Poly operator+(Poly a, const Poly& b) {
  for (const auto& [k, v] : b.c) a.c[k] += v;
  return a;
}
inline Poly operator*(double s, Poly a) {
  for (auto& [k, v] : a.c) v *= s;
  return a;
}
inline Poly operator-(Poly a, const Poly& b) { return a + (-1.0) * b; }
inline Poly operator+(Poly a, double s) { return a + Poly::constant(a.nvars, s); }
inline Poly operator+(double s, Poly a) { return a + Poly::constant(a.nvars, s); }
inline Poly operator-(double s, const Poly& a) { return Poly::constant(a.nvars, s) - a; }
inline Poly operator*(const Poly& a, const Poly& b) {
  Poly r{a.nvars, {}};
  for (const auto& [ka, va] : a.c)
    for (const auto& [kb, vb] : b.c) {
      std::vector<int> k(ka);
      for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
      r.c[k] += va * vb;
    }
  return r;
}
inline Poly pow(const Poly& a, int e) {
  Poly r = Poly::constant(a.nvars, 1.0);
  for (int i = 0; i < e; ++i) r = r * a;
  return r;
}
inline Poly d(const Poly& a, int i) {
  Poly r{a.nvars, {}};
  for (const auto& [k, v] : a.c) {
    const int e = k[static_cast<std::size_t>(i)];
    if (e == 0) continue;
    std::vector<int> kk(k);
    kk[static_cast<std::size_t>(i)] -= 1;
    r.c[kk] += v * e;
  }
  return r;
}
inline Poly truncate(const Poly& a, int order) {
  Poly r{a.nvars, {}};
  for (const auto& [k, v] : a.c) {
    int deg = 0;
    for (int e : k) deg += e;
    if (deg <= order) r.c[k] = v;
  }
  return r;
}
inline double max_abs_diff(const Poly& a, const Poly& b) {
  double m = 0.0;
  for (const auto& [k, v] : (a - b).c) m = std::max(m, std::abs(v));
  return m;
}

// Minkowski graph quantities written out for n = 2 from the first
// fundamental form S = I - grad f grad f^T, its cofactor and h = Hess f.
inline Poly minkowski_B(const Poly& f) {
  const Poly fx = d(f, 0), fy = d(f, 1);
  return 1.0 - fx * fx - fy * fy;
}
inline Poly minkowski_A(const Poly& f) {
  const Poly fx = d(f, 0), fy = d(f, 1);
  return (1.0 - fy * fy) * d(fx, 0) + 2.0 * (fx * fy * d(fx, 1)) + (1.0 - fx * fx) * d(fy, 1);
}

inline Poly X() { return Poly::var(2, 0); }
inline Poly Y() { return Poly::var(2, 1); }

inline Poly f1() { return Y() + pow(X(), 2) + pow(X(), 3) + Y() * pow(X(), 4); }
inline Poly f2() { return Y() - (1.0 + Y()) * pow(X(), 3) - pow(Y(), 3) * pow(X(), 4); }
inline Poly f3() { return Y() + pow(X(), 3) + pow(X(), 4) + Y() * pow(X(), 5); }

// The printed closed forms. For A_{F1} the last term is read as 10 y x^6;
// literal_tail = true keeps the extra factor y exactly as typeset.
inline Poly printed_B1() {
  const Poly x = X(), y = Y();
  return -1.0 * (pow(x, 2) * (4.0 + 12.0 * x + (11.0 + 16.0 * y) * pow(x, 2) +
                              24.0 * (y * pow(x, 3)) + 16.0 * (pow(y, 2) * pow(x, 4)) + pow(x, 6)));
}
inline Poly printed_A1(bool literal_tail = false) {
  const Poly x = X(), y = Y();
  Poly tail = 10.0 * (y * pow(x, 6));
  if (literal_tail) tail = tail * y;
  return 2.0 * (pow(x, 4) * (6.0 + 6.0 * x + 4.0 * (y * pow(x, 2)) + 7.0 * pow(x, 4) +
                             9.0 * pow(x, 5) + tail));
}
inline Poly printed_B3() {
  const Poly x = X(), y = Y();
  return -1.0 * (pow(x, 4) * (9.0 + 26.0 * x + 2.0 * ((8.0 + 15.0 * y) * pow(x, 2)) +
                              40.0 * (y * pow(x, 3)) + 25.0 * (pow(y, 2) * pow(x, 4)) + pow(x, 6)));
}
inline Poly printed_A3() {
  const Poly x = X(), y = Y();
  return 2.0 * (pow(x, 6) * (9.0 + 8.0 * x + 5.0 * (y * pow(x, 2)) + 12.0 * pow(x, 5) +
                             14.0 * pow(x, 6) + 15.0 * (y * pow(x, 7))));
}

// The x^k slice of p as a polynomial in the remaining variables (x = var 0).
inline Poly slice(const Poly& p, int k) {
  Poly r{p.nvars, {}};
  for (const auto& [a, v] : p.c)
    if (a[0] == k) {
      std::vector<int> b(a);
      b[0] = 0;
      r.c[b] += v;
    }
  return r;
}

// Generalized binomial coefficient C(r, k).
inline double binom(double r, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b *= (r - i) / (i + 1);
  return b;
}

// sqrt(x1^2 + ... + (xn + 1)^2) - 1 = sqrt(1 + u) - 1 with
// u = 2 xn + |x|^2, summed as a binomial series and truncated.
inline Poly cone_taylor(int n, int order) {
  Poly u = 2.0 * Poly::var(n, n - 1);
  for (int i = 0; i < n; ++i) u = u + Poly::var(n, i) * Poly::var(n, i);
  Poly s = Poly::constant(n, 0.0), uk = Poly::constant(n, 1.0);
  for (int k = 1; k <= order; ++k) {
    uk = truncate(uk * u, order);
    s = s + binom(0.5, k) * uk;
  }
  return s;
}

// Coefficients of tanh(t) from t' = 1 - t^2.
inline std::vector<double> tanh_coeffs(int order) {
  std::vector<double> t(static_cast<std::size_t>(order + 1), 0.0);
  for (int m = 0; m < order; ++m) {
    double s = (m == 0) ? 1.0 : 0.0;
    for (int i = 0; i <= m; ++i) s -= t[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(m - i)];
    t[static_cast<std::size_t>(m + 1)] = s / (m + 1);
  }
  return t;
}

// (x1 + 1) tanh(x2), truncated.
inline Poly kobayashi_taylor(int order) {
  const auto t = tanh_coeffs(order);
  Poly r{2, {}};
  for (int k = 1; k <= order; ++k) {
    if (t[static_cast<std::size_t>(k)] == 0.0) continue;
    r.c[{0, k}] += t[static_cast<std::size_t>(k)];
    if (k + 1 <= order) r.c[{1, k}] += t[static_cast<std::size_t>(k)];
  }
  return r;
}

// Central differences of a scalar function.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& p, double h) {
  Vec g(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Vec a = p, b = p;
    a(i) += h;
    b(i) -= h;
    g(i) = (f(a) - f(b)) / (2 * h);
  }
  return g;
}

inline Mat fd_hessian(const std::function<double(const Vec&)>& f, const Vec& p, double h) {
  const Eigen::Index n = p.size();
  Mat H(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      auto at = [&](double si, double sj) {
        Vec q = p;
        q(i) += si * h;
        q(j) += sj * h;
        return f(q);
      };
      H(i, j) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * h * h);
    }
  return H;
}

// Christoffel symbols from central differences of the metric components.
inline std::vector<Mat> fd_christoffels(const causal::MetricChart& chart, const Vec& p, double h) {
  const int d = chart.dim();
  std::vector<Mat> dg(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    Vec a = p, b = p;
    a(k) += h;
    b(k) -= h;
    dg[static_cast<std::size_t>(k)] = (chart.g(a) - chart.g(b)) / (2 * h);
  }
  const Mat gi = chart.g(p).inverse();
  std::vector<Mat> G(static_cast<std::size_t>(d), Mat::Zero(d, d));
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        double s = 0.0;
        for (int e = 0; e < d; ++e)
          s += gi(c, e) * (dg[static_cast<std::size_t>(a)](e, b) + dg[static_cast<std::size_t>(b)](e, a) -
                           dg[static_cast<std::size_t>(e)](a, b));
        G[static_cast<std::size_t>(c)](a, b) = 0.5 * s;
      }
  return G;
}

}  // namespace oracle
