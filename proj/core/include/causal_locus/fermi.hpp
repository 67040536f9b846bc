#pragma once

#include <span>
#include <vector>

#include "causal_locus/geodesic.hpp"
#include "causal_locus/linalg.hpp"
#include "causal_locus/metric.hpp"

namespace causal {

// e[0], e[1] null with g(e0, e1) = -1, both g-orthogonal to e[2..n], which
// are g-orthonormal.
struct NullFrame {
  std::vector<Vec> e;
};

// e0 = v; e1 from the canonical basis vector w maximizing |g(v, w)|; the
// rest by Gram-Schmidt on the complement of span(e0, e1).
NullFrame null_frame_at(const MetricChart& chart, const Vec& p, const Vec& v_null,
                        double tol = 1e-10);
// Largest deviation of the Gram matrix g(e_a, e_b) from the null-frame
// pattern.
double frame_defect(const Mat& g, std::span<const Vec> e);

// Coordinates (y0, ..., yn) -> Exp_{sigma(y0)}(sum_{i>=1} y_i E_i(y0)) along
// a null geodesic sigma with a parallel null frame E, plus the linear change
// x0 = (y0 + y1)/sqrt2, xn = (y0 - y1)/sqrt2, x_i = y_{i+1}.
class FermiChart {
 public:
  const MetricChart& ambient() const { return ambient_; }
  int dim() const { return ambient_.dim(); }
  double eps() const { return eps_; }
  double step() const { return step_; }
  bool transported() const { return transported_; }
  const Curve& sigma() const { return sigma_; }
  // Frame at each sample of sigma.
  const std::vector<std::vector<Vec>>& frame() const { return frame_; }
  double t_min() const { return sigma_.front().t; }
  double t_max() const { return sigma_.back().t; }

  // sigma(t) and the frame there; off-grid values take one RK4 step from the
  // sample below t.
  void at(double t, Vec& x, std::vector<Vec>& E) const;

  Vec phi_y(const Vec& y) const;
  Vec phi_x(const Vec& x) const;
  // x-coordinates of sigma(t): (t/sqrt2, 0, ..., 0, t/sqrt2).
  Vec sigma_x(double t) const;

  // Jacobian d phi_x / dx by Richardson-extrapolated central differences
  // with steps h and h/2.
  Mat jacobian(const Vec& x, double h) const;
  // Pulled-back metric J^T g J in x-coordinates.
  Mat metric(const Vec& x, double h) const;
  // Pulled-back metric with first partials by a second Richardson pass.
  MetricSample metric_sample(const Vec& x, double h) const;
  // The pulled-back metric as a sampled chart in x-coordinates.
  MetricChart as_metric_chart(double h) const;

 private:
  friend FermiChart build_fermi_chart(const MetricChart&, const Vec&, const Vec&, double, double,
                                      double, double, bool);
  MetricChart ambient_ = MetricChart::minkowski(1);
  Curve sigma_;
  std::vector<std::vector<Vec>> frame_;
  double eps_ = 0.0;
  double step_ = 0.0;
  bool transported_ = true;
};

// sigma with sigma(0) = p, sigma'(0) = v_null on [t0, t1]. With
// transport = false the frame keeps its coordinate components along sigma,
// which breaks the Fermi property (negative control).
FermiChart build_fermi_chart(const MetricChart& chart, const Vec& p, const Vec& v_null, double t0,
                             double t1, double eps, double step = 1e-3, bool transport = true);

struct FermiReport {
  double a1 = 0.0;        // max |phi(t, 0) - sigma(t)|
  double a2 = 0.0;        // max |G - eta| along sigma
  double a3 = 0.0;        // max |Gamma| of G along sigma
  double frame = 0.0;     // max frame defect over the stored samples
  double velocity = 0.0;  // max |sigma' - E0| over the stored samples
  bool injective = true;  // Jacobian determinant keeps one sign on the box
  double det_min = 0.0;
  double det_max = 0.0;
  double fd_step = 0.0;
  std::vector<double> t;
  std::vector<double> a2_t;
  std::vector<double> a3_t;
};

// fd_step <= 0 selects eps/50. Throws ValidationError if 2 fd_step > eps.
FermiReport verify_fermi(const FermiChart& fc, std::span<const double> t_samples,
                         double fd_step = 0.0);

}  // namespace causal
