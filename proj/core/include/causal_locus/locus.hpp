#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causal_locus/expr.hpp"
#include "causal_locus/geodesic.hpp"
#include "causal_locus/hypersurface.hpp"
#include "causal_locus/linalg.hpp"

namespace causal {

// ---------------------------------------------------------------- locus tracing

struct LocusSample {
  Vec p;
  double B = 0.0;
  Vec gradB;
  CausalType cls = CausalType::LightlikeNondegenerate;
  double s = 0.0;  // arc length from the seed, signed by direction
};

struct LocusCurve {
  std::vector<LocusSample> samples;  // ordered by s
  bool hit_degenerate = false;
  std::string stop_backward;
  std::string stop_forward;
};

struct TraceOptions {
  double step = 1e-2;
  int max_steps = 200;
  double half_width = 1.0;  // stay within |p - seed|_inf <= half_width
  double tol_B = 1e-12;
  double tol_grad = 1e-8;
  int newton_iterations = 8;
  double min_step = 1e-7;
};

// Projects the seed onto B = 0 and follows the curve both ways with a
// tangent predictor and a Newton corrector along grad B. Degenerate seeds
// (grad B vanishing, or only linear Newton convergence signalling a multiple
// zero) throw ValidationError.
LocusCurve trace_locus(const GraphSurface& F, const Vec& seed, const TraceOptions& opt = {});

// ---------------------------------------------------------------- line check

struct LineCheckReport {
  Curve geodesic;                  // ambient samples
  std::vector<double> residual;    // |x0 - f(x1..xn)| per sample
  std::vector<CausalType> cls;     // class of the surface point above each sample
  double max_residual = 0.0;
  bool all_degenerate = true;
  double tol = 0.0;
  bool pass = false;
};

// Follows the ambient geodesic from F(o) with velocity (1, 0, ..., 0, 1)
// over [-half_length, half_length]. Requires grad f(o) = e_n, o degenerate
// light-like and the ambient admissible at F(o).
LineCheckReport verify_lightline(const GraphSurface& F, const Vec& o, double half_length = 0.5,
                                 double step = 1e-3, double tol = 1e-12);

// ---------------------------------------------------------------- dichotomy

enum class Dichotomy { CaseA, CaseB, Ambiguous };
const char* dichotomy_name(Dichotomy d);

struct DichotomyOptions {
  double trace_half_width = 0.2;
  double line_half_length = 0.5;
  double step = 1e-3;
  double sign_offset = 1e-3;
  double null_tol = 1e-8;
  double margin_min = 0.1;
  double line_tol = 1e-12;
  // |grad B| in (tol_grad, ambiguous_grad) is reported as ambiguous.
  double ambiguous_grad = 1e-6;
  std::optional<ClassClaim> claim;
};

struct DichotomyReport {
  Dichotomy verdict = Dichotomy::Ambiguous;
  CausalType cls = CausalType::Spacelike;
  double grad_norm = 0.0;
  std::optional<double> class_residual;
  // Case (a) evidence.
  std::optional<LocusCurve> locus;
  double null_defect = 0.0;  // max |g(sigma', sigma')| along the mapped locus
  double margin = 0.0;       // min smallest singular value of [sigma' sigma'']
  double B_minus = 0.0, B_plus = 0.0;
  bool sign_change = false;
  // Case (b) evidence.
  std::optional<LineCheckReport> line;
  bool pass = false;
};

DichotomyReport dichotomy_check(const GraphSurface& F, const Vec& o,
                                const DichotomyOptions& opt = {});

// Velocity and acceleration of F o gamma at a locus point, with gamma
// parametrized by domain arc length (n = 2).
struct MappedLocusFrame {
  Vec velocity;
  Vec acceleration;
};
MappedLocusFrame mapped_locus_frame(const GraphSurface& F, const Vec& p, const Vec& tangent_hint);

// ---------------------------------------------------------------- null curves

// Integral curve of the null direction of the tangent space (the kernel of
// the first fundamental form) through p, parametrized by domain arc length
// on [-half_length, half_length]. The surface must be light-like there.
std::vector<Vec> null_direction_curve(const GraphSurface& F, const Vec& p, double half_length,
                                      double step);

struct ProportionalityReport {
  double defect = 0.0;      // max |a_perp| / (|a| + |v|)
  double max_B = 0.0;
  double max_gradB = 0.0;
  std::size_t samples = 0;
};

// gamma sampled at uniform parameter spacing dt. Checks |B| and |grad B|
// below tol along gamma, then measures how far the covariant acceleration
// of F o gamma is from being parallel to its velocity.
ProportionalityReport prop41_check(const GraphSurface& F, std::span<const Vec> gamma, double dt,
                                   double tol = 1e-8);

// ---------------------------------------------------------------- axis restriction

struct AxisResidualReport {
  double B = 0.0;
  double dB = 0.0;  // max_i |B_{x_i}|, i < n
  double A = 0.0;
  double dA = 0.0;  // max_i |A_{x_i}|, i < n
  std::size_t points = 0;
  bool jets = true;  // false when A_{x_i} came from finite differences
};

// Graph of f = x_n + sum_{j<=k<n} c_jk x_j x_k with c_jk in the order
// (1,1), (1,2), ..., (1,n-1), (2,2), ..., expressions over the domain
// variables. Returns sup norms of B, B_{x_i}, A, A_{x_i} on the x_n-axis.
AxisResidualReport prop32_reference_check(const MetricChart& ambient, std::span<const Expr> c,
                                          std::span<const double> xn_grid,
                                          double admissible_tol = 1e-9);
HeightFunction axis_surface(int n, std::span<const Expr> c);

// ---------------------------------------------------------------- mean curvature bounds

struct ShellEstimate {
  double radius = 0.0;
  double inf = 0.0;
  double sup = 0.0;
  std::size_t points = 0;
};

struct TheoremDReport {
  std::vector<ShellEstimate> shells;  // decreasing radius
  bool applicable = true;             // false when |H| vanishes on the grid
  bool sup_diverges = false;
  bool inf_degenerates = false;
  bool bounded = false;
  double sup_slope = 0.0;  // d log sup / d log r between outer and inner shell
  double inf_slope = 0.0;
  double slope_threshold = 0.25;
  double B_order = 0.0;    // fitted vanishing order of B transversally to the line
  int B_order_rounded = 0;
  bool even_m = false;     // B ~ c x^{2m} with m even, i.e. order divisible by 4
  std::optional<LineCheckReport> line;
  std::string note;
};

struct TheoremDOptions {
  // The outer radius stays below 0.2: F2 has a second light-like curve
  // (the zero set of its factor 2 + h2 x) crossing the box of half-width 0.2.
  std::vector<double> radii{0.1, 0.05, 0.025};
  int points_per_axis = 24;
  double slope_threshold = 0.25;
  double line_half_length = 0.5;
  double line_step = 1e-3;
};

// |H| on nested shells r/2 < |p - o|_inf <= r (points with |B| at the
// classification tolerance are skipped). Divergence is flagged when sup
// grows, or inf shrinks, faster than r^{-threshold} as r decreases.
TheoremDReport theorem_d_check(const GraphSurface& F, const Vec& o, const TheoremDOptions& opt = {});

}  // namespace causal
