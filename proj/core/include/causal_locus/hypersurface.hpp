#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causal_locus/expr.hpp"
#include "causal_locus/jet.hpp"
#include "causal_locus/linalg.hpp"
#include "causal_locus/metric.hpp"
#include "causal_locus/series.hpp"

namespace causal {

// The function f of a graph F(x) = (f(x), x) over n domain variables.
class HeightFunction {
 public:
  // Expression over VarTable::domain(n).
  static HeightFunction expression(int n, Expr e);
  static HeightFunction parse(int n, std::string_view text);
  static HeightFunction series(SeriesSurface s);
  // y -> f(c + R y) - shift.
  static HeightFunction affine(const HeightFunction& base, const Mat& R, const Vec& c, double shift);

  int n() const noexcept { return n_; }
  std::string describe() const;
  const Expr* expr() const { return kind_ == Kind::Expression ? &expr_ : nullptr; }
  const SeriesSurface* series_data() const { return kind_ == Kind::Series ? series_.get() : nullptr; }

  // f evaluated on coordinate jets (absolute domain coordinates).
  Jet eval(std::span<const Jet> coords) const;
  // Taylor jet of f at p in the displacement h, up to the given order.
  Jet jet_at(const Vec& p, int order) const;
  double value(const Vec& p) const;

 private:
  enum class Kind { Expression, Series, Affine };
  Kind kind_ = Kind::Expression;
  int n_ = 0;
  Expr expr_;
  std::shared_ptr<const SeriesSurface> series_;
  std::shared_ptr<const HeightFunction> base_;
  Mat R_;
  Vec c_;
  double shift_ = 0.0;
};

struct GraphSurface {
  HeightFunction f;
  MetricChart ambient;

  GraphSurface(HeightFunction f_, MetricChart ambient_);
  int n() const { return f.n(); }
  // F(p) = (f(p), p).
  Vec lift(const Vec& p) const;
};

enum class CausalType { Spacelike, Timelike, LightlikeNondegenerate, LightlikeDegenerate };

const char* causal_type_name(CausalType c);
bool is_lightlike(CausalType c);

struct CausalClass {
  CausalType type = CausalType::Spacelike;
  double tol_B = 0.0;
  double tol_grad = 0.0;
};

struct Tolerances {
  // Negative tol_B selects the default 1e-10 * (1 + |S|_inf).
  double tol_B = -1.0;
  double tol_grad = 1e-8;
};

struct PointReport {
  Vec p;
  Mat S;
  double B = 0.0;
  Vec gradB;
  Mat Scof;
  Vec nu;
  Mat h;
  double A = 0.0;
  std::optional<double> H;
  std::optional<double> Hhat;
  std::optional<Vec> Hvec;
  std::optional<double> omegaH;
  double theta = 0.0;
  CausalClass cls;
};

// Fundamental data as jets in the displacement about one point. S, B, Scof
// and nu are valid to order K-1, h and A to order K-2, where K is the order
// of the jet of f.
struct SurfaceJets {
  int K = 0;
  Jet f{1, 0};
  std::vector<std::vector<Jet>> S;
  Jet B{1, 0};
  std::vector<std::vector<Jet>> Scof;
  std::vector<Jet> nu;
  std::vector<std::vector<Jet>> h;
  Jet A{1, 0};
};

enum class Path { Auto, General, Minkowski };

// Jets of the fundamental data at p, with f expanded to order K >= 2.
// Path::Auto uses the closed Minkowski formulas when the ambient is the builtin
// Minkowski chart and the determinant/Christoffel construction otherwise.
SurfaceJets surface_jets(const GraphSurface& F, const Vec& p, int K, Path path = Path::Auto);
// Same, starting from an explicit jet of f (for example a series at the
// origin) over the builtin Minkowski chart.
SurfaceJets minkowski_surface_jets(const Jet& f);

double default_tol_B(const Mat& S);
CausalClass classify(double B, const Vec& gradB, const Mat& S, const Tolerances& tol);

PointReport point_report(const GraphSurface& F, const Vec& p, const Tolerances& tol = {},
                         Path path = Path::Auto);

struct ConsistencyResiduals {
  double dB = 0.0;
  double dA = 0.0;
  double dnu = 0.0;
  double B_fast = 0.0, B_general = 0.0;
  double A_fast = 0.0, A_general = 0.0;
};

// Same point through the closed-form path and through the general path with
// Minkowski supplied as component expressions.
ConsistencyResiduals minkowski_consistency(const GraphSurface& F, const Vec& p);

// The Minkowski metric as a generic component chart (not the builtin fast
// path).
MetricChart minkowski_as_components(int n);

// |A - phi B^{1+alpha}| maximized over the grid; for non-integer alpha the
// power is |B|^{1+alpha}.
double admissibility_residual(const GraphSurface& F, const Expr& phi, double alpha,
                              std::span<const Vec> grid);

// Translation plus spatial rotation making f(o)=0, grad f(o) = (0,...,0,1).
struct Normalization {
  GraphSurface surface;
  Mat R;          // spatial rotation, det +1
  Vec origin;     // o in the old domain coordinates
  double shift;   // f(o)
};
Normalization normalize_at_lightlike(const GraphSurface& F, const Vec& o,
                                     const Tolerances& tol = {});

struct Lemma23Report {
  double Bxn = 0.0;          // (B)_{x_n}(o)
  double fxnxn = 0.0;        // f_{x_n x_n}(o)
  double identity = 0.0;     // max_j |(B)_{x_j}(o) + 2 f_{x_n x_j}(o)|, j < n
  double max_fxnxj = 0.0;    // max_j |f_{x_n x_j}(o)|, j < n
  bool degenerate = false;
  std::optional<double> class_residual;
};

struct ClassClaim {
  Expr phi;
  double alpha = 0.0;
  double tol = 1e-8;
  double radius = 0.05;
};

Lemma23Report lemma_2_3_check(const GraphSurface& F, const Vec& o,
                              const std::optional<ClassClaim>& claim = std::nullopt,
                              double tol = 1e-10);

// points_per_axis^n points evenly covering the cube of the given half-width
// about center.
std::vector<Vec> box_grid(const Vec& center, double half_width, int points_per_axis);

}  // namespace causal
