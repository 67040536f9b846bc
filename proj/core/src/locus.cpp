#include "causal_locus/locus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "causal_locus/errors.hpp"
#include "causal_locus/geodesic.hpp"
#include "causal_locus/parallel.hpp"

namespace causal {

namespace {

struct BValue {
  double B = 0.0;
  Vec grad;
};

BValue b_at(const GraphSurface& F, const Vec& p) {
  SurfaceJets J = surface_jets(F, p, 2);
  BValue r;
  r.B = J.B.value();
  r.grad.resize(F.n());
  for (int i = 0; i < F.n(); ++i) r.grad(i) = J.B.gradient(i);
  return r;
}

Vec rot90(const Vec& g) {
  Vec t(2);
  t << -g(1), g(0);
  return t;
}

struct Projection {
  Vec p;
  BValue b;
  bool converged = false;
  bool degenerate = false;
};

// Newton along grad B. A run of slow contractions means a multiple zero of
// B, where grad B vanishes in the limit.
Projection project(const GraphSurface& F, Vec p, int iterations, const TraceOptions& opt) {
  Projection r;
  int slow = 0;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it <= iterations; ++it) {
    r.b = b_at(F, p);
    r.p = p;
    const double aB = std::abs(r.b.B);
    const double gn = r.b.grad.norm();
    if (aB <= opt.tol_B) {
      r.converged = true;
      r.degenerate = gn < opt.tol_grad;
      return r;
    }
    if (gn < opt.tol_grad) {
      r.degenerate = true;
      return r;
    }
    const double ratio = aB / prev;
    slow = (ratio > 0.1 && ratio < 0.95) ? slow + 1 : 0;
    if (slow >= 4) {
      r.degenerate = true;
      return r;
    }
    prev = aB;
    if (it == iterations) break;
    p -= (r.b.B / (gn * gn)) * r.b.grad;
    if (!p.allFinite()) break;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- tracing

LocusCurve trace_locus(const GraphSurface& F, const Vec& seed, const TraceOptions& opt) {
  if (F.n() != 2) throw ValidationError("locus tracing is implemented for n = 2 only");
  Projection start = project(F, seed, 60, opt);
  if (start.degenerate)
    throw ValidationError("degenerate seed: B and grad B vanish together near (" +
                          std::to_string(seed(0)) + ", " + std::to_string(seed(1)) +
                          "); use the line check instead");
  if (!start.converged)
    throw NumericError("corrector did not reach B = 0 from the seed (|B| = " +
                       std::to_string(std::abs(start.b.B)) + ")");

  auto sample = [&](const Vec& p, const BValue& b, double s) {
    LocusSample ls;
    ls.p = p;
    ls.B = b.B;
    ls.gradB = b.grad;
    ls.cls = b.grad.norm() < opt.tol_grad ? CausalType::LightlikeDegenerate
                                          : CausalType::LightlikeNondegenerate;
    ls.s = s;
    return ls;
  };

  LocusCurve curve;
  std::vector<LocusSample> branch[2];
  std::string reason[2];
  for (int side = 0; side < 2; ++side) {
    const double dir = side == 0 ? -1.0 : 1.0;
    Vec p = start.p;
    Vec tangent = dir * rot90(start.b.grad).normalized();
    double h = opt.step;
    double s = 0.0;
    reason[side] = "max_steps";
    for (int k = 0; k < opt.max_steps; ++k) {
      Projection q;
      for (;;) {
        q = project(F, Vec(p + h * tangent), opt.newton_iterations, opt);
        if (q.converged && (q.p - p).norm() <= 2.0 * h) break;
        if (q.degenerate) break;
        h *= 0.5;
        if (h < opt.min_step) break;
      }
      if (q.degenerate) {
        curve.hit_degenerate = true;
        reason[side] = "degenerate point";
        branch[side].push_back(sample(q.p, q.b, s + dir * (q.p - p).norm()));
        branch[side].back().cls = CausalType::LightlikeDegenerate;
        break;
      }
      if (h < opt.min_step) {
        reason[side] = "corrector diverged";
        break;
      }
      if ((q.p - seed).cwiseAbs().maxCoeff() > opt.half_width) {
        reason[side] = "left the box";
        break;
      }
      s += dir * (q.p - p).norm();
      p = q.p;
      branch[side].push_back(sample(p, q.b, s));
      Vec t = dir * rot90(q.b.grad).normalized();
      tangent = t.dot(tangent) >= 0.0 ? t : Vec(-t);
      h = std::min(opt.step, 2.0 * h);
    }
  }
  std::reverse(branch[0].begin(), branch[0].end());
  curve.samples = std::move(branch[0]);
  curve.samples.push_back(sample(start.p, start.b, 0.0));
  curve.samples.insert(curve.samples.end(), branch[1].begin(), branch[1].end());
  curve.stop_backward = reason[0];
  curve.stop_forward = reason[1];
  return curve;
}

// ---------------------------------------------------------------- line check

LineCheckReport verify_lightline(const GraphSurface& F, const Vec& o, double half_length,
                                 double step, double tol) {
  const int n = F.n();
  if (o.size() != n) throw ValidationError("point dimension mismatch");
  if (!(half_length > 0.0)) throw ValidationError("half_length must be positive");
  PointReport pr = point_report(F, o);
  if (pr.cls.type != CausalType::LightlikeDegenerate)
    throw ValidationError(std::string("line check needs a degenerate light-like point, o is ") +
                          causal_type_name(pr.cls.type) + " (B = " + std::to_string(pr.B) +
                          ", |grad B| = " + std::to_string(pr.gradB.norm()) + ")");
  Jet f1 = F.f.jet_at(o, 1);
  double off = 0.0;
  for (int i = 0; i < n; ++i) off = std::max(off, std::abs(f1.gradient(i) - (i == n - 1 ? 1.0 : 0.0)));
  if (off > 1e-9)
    throw ValidationError("surface is not normalized at o (grad f(o) differs from e_n by " +
                          std::to_string(off) + "); normalize it first");
  const Vec P = F.lift(o);
  if (!F.ambient.is_minkowski()) {
    AdmissibilityReport adm = F.ambient.is_admissible_at(P);
    if (!adm.admissible) throw ValidationError("ambient chart is not admissible at F(o)");
  }

  LineCheckReport r;
  r.tol = tol;
  Vec v = Vec::Zero(n + 1);
  v(0) = 1.0;
  v(n) = 1.0;
  r.geodesic = geodesic_ivp(F.ambient, P, v, -half_length, half_length, step);
  struct Point {
    double res;
    CausalType cls;
  };
  auto pts = parallel_map<Point>(r.geodesic.size(), [&](std::size_t k) {
    const Vec& x = r.geodesic[k].x;
    Vec q = x.tail(n);
    return Point{std::abs(x(0) - F.f.value(q)), point_report(F, q).cls.type};
  });
  for (const Point& p : pts) {
    r.residual.push_back(p.res);
    r.cls.push_back(p.cls);
    r.max_residual = std::max(r.max_residual, p.res);
    if (p.cls != CausalType::LightlikeDegenerate) r.all_degenerate = false;
  }
  r.pass = r.max_residual < tol && r.all_degenerate;
  return r;
}

// ---------------------------------------------------------------- dichotomy

const char* dichotomy_name(Dichotomy d) {
  switch (d) {
    case Dichotomy::CaseA: return "a";
    case Dichotomy::CaseB: return "b";
    case Dichotomy::Ambiguous: return "ambiguous";
  }
  return "?";
}

MappedLocusFrame mapped_locus_frame(const GraphSurface& F, const Vec& p, const Vec& hint) {
  if (F.n() != 2) throw ValidationError("mapped locus frame needs n = 2");
  SurfaceJets J = surface_jets(F, p, 3);
  Vec gB(2), gf(2);
  Mat HB(2, 2), Hf(2, 2);
  for (int i = 0; i < 2; ++i) {
    gB(i) = J.B.gradient(i);
    gf(i) = J.f.gradient(i);
    for (int j = 0; j < 2; ++j) {
      int a[2] = {0, 0};
      a[i] += 1;
      a[j] += 1;
      HB(i, j) = J.B.derivative(a);
      Hf(i, j) = J.f.derivative(a);
    }
  }
  const double gn2 = gB.squaredNorm();
  if (gn2 == 0.0) throw ValidationError("grad B vanishes; the locus has no tangent here");
  Vec T = rot90(gB) / std::sqrt(gn2);
  if (T.dot(hint) < 0.0) T = -T;
  Vec gamma2 = -(T.dot(HB * T) / gn2) * gB;
  MappedLocusFrame fr;
  fr.velocity = make_vec({gf.dot(T), T(0), T(1)});
  fr.acceleration = make_vec({T.dot(Hf * T) + gf.dot(gamma2), gamma2(0), gamma2(1)});
  if (!F.ambient.is_minkowski())
    fr.acceleration += F.ambient.christoffels(F.lift(p)).contract(fr.velocity, fr.velocity);
  return fr;
}

DichotomyReport dichotomy_check(const GraphSurface& F, const Vec& o, const DichotomyOptions& opt) {
  DichotomyReport r;
  PointReport pr = point_report(F, o);
  r.cls = pr.cls.type;
  r.grad_norm = pr.gradB.norm();
  if (!is_lightlike(pr.cls.type))
    throw ValidationError(std::string("dichotomy needs a light-like point, o is ") +
                          causal_type_name(pr.cls.type) + " (B = " + std::to_string(pr.B) + ")");
  if (opt.claim) {
    auto grid = box_grid(o, opt.claim->radius, 5);
    r.class_residual = admissibility_residual(F, opt.claim->phi, opt.claim->alpha, grid);
    if (*r.class_residual > opt.claim->tol)
      throw ValidationError("surface is not in the claimed class: residual " +
                            std::to_string(*r.class_residual));
  }

  if (pr.cls.type == CausalType::LightlikeDegenerate) {
    Normalization N = normalize_at_lightlike(F, o);
    r.line = verify_lightline(N.surface, Vec::Zero(F.n()), opt.line_half_length, opt.step,
                              opt.line_tol);
    r.verdict = Dichotomy::CaseB;
    r.pass = r.line->pass;
    return r;
  }
  if (r.grad_norm < opt.ambiguous_grad) {
    r.verdict = Dichotomy::Ambiguous;
    return r;
  }
  if (F.n() != 2) throw ValidationError("non-degenerate dichotomy evidence is implemented for n = 2");

  TraceOptions to;
  to.half_width = opt.trace_half_width;
  to.max_steps = 1000;
  r.locus = trace_locus(F, o, to);
  r.margin = std::numeric_limits<double>::infinity();
  Vec hint;
  for (const LocusSample& s : r.locus->samples) {
    if (s.cls == CausalType::LightlikeDegenerate) continue;
    if (hint.size() == 0) hint = rot90(s.gradB);
    MappedLocusFrame fr = mapped_locus_frame(F, s.p, hint);
    hint = fr.velocity.tail(2);
    const Mat g = F.ambient.is_minkowski() ? minkowski_eta(3) : F.ambient.at(F.lift(s.p)).g;
    r.null_defect = std::max(r.null_defect, std::abs(inner(g, fr.velocity, fr.velocity)));
    Eigen::Matrix<double, Eigen::Dynamic, 2, 0, kMaxDim, 2> M(3, 2);
    M.col(0) = fr.velocity;
    M.col(1) = fr.acceleration;
    Eigen::JacobiSVD<decltype(M)> svd(M);
    r.margin = std::min(r.margin, svd.singularValues()(1));
  }
  const Vec nrm = pr.gradB / r.grad_norm;
  r.B_minus = b_at(F, Vec(o - opt.sign_offset * nrm)).B;
  r.B_plus = b_at(F, Vec(o + opt.sign_offset * nrm)).B;
  r.sign_change = r.B_minus * r.B_plus < 0.0;
  r.verdict = Dichotomy::CaseA;
  r.pass = r.null_defect < opt.null_tol && r.margin > opt.margin_min && r.sign_change;
  return r;
}

// ---------------------------------------------------------------- null curves

std::vector<Vec> null_direction_curve(const GraphSurface& F, const Vec& p, double half_length,
                                      double step) {
  if (!(step > 0.0) || !(half_length > 0.0)) throw ValidationError("step and length must be positive");
  PointReport pr = point_report(F, p);
  if (!is_lightlike(pr.cls.type))
    throw ValidationError(std::string("null direction needs a light-like point, p is ") +
                          causal_type_name(pr.cls.type));
  auto direction = [&](const Vec& q, const Vec& ref) {
    SurfaceJets J = surface_jets(F, q, 2);
    const int n = F.n();
    Mat S(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) S(i, j) = J.S[i][j].value();
    Eigen::SelfAdjointEigenSolver<Mat> es(S);
    Eigen::Index k = 0;
    es.eigenvalues().cwiseAbs().minCoeff(&k);
    Vec w = es.eigenvectors().col(k);
    if (ref.size() == w.size() && w.dot(ref) < 0.0) w = -w;
    return w;
  };
  const long N = std::lround(half_length / step);
  const Vec w0 = direction(p, Vec());
  std::vector<Vec> fwd, back;
  for (int side = 0; side < 2; ++side) {
    const double dir = side == 0 ? 1.0 : -1.0;
    Vec q = p;
    Vec ref = dir * w0;
    for (long k = 0; k < N; ++k) {
      Vec k1 = direction(q, ref);
      Vec k2 = direction(Vec(q + 0.5 * step * k1), k1);
      Vec k3 = direction(Vec(q + 0.5 * step * k2), k2);
      Vec k4 = direction(Vec(q + step * k3), k3);
      q += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ref = k4;
      (side == 0 ? fwd : back).push_back(q);
    }
  }
  std::vector<Vec> out(back.rbegin(), back.rend());
  out.push_back(p);
  out.insert(out.end(), fwd.begin(), fwd.end());
  return out;
}

ProportionalityReport prop41_check(const GraphSurface& F, std::span<const Vec> gamma, double dt,
                                   double tol) {
  const std::size_t N = gamma.size();
  if (N < 9) throw ValidationError("proportionality check needs at least 9 curve samples");
  if (!(dt > 0.0)) throw ValidationError("parameter spacing must be positive");
  ProportionalityReport r;
  for (const Vec& q : gamma) {
    PointReport pr = point_report(F, q);
    r.max_B = std::max(r.max_B, std::abs(pr.B));
    r.max_gradB = std::max(r.max_gradB, pr.gradB.norm());
  }
  if (r.max_B > tol || r.max_gradB > tol)
    throw ValidationError("curve leaves the degenerate light-like set: max |B| = " +
                          std::to_string(r.max_B) + ", max |grad B| = " +
                          std::to_string(r.max_gradB));

  Curve c(N);
  for (std::size_t k = 0; k < N; ++k) {
    c[k].t = static_cast<double>(k) * dt;
    c[k].x = F.lift(gamma[k]);
  }
  for (std::size_t k = 0; k < N; ++k) {
    if (k >= 2 && k + 2 < N)
      c[k].v = (-c[k + 2].x + 8.0 * c[k + 1].x - 8.0 * c[k - 1].x + c[k - 2].x) / (12.0 * dt);
    else if (k == 0)
      c[k].v = (-3.0 * c[0].x + 4.0 * c[1].x - c[2].x) / (2.0 * dt);
    else if (k + 1 == N)
      c[k].v = (3.0 * c[k].x - 4.0 * c[k - 1].x + c[k - 2].x) / (2.0 * dt);
    else
      c[k].v = (c[k + 1].x - c[k - 1].x) / (2.0 * dt);
  }
  for (std::size_t k = 4; k + 4 < N; ++k) {
    const Vec a = curve_acceleration_at(F.ambient, c, k);
    const Vec& v = c[k].v;
    const Vec perp = a - (a.dot(v) / v.squaredNorm()) * v;
    const double denom = a.norm() + v.norm();
    r.defect = std::max(r.defect, denom > 0.0 ? perp.norm() / denom : 0.0);
    ++r.samples;
  }
  return r;
}

// ---------------------------------------------------------------- axis restriction

HeightFunction axis_surface(int n, std::span<const Expr> c) {
  const std::size_t need = static_cast<std::size_t>(n * (n - 1) / 2);
  if (c.size() != need)
    throw ValidationError("axis surface over " + std::to_string(n) + " variables needs " +
                          std::to_string(need) + " coefficients c_jk");
  Expr f = Expr::variable("x" + std::to_string(n), n - 1);
  std::size_t idx = 0;
  for (int j = 0; j < n - 1; ++j)
    for (int k = j; k < n - 1; ++k) {
      Expr xj = Expr::variable("x" + std::to_string(j + 1), j);
      Expr xk = Expr::variable("x" + std::to_string(k + 1), k);
      Expr term = Expr::binary(Expr::Kind::Mul, c[idx++], Expr::binary(Expr::Kind::Mul, xj, xk));
      f = Expr::binary(Expr::Kind::Add, f, term);
    }
  return HeightFunction::expression(n, f);
}

AxisResidualReport prop32_reference_check(const MetricChart& ambient, std::span<const Expr> c,
                                          std::span<const double> xn_grid, double admissible_tol) {
  const int n = ambient.n();
  GraphSurface F(axis_surface(n, c), ambient);
  AxisResidualReport r;
  r.jets = ambient.supports_jets();
  struct Point {
    double B, dB, A, dA;
  };
  auto pts = parallel_map<Point>(xn_grid.size(), [&](std::size_t k) {
    Vec p = Vec::Zero(n);
    p(n - 1) = xn_grid[k];
    if (!ambient.is_minkowski()) {
      AdmissibilityReport adm = ambient.is_admissible_at(F.lift(p), admissible_tol);
      if (!adm.admissible)
        throw ValidationError("ambient chart is not admissible along the axis at x_n = " +
                              std::to_string(xn_grid[k]));
    }
    Point out{};
    if (r.jets) {
      SurfaceJets J = surface_jets(F, p, 3);
      out.B = std::abs(J.B.value());
      out.A = std::abs(J.A.value());
      for (int i = 0; i < n - 1; ++i) {
        out.dB = std::max(out.dB, std::abs(J.B.gradient(i)));
        out.dA = std::max(out.dA, std::abs(J.A.gradient(i)));
      }
    } else {
      SurfaceJets J = surface_jets(F, p, 2);
      out.B = std::abs(J.B.value());
      out.A = std::abs(J.A.value());
      const double h = 1e-3;
      for (int i = 0; i < n - 1; ++i) {
        out.dB = std::max(out.dB, std::abs(J.B.gradient(i)));
        Vec pp = p, pm = p;
        pp(i) += h;
        pm(i) -= h;
        const double Ap = surface_jets(F, pp, 2).A.value();
        const double Am = surface_jets(F, pm, 2).A.value();
        out.dA = std::max(out.dA, std::abs(Ap - Am) / (2.0 * h));
      }
    }
    return out;
  });
  for (const Point& p : pts) {
    r.B = std::max(r.B, p.B);
    r.dB = std::max(r.dB, p.dB);
    r.A = std::max(r.A, p.A);
    r.dA = std::max(r.dA, p.dA);
  }
  r.points = pts.size();
  return r;
}

// ---------------------------------------------------------------- mean curvature bounds

TheoremDReport theorem_d_check(const GraphSurface& F, const Vec& o, const TheoremDOptions& opt) {
  const int n = F.n();
  PointReport pr = point_report(F, o);
  if (!is_lightlike(pr.cls.type))
    throw ValidationError(std::string("mean-curvature check needs a light-like point, o is ") +
                          causal_type_name(pr.cls.type));
  if (opt.radii.size() < 2) throw ValidationError("need at least two shell radii");
  TheoremDReport r;
  r.slope_threshold = opt.slope_threshold;

  for (double rad : opt.radii) {
    auto grid = box_grid(o, rad, opt.points_per_axis);
    std::vector<Vec> shell;
    for (const Vec& p : grid)
      if ((p - o).cwiseAbs().maxCoeff() > 0.5 * rad) shell.push_back(p);
    auto H = parallel_map<double>(shell.size(), [&](std::size_t k) {
      PointReport q = point_report(F, shell[k]);
      return q.H ? std::abs(*q.H) : -1.0;
    });
    ShellEstimate e;
    e.radius = rad;
    e.inf = std::numeric_limits<double>::infinity();
    e.sup = 0.0;
    for (double h : H) {
      if (h < 0.0) continue;
      e.inf = std::min(e.inf, h);
      e.sup = std::max(e.sup, h);
      ++e.points;
    }
    if (e.points == 0) e.inf = 0.0;
    r.shells.push_back(e);
  }

  for (const ShellEstimate& e : r.shells)
    if (e.points == 0 || e.inf <= 1e-12 * std::max(1.0, e.sup)) r.applicable = false;
  if (!r.applicable) {
    r.note = "|H| vanishes somewhere on the grid, so log |H| is unbounded below";
  } else {
    const ShellEstimate& outer = r.shells.front();
    const ShellEstimate& inner = r.shells.back();
    const double lr = std::log(inner.radius / outer.radius);
    r.sup_slope = std::log(inner.sup / outer.sup) / lr;
    r.inf_slope = std::log(inner.inf / outer.inf) / lr;
    bool sup_up = true, inf_down = true;
    for (std::size_t k = 1; k < r.shells.size(); ++k) {
      sup_up = sup_up && r.shells[k].sup > r.shells[k - 1].sup;
      inf_down = inf_down && r.shells[k].inf < r.shells[k - 1].inf;
    }
    r.sup_diverges = sup_up && r.sup_slope < -opt.slope_threshold;
    r.inf_degenerates = inf_down && r.inf_slope > opt.slope_threshold;
    r.bounded = !r.sup_diverges && !r.inf_degenerates;
    r.note = r.bounded ? "|H| stays bounded away from 0 and infinity on the shells"
                       : "|H| estimates diverge as the shells shrink";
  }

  if (pr.cls.type == CausalType::LightlikeDegenerate) {
    Normalization N = normalize_at_lightlike(F, o);
    r.line = verify_lightline(N.surface, Vec::Zero(n), opt.line_half_length, opt.line_step);
    // Order of B transversally to the line, from |B(s e1)| + |B(-s e1)|.
    auto transversal = [&](double s) {
      Vec e = Vec::Zero(n);
      e(0) = s;
      return std::abs(b_at(N.surface, e).B) + std::abs(b_at(N.surface, Vec(-e)).B);
    };
    const double s1 = 2e-2, s2 = 1e-2;
    const double b1 = transversal(s1), b2 = transversal(s2);
    if (b1 > 0.0 && b2 > 0.0) {
      r.B_order = std::log(b1 / b2) / std::log(s1 / s2);
      r.B_order_rounded = static_cast<int>(std::lround(r.B_order));
      r.even_m = r.B_order_rounded > 0 && r.B_order_rounded % 4 == 0;
    }
  }
  return r;
}

}  // namespace causal
