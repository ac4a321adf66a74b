#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relarea/geometry.hpp"

namespace relarea {

struct Rect {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  double area() const { return (x1 - x0) * (y1 - y0); }
  bool contains(const Vec2& p) const {
    return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1;
  }
  double boundary_distance(const Vec2& p) const {
    return std::min(std::min(p.x() - x0, x1 - p.x()), std::min(p.y() - y0, y1 - p.y()));
  }
};

// R^2 -> R^2 field with optional analytic Jacobian (finite differences otherwise).
struct Field2 {
  std::function<Vec2(const Vec2&)> value;
  std::function<Eigen::Matrix2d(const Vec2&)> jacobian;  // may be null
};

enum class RegularityClass { lipschitz, sobolev_w12 };

// Discontinuous map on a rectangle: two one-sided closures glued across the
// jump curve carried by the chart. Each closure is evaluable on all of omega.
struct JumpMap {
  Rect omega;
  TubularChart chart;
  Field2 u_plus, u_minus;
  // side(p) > 0 selects u_plus; fixtures supply their own global rule, the
  // default uses the extended chart coordinates.
  std::function<double(const Vec2&)> side;
  RegularityClass regularity = RegularityClass::lipschitz;
  // analytic traces when known (oracles and boundary rows); null otherwise
  std::function<Vec2(double)> trace_plus, trace_minus;

  double side_of(const Vec2& p) const { return side ? side(p) : chart.locate(p).s; }
  Vec2 value(const Vec2& p) const {
    return side_of(p) >= 0 ? u_plus.value(p) : u_minus.value(p);
  }
  Eigen::Matrix2d jacobian(const Vec2& p, double fd_step = 1e-6) const;
  double clearance() const;  // distance of the closed chart tube to the rectangle boundary
};

// Makes a chart for a jump curve inside omega: delta capped by 0.9x the
// clearance of the curve to the rectangle boundary.
TubularChart make_jump_chart(std::shared_ptr<const ArcCurve> curve, const Rect& omega);

struct SpaceContour {
  double a = 0, b = 0;
  std::function<Vec2(double)> gp, gm;    // traces composed with the arc-length parametrization
  std::function<Vec2(double)> dgp, dgm;  // optional derivatives
  Smoothness smoothness = Smoothness::c2;

  Vec2 gamma_plus(double t) const { return gp(t); }
  Vec2 gamma_minus(double t) const { return gm(t); }
  Vec2 dgamma_plus(double t) const;
  Vec2 dgamma_minus(double t) const;
  Vec3 point_plus(double t) const;
  Vec3 point_minus(double t) const;
  double gap(double t) const { return (gp(t) - gm(t)).norm(); }

  // Closed polyline of Gamma: gamma^- from a to b, then gamma^+ back,
  // cosine-graded towards the junctions. Also reports the polyline indices of
  // the two junctions and of the midpoint of the plus branch.
  struct Polyline {
    std::vector<Vec3> pts;  // closed, pts.front() near (a, gamma(a))
    int idx_b = 0;          // junction (b, gamma(b))
    int idx_third = 0;      // (a+b)/2 on the plus branch
  };
  Polyline polyline(int per_side) const;
};

struct ConvexShadow {
  double a = 0, b = 0;
  std::function<double(double)> lo, hi;  // gamma_1^- and gamma_1^+
  bool contains(const Vec2& q, double tol = 0.0) const {
    return q.x() >= a - tol && q.x() <= b + tol && q.y() >= lo(q.x()) - tol &&
           q.y() <= hi(q.x()) + tol;
  }
  Vec2 corner_a() const { return Vec2(a, 0.5 * (lo(a) + hi(a))); }
  Vec2 corner_b() const { return Vec2(b, 0.5 * (lo(b) + hi(b))); }
  std::vector<Vec2> boundary_polyline(int per_side) const;  // CCW, graded at corners
  Vec2 centroid() const;
};

ConvexShadow shadow_of(const SpaceContour& c);

// --- operations ---------------------------------------------------------

// One-sided limits along the inward normal offsets, Richardson-extrapolated
// over h in {4h0, 2h0, h0} with h0 = delta/64; endpoints snapped to the
// common value. Throws TraceMismatchAtTips when the extrapolated endpoint
// gap exceeds 1e-6 (relative to the trace scale).
SpaceContour extract_traces(const JumpMap& map, int n);

inline double area_integrand(const Eigen::Matrix2d& grad) {
  const double det = grad(0, 0) * grad(1, 1) - grad(0, 1) * grad(1, 0);
  return std::sqrt(1.0 + grad.row(0).squaredNorm() + grad.row(1).squaredNorm() + det * det);
}

struct BulkAreaResult {
  double value = 0;           // extrapolated w -> 0 limit
  double error = 0;           // Richardson estimate (quadrature + w)
  std::vector<double> w_sequence, areas;
  double order = 0;
};
// Midpoint quadrature of the area integrand over omega minus the open strip
// of half-width w around the jump and the two tip disks of radius w, for
// w, w/2, w/4, extrapolated to w -> 0. Throws NonIntegrable if the sequence
// diverges.
BulkAreaResult bulk_area(const JumpMap& map, double strip_halfwidth, int n);

double singular_mass(const SpaceContour& contour);

double piecewise_constant_relaxed_area(double omega_area,
                                       const std::vector<std::pair<double, double>>& jumps);

struct ConditionAReport {
  bool passed = false;
  double min_speed = 0;           // min |g'|
  double theta_s = 0, theta_n = 0;
  double dds_margin = 0, ddn_margin = 0;  // g1'' at the extrema (signed margins)
  bool monotone_ok = false;
  int n_minima = 0, n_maxima = 0;
  std::string detail;
};
// Throws MultipleExtrema when g1 has more than one (discrete) local min or max.
ConditionAReport check_condition_A(const std::function<Vec3(double)>& g, int n);

struct HypothesisItem {
  bool passed = false;
  double measure = 0;
  std::string detail;
};
struct HypothesesReport {
  HypothesisItem u1, u2, u3, u4, h2, h3;
  bool interior_gap_ok = false;
  double min_interior_gap = 0;
  double endpoint_gap_a = 0, endpoint_gap_b = 0;
  std::vector<std::pair<double, double>> w12_probes;  // (zeta, integral)
};
HypothesesReport check_hypotheses(const JumpMap& map);

}  // namespace relarea
