#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "relarea/errors.hpp"
#include "relarea/util.hpp"

namespace relarea {

enum class Smoothness { piecewise_c2, c2, analytic };

// Plane curve in arc-length parametrization on [a, b]; |pos'(t)| == 1.
// Evaluation is defined on a linear tangent extension outside [a, b] so that
// signed distance stays smooth across the normal lines at the endpoints.
class ArcCurve {
 public:
  virtual ~ArcCurve() = default;
  double a() const { return a_; }
  double b() const { return b_; }
  double length() const { return b_ - a_; }
  Smoothness smoothness() const { return smoothness_; }

  Vec2 pos(double t) const;
  Vec2 tangent(double t) const;
  Vec2 normal(double t) const { return perp(tangent(t)); }
  double curvature(double t) const;  // zero on the extension

  double max_abs_curvature() const;
  // Smallest near-approach distance between parameter-distant points
  // (pairs that fold back towards each other); +inf for curves that don't.
  double min_self_distance() const;

 protected:
  ArcCurve(double a, double b, Smoothness s) : a_(a), b_(b), smoothness_(s) {}
  virtual Vec2 pos_impl(double t) const = 0;
  virtual Vec2 tangent_impl(double t) const = 0;
  virtual double curvature_impl(double t) const = 0;

  double a_, b_;
  Smoothness smoothness_;
};

// param_origin shifts the arc-length parameter: t ranges over
// [param_origin, param_origin + length].
class SegmentCurve final : public ArcCurve {
 public:
  SegmentCurve(Vec2 p0, Vec2 p1, double param_origin = 0.0);

 private:
  Vec2 pos_impl(double t) const override { return p0_ + (t - a_) * dir_; }
  Vec2 tangent_impl(double) const override { return dir_; }
  double curvature_impl(double) const override { return 0.0; }
  Vec2 p0_, dir_;
};

// Circular arc through angles [angle0, angle1] (radians, measured from +x);
// traversed with increasing angle if angle1 > angle0.
class CircularArcCurve final : public ArcCurve {
 public:
  CircularArcCurve(Vec2 center, double radius, double angle0, double angle1,
                   double param_origin = 0.0);

 private:
  double ang(double t) const { return angle0_ + sign_ * (t - a_) / radius_; }
  Vec2 pos_impl(double t) const override {
    return center_ + radius_ * Vec2(std::cos(ang(t)), std::sin(ang(t)));
  }
  Vec2 tangent_impl(double t) const override {
    return sign_ * Vec2(-std::sin(ang(t)), std::cos(ang(t)));
  }
  double curvature_impl(double) const override { return sign_ / radius_; }
  Vec2 center_;
  double radius_, angle0_, sign_;
};

// Arbitrary closures; caller guarantees arc-length parametrization.
class AnalyticCurve final : public ArcCurve {
 public:
  AnalyticCurve(double a, double b, std::function<Vec2(double)> pos,
                std::function<Vec2(double)> tan, std::function<double(double)> kappa)
      : ArcCurve(a, b, Smoothness::analytic),
        pos_(std::move(pos)),
        tan_(std::move(tan)),
        kappa_(std::move(kappa)) {}

 private:
  Vec2 pos_impl(double t) const override { return pos_(t); }
  Vec2 tangent_impl(double t) const override { return tan_(t); }
  double curvature_impl(double t) const override { return kappa_(t); }
  std::function<Vec2(double)> pos_;
  std::function<Vec2(double)> tan_;
  std::function<double(double)> kappa_;
};

// Cubic spline through a sample polyline, reparametrized by arc length.
// The spline is fitted in the chord parameter; arc length is inverted through
// a cumulative table at 4x the input density plus Newton refinement, so the
// unit-speed property holds to quadrature accuracy.
class SplineCurve final : public ArcCurve {
 public:
  explicit SplineCurve(const std::vector<Vec2>& polyline);

  const std::vector<Vec2>& resampled() const { return resampled_; }

 private:
  Vec2 pos_impl(double t) const override;
  Vec2 tangent_impl(double t) const override;
  double curvature_impl(double t) const override;

  double chord_param(double t) const;  // arc length -> spline parameter
  Vec2 spline_eval(double u, int deriv) const;

  std::vector<double> u_;                 // spline knots (chord parameter)
  std::vector<double> cx_, cy_;           // node values
  std::vector<double> mx_, my_;           // second derivatives (natural spline)
  std::vector<double> table_t_, table_u_; // cumulative arc length -> knot parameter
  std::vector<Vec2> resampled_;
};

// arc_length_reparametrize: polyline -> unit-speed curve.
// Throws DegenerateCurve (repeated adjacent points / zero length) and
// SelfIntersecting (crossing segments or non-adjacent near-coincidence).
std::shared_ptr<ArcCurve> arc_length_reparametrize(const std::vector<Vec2>& polyline);

std::vector<Vec2> read_curve_csv(const std::string& path);
void write_curve_csv(const std::string& path, const std::vector<Vec2>& pts);

// delta <= 0.9 * min(1/max|kappa|, half min self distance), capped by the
// curve length so the straight-segment case stays finite.
double max_tubular_halfwidth(const ArcCurve& curve);

// Tubular coordinates around the curve: map(t,s) = pos(t) + s * normal(t).
struct TubularChart {
  std::shared_ptr<const ArcCurve> curve;
  double delta = 0.0;

  TubularChart() = default;
  TubularChart(std::shared_ptr<const ArcCurve> c, double d);

  Vec2 map(double t, double s) const;  // throws OutOfChart outside R = [a,b] x [-delta,delta]

  struct Coords {
    double t = 0.0;  // foot parameter (may lie on the tangent extension)
    double s = 0.0;  // signed distance, positive on the counterclockwise-normal side
    bool in_chart = false;
  };
  // Nearest-point coordinates via Newton on the foot-point equation, seeded
  // from a coarse scan; never throws. in_chart == t in [a,b] && |s| <= delta.
  Coords locate(const Vec2& p) const;
  // Spec-facing inverse: throws OutOfChart when locate() lands outside R.
  Coords inverse(const Vec2& p) const;

  double signed_distance(const Vec2& p) const { return locate(p).s; }
  Vec2 grad_d(double t) const { return curve->normal(t); }
  Vec2 grad_t(double t, double s) const {
    return curve->tangent(t) / (1.0 - curve->curvature(t) * s);
  }
  double det_jacobian(double t, double s) const { return 1.0 - curve->curvature(t) * s; }

 private:
  void build_scan_table();
  std::vector<double> scan_t_;
  std::vector<Vec2> scan_p_;
};

}  // namespace relarea
