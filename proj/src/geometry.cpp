#include "relarea/geometry.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace relarea {

namespace {
constexpr double kCurvatureSamples = 512;

// Natural cubic spline second derivatives for knots u (strictly increasing).
std::vector<double> spline_second_derivs(const std::vector<double>& u,
                                         const std::vector<double>& y) {
  const int n = static_cast<int>(u.size());
  std::vector<double> m(n, 0.0), cp(n, 0.0), rhs(n, 0.0);
  if (n < 3) return m;
  // Thomas solve of the tridiagonal system; natural ends m0 = m_{n-1} = 0.
  std::vector<double> diag(n, 0.0), sub(n, 0.0), sup(n, 0.0);
  for (int i = 1; i < n - 1; ++i) {
    const double h0 = u[i] - u[i - 1], h1 = u[i + 1] - u[i];
    sub[i] = h0 / 6.0;
    diag[i] = (h0 + h1) / 3.0;
    sup[i] = h1 / 6.0;
    rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
  }
  cp[1] = sup[1] / diag[1];
  rhs[1] /= diag[1];
  for (int i = 2; i < n - 1; ++i) {
    const double denom = diag[i] - sub[i] * cp[i - 1];
    cp[i] = sup[i] / denom;
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / denom;
  }
  for (int i = n - 2; i >= 1; --i) m[i] = rhs[i] - cp[i] * (i + 1 < n - 1 ? m[i + 1] : 0.0);
  return m;
}

double spline_piece(double u, double u0, double u1, double y0, double y1, double m0, double m1,
                    int deriv) {
  const double h = u1 - u0, A = (u1 - u) / h, B = (u - u0) / h;
  switch (deriv) {
    case 0:
      return A * y0 + B * y1 + ((A * A * A - A) * m0 + (B * B * B - B) * m1) * h * h / 6.0;
    case 1:
      return (y1 - y0) / h + ((1 - 3 * A * A) * m0 + (3 * B * B - 1) * m1) * h / 6.0;
    default:
      return A * m0 + B * m1;
  }
}

bool segments_intersect(const Vec2& p, const Vec2& q, const Vec2& r, const Vec2& s) {
  const double d1 = cross2(q - p, r - p), d2 = cross2(q - p, s - p);
  const double d3 = cross2(s - r, p - r), d4 = cross2(s - r, q - r);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}
}  // namespace

Vec2 ArcCurve::pos(double t) const {
  if (t < a_) return pos_impl(a_) + (t - a_) * tangent_impl(a_);
  if (t > b_) return pos_impl(b_) + (t - b_) * tangent_impl(b_);
  return pos_impl(t);
}

Vec2 ArcCurve::tangent(double t) const { return tangent_impl(std::clamp(t, a_, b_)); }

double ArcCurve::curvature(double t) const {
  if (t < a_ || t > b_) return 0.0;
  return curvature_impl(t);
}

double ArcCurve::max_abs_curvature() const {
  double m = 0.0;
  for (int i = 0; i <= kCurvatureSamples; ++i) {
    const double t = a_ + (b_ - a_) * i / kCurvatureSamples;
    m = std::max(m, std::abs(curvature(t)));
  }
  return m;
}

double ArcCurve::min_self_distance() const {
  const int n = 512;
  const double h = length() / n;
  std::vector<Vec2> p(n + 1);
  for (int i = 0; i <= n; ++i) p[i] = pos(a_ + i * h);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const double arc_sep = (j - i) * h;
      const double d = (p[i] - p[j]).norm();
      // only count pairs where the curve folds back: euclidean distance much
      // shorter than the arc between them (a circle's chord never qualifies)
      if (d < 0.5 * arc_sep) best = std::min(best, d);
    }
  }
  return best;
}

SegmentCurve::SegmentCurve(Vec2 p0, Vec2 p1, double param_origin)
    : ArcCurve(param_origin, param_origin + (p1 - p0).norm(), Smoothness::analytic), p0_(p0) {
  if (length() <= 0) throw DegenerateCurve("segment endpoints coincide");
  dir_ = (p1 - p0) / length();
}

CircularArcCurve::CircularArcCurve(Vec2 center, double radius, double angle0, double angle1,
                                   double param_origin)
    : ArcCurve(param_origin, param_origin + radius * std::abs(angle1 - angle0),
               Smoothness::analytic),
      center_(center),
      radius_(radius),
      angle0_(angle0),
      sign_(angle1 > angle0 ? 1.0 : -1.0) {
  if (radius <= 0 || length() <= 0) throw DegenerateCurve("bad circular arc");
}

SplineCurve::SplineCurve(const std::vector<Vec2>& polyline)
    : ArcCurve(0.0, 0.0, Smoothness::c2) {
  const int n = static_cast<int>(polyline.size());
  if (n < 3) throw DegenerateCurve("need at least 3 points");
  double scale = 0.0;
  for (const auto& p : polyline) scale = std::max(scale, p.norm());
  scale = std::max(scale, 1e-300);
  for (int i = 0; i + 1 < n; ++i)
    if ((polyline[i + 1] - polyline[i]).norm() < 1e-13 * scale)
      throw DegenerateCurve("repeated adjacent point");
  for (int i = 0; i + 1 < n; ++i)
    for (int j = i + 2; j + 1 < n; ++j)
      if (segments_intersect(polyline[i], polyline[i + 1], polyline[j], polyline[j + 1]))
        throw SelfIntersecting("polyline segments cross");

  u_.resize(n);
  cx_.resize(n);
  cy_.resize(n);
  u_[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    cx_[i] = polyline[i].x();
    cy_[i] = polyline[i].y();
    if (i) u_[i] = u_[i - 1] + (polyline[i] - polyline[i - 1]).norm();
  }
  if (u_.back() <= 0) throw DegenerateCurve("zero length");
  mx_ = spline_second_derivs(u_, cx_);
  my_ = spline_second_derivs(u_, cy_);

  // Cumulative arc length at 4x the input density (Gauss-Legendre 5 per cell).
  static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                               0.4786286704993665, 0.2369268850561891};
  const int per_knot = 4;
  table_u_.push_back(0.0);
  table_t_.push_back(0.0);
  for (int i = 0; i + 1 < n; ++i) {
    for (int k = 0; k < per_knot; ++k) {
      const double ua = u_[i] + (u_[i + 1] - u_[i]) * k / per_knot;
      const double ub = u_[i] + (u_[i + 1] - u_[i]) * (k + 1) / per_knot;
      double seg = 0.0;
      for (int g = 0; g < 5; ++g) {
        const double uu = 0.5 * (ua + ub) + 0.5 * (ub - ua) * gx[g];
        seg += gw[g] * spline_eval(uu, 1).norm();
      }
      seg *= 0.5 * (ub - ua);
      table_t_.push_back(table_t_.back() + seg);
      table_u_.push_back(ub);
    }
  }
  b_ = table_t_.back();
  resampled_.reserve(table_u_.size());
  for (double uu : table_u_) resampled_.push_back(spline_eval(uu, 0));
}

Vec2 SplineCurve::spline_eval(double u, int deriv) const {
  const int n = static_cast<int>(u_.size());
  u = std::clamp(u, u_.front(), u_.back());
  int lo = static_cast<int>(std::upper_bound(u_.begin(), u_.end(), u) - u_.begin()) - 1;
  lo = std::clamp(lo, 0, n - 2);
  return Vec2(spline_piece(u, u_[lo], u_[lo + 1], cx_[lo], cx_[lo + 1], mx_[lo], mx_[lo + 1], deriv),
              spline_piece(u, u_[lo], u_[lo + 1], cy_[lo], cy_[lo + 1], my_[lo], my_[lo + 1], deriv));
}

double SplineCurve::chord_param(double t) const {
  t = std::clamp(t, a_, b_);
  int lo = static_cast<int>(std::upper_bound(table_t_.begin(), table_t_.end(), t) -
                            table_t_.begin()) - 1;
  lo = std::clamp(lo, 0, static_cast<int>(table_t_.size()) - 2);
  const double f = (t - table_t_[lo]) / std::max(table_t_[lo + 1] - table_t_[lo], 1e-300);
  double u = table_u_[lo] + f * (table_u_[lo + 1] - table_u_[lo]);
  // Newton on s(u) = t with ds/du = |x'(u)|; the table seed keeps it local.
  for (int it = 0; it < 8; ++it) {
    const double speed = spline_eval(u, 1).norm();
    if (speed < 1e-300) break;
    // local arc length from the table node, 3-point Gauss on [table_u, u]
    const double ua = table_u_[lo];
    static const double gx3[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static const double gw3[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    double seg = 0.0;
    for (int g = 0; g < 3; ++g)
      seg += gw3[g] * spline_eval(0.5 * (ua + u) + 0.5 * (u - ua) * gx3[g], 1).norm();
    seg *= 0.5 * (u - ua);
    const double resid = (table_t_[lo] + seg) - t;
    u -= resid / speed;
    u = std::clamp(u, u_.front(), u_.back());
    if (std::abs(resid) < 1e-13 * std::max(1.0, b_)) break;
  }
  return u;
}

Vec2 SplineCurve::pos_impl(double t) const { return spline_eval(chord_param(t), 0); }

Vec2 SplineCurve::tangent_impl(double t) const {
  const Vec2 d = spline_eval(chord_param(t), 1);
  return d / d.norm();
}

double SplineCurve::curvature_impl(double t) const {
  const double u = chord_param(t);
  const Vec2 d1 = spline_eval(u, 1), d2 = spline_eval(u, 2);
  const double sp = d1.norm();
  return cross2(d1, d2) / (sp * sp * sp);
}

std::shared_ptr<ArcCurve> arc_length_reparametrize(const std::vector<Vec2>& polyline) {
  return std::make_shared<SplineCurve>(polyline);
}

std::vector<Vec2> read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<Vec2> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (char& c : line)
      if (c == ',' || c == ';') c = ' ';
    std::istringstream ss(line);
    double x, y;
    if (ss >> x >> y) pts.emplace_back(x, y);  // header lines simply fail to parse
  }
  return pts;
}

void write_curve_csv(const std::string& path, const std::vector<Vec2>& pts) {
  std::ofstream out(path);
  out << "x,y\n";
  out.precision(17);
  for (const auto& p : pts) out << p.x() << "," << p.y() << "\n";
}

double max_tubular_halfwidth(const ArcCurve& curve) {
  const double kappa = curve.max_abs_curvature();
  double bound = curve.length();  // keeps the zero-curvature case finite
  if (kappa > 0) bound = std::min(bound, 1.0 / kappa);
  const double self = curve.min_self_distance();
  if (std::isfinite(self)) bound = std::min(bound, 0.5 * self);
  return 0.9 * bound;
}

TubularChart::TubularChart(std::shared_ptr<const ArcCurve> c, double d)
    : curve(std::move(c)), delta(d) {
  if (delta <= 0) throw Error("tubular half-width must be positive");
  build_scan_table();
}

void TubularChart::build_scan_table() {
  const double ext = 2.0 * delta;  // tangent extension beyond the endpoints
  const int n = std::max(64, static_cast<int>(std::ceil(8.0 * curve->length() / delta)));
  scan_t_.resize(n + 1);
  scan_p_.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = (curve->a() - ext) + (curve->length() + 2 * ext) * i / n;
    scan_t_[i] = t;
    scan_p_[i] = curve->pos(t);
  }
}

Vec2 TubularChart::map(double t, double s) const {
  if (t < curve->a() - 1e-12 || t > curve->b() + 1e-12 || std::abs(s) > delta * (1 + 1e-12))
    throw OutOfChart("map: (t,s) outside the chart rectangle");
  return curve->pos(t) + s * curve->normal(t);
}

TubularChart::Coords TubularChart::locate(const Vec2& p) const {
  int best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < scan_p_.size(); ++i) {
    const double d2 = (p - scan_p_[i]).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(i);
    }
  }
  const double lo = scan_t_[std::max(best - 1, 0)];
  const double hi = scan_t_[std::min<size_t>(best + 1, scan_t_.size() - 1)];
  double t = scan_t_[best];
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    const Vec2 r = p - curve->pos(t);
    const double g = r.dot(curve->tangent(t));
    const double dg = -1.0 + curve->curvature(t) * r.dot(curve->normal(t));
    if (std::abs(dg) < 1e-14) break;
    const double step = g / dg;
    t -= step;
    t = std::clamp(t, lo - (hi - lo), hi + (hi - lo));
    if (std::abs(step) < 1e-10) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    // the foot map degenerates near the tips; fall back to a bracketed search
    t = golden_section_min([&](double tt) { return (p - curve->pos(tt)).squaredNorm(); }, lo, hi,
                           1e-12);
  }
  Coords c;
  c.t = t;
  c.s = (p - curve->pos(t)).dot(curve->normal(t));
  c.in_chart = (t >= curve->a() - 1e-12 && t <= curve->b() + 1e-12 &&
                std::abs(c.s) <= delta * (1 + 1e-12));
  return c;
}

TubularChart::Coords TubularChart::inverse(const Vec2& p) const {
  Coords c = locate(p);
  if (!c.in_chart) throw OutOfChart("inverse: nearest-point residual exceeds the chart");
  return c;
}

}  // namespace relarea
