#include "relarea/contour.hpp"

#include <cmath>

namespace relarea {

namespace {
double cos_grade(double xi) { return 0.5 * (1.0 - std::cos(M_PI * xi)); }  // [0,1] -> [0,1]

Eigen::Matrix2d fd_jacobian(const Field2& f, const Vec2& p, double h) {
  Eigen::Matrix2d J;
  const Vec2 ex(h, 0), ey(0, h);
  const Vec2 dx = (f.value(p + ex) - f.value(p - ex)) / (2 * h);
  const Vec2 dy = (f.value(p + ey) - f.value(p - ey)) / (2 * h);
  J << dx.x(), dy.x(), dx.y(), dy.y();
  return J;
}

Eigen::Matrix2d field_jacobian(const Field2& f, const Vec2& p, double h) {
  return f.jacobian ? f.jacobian(p) : fd_jacobian(f, p, h);
}

// eliminates the h and h^2 terms from samples at h, 2h, 4h
double richardson3(double f_h, double f_2h, double f_4h) {
  return (8.0 * f_h - 6.0 * f_2h + f_4h) / 3.0;
}
}  // namespace

Eigen::Matrix2d JumpMap::jacobian(const Vec2& p, double fd_step) const {
  return field_jacobian(side_of(p) >= 0 ? u_plus : u_minus, p, fd_step);
}

double JumpMap::clearance() const {
  const auto& c = *chart.curve;
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 256; ++i) {
    const double t = c.a() + c.length() * i / 256.0;
    d = std::min(d, omega.boundary_distance(c.pos(t)));
  }
  return d - chart.delta;
}

TubularChart make_jump_chart(std::shared_ptr<const ArcCurve> curve, const Rect& omega) {
  double clear = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 256; ++i) {
    const double t = curve->a() + curve->length() * i / 256.0;
    clear = std::min(clear, omega.boundary_distance(curve->pos(t)));
  }
  if (clear <= 0) throw Error("jump curve not contained in the domain");
  const double delta = std::min(max_tubular_halfwidth(*curve), 0.9 * clear);
  return TubularChart(std::move(curve), delta);
}

Vec2 SpaceContour::dgamma_plus(double t) const {
  if (dgp) return dgp(t);
  const double h = 1e-6 * (b - a);
  const double t0 = std::max(a, t - h), t1 = std::min(b, t + h);
  return (gp(t1) - gp(t0)) / (t1 - t0);
}

Vec2 SpaceContour::dgamma_minus(double t) const {
  if (dgm) return dgm(t);
  const double h = 1e-6 * (b - a);
  const double t0 = std::max(a, t - h), t1 = std::min(b, t + h);
  return (gm(t1) - gm(t0)) / (t1 - t0);
}

Vec3 SpaceContour::point_plus(double t) const {
  const Vec2 v = gp(t);
  return Vec3(t, v.x(), v.y());
}

Vec3 SpaceContour::point_minus(double t) const {
  const Vec2 v = gm(t);
  return Vec3(t, v.x(), v.y());
}

SpaceContour::Polyline SpaceContour::polyline(int per_side) const {
  Polyline out;
  const int n = per_side + (per_side % 2);  // even, so the plus midpoint is a node
  out.pts.reserve(2 * n);
  for (int i = 0; i <= n; ++i) out.pts.push_back(point_minus(a + (b - a) * cos_grade(double(i) / n)));
  out.idx_b = n;
  for (int i = n - 1; i >= 1; --i)
    out.pts.push_back(point_plus(a + (b - a) * cos_grade(double(i) / n)));
  out.idx_third = n + n / 2;
  return out;
}

std::vector<Vec2> ConvexShadow::boundary_polyline(int per_side) const {
  std::vector<Vec2> pts;
  pts.reserve(2 * per_side);
  for (int i = 0; i <= per_side; ++i) {
    const double t = a + (b - a) * cos_grade(double(i) / per_side);
    pts.emplace_back(t, lo(t));
  }
  for (int i = per_side - 1; i >= 1; --i) {
    const double t = a + (b - a) * cos_grade(double(i) / per_side);
    pts.emplace_back(t, hi(t));
  }
  return pts;
}

Vec2 ConvexShadow::centroid() const {
  const int n = 512;
  double w_sum = 0, cx = 0, cy = 0;
  for (int i = 0; i < n; ++i) {
    const double t = a + (b - a) * (i + 0.5) / n;
    const double w = hi(t) - lo(t);
    w_sum += w;
    cx += t * w;
    cy += 0.5 * (hi(t) * hi(t) - lo(t) * lo(t));
  }
  return Vec2(cx / w_sum, cy / w_sum);
}

ConvexShadow shadow_of(const SpaceContour& c) {
  ConvexShadow s;
  s.a = c.a;
  s.b = c.b;
  auto gm = c.gm, gp = c.gp;
  s.lo = [gm](double t) { return gm(t).x(); };
  s.hi = [gp](double t) { return gp(t).x(); };
  return s;
}

SpaceContour extract_traces(const JumpMap& map, int n) {
  const auto& curve = *map.chart.curve;
  const double a = curve.a(), b = curve.b();
  const double h0 = map.chart.delta / 64.0;
  n = std::max(n, 16);

  auto sample = [&](double t, const Field2& f, double sgn) {
    const Vec2 base = curve.pos(t);
    const Vec2 nrm = curve.normal(t);
    const Vec2 f1 = f.value(base + sgn * h0 * nrm);
    const Vec2 f2 = f.value(base + sgn * 2 * h0 * nrm);
    const Vec2 f4 = f.value(base + sgn * 4 * h0 * nrm);
    return Vec2(richardson3(f1.x(), f2.x(), f4.x()), richardson3(f1.y(), f2.y(), f4.y()));
  };

  auto data = std::make_shared<std::vector<std::array<GridInterp1D, 2>>>();
  std::vector<double> px(n + 1), py(n + 1), mx(n + 1), my(n + 1);
  double scale = 1.0;
  for (int i = 0; i <= n; ++i) {
    const double t = a + (b - a) * cos_grade(double(i) / n);
    const Vec2 vp = sample(t, map.u_plus, +1.0);
    const Vec2 vm = sample(t, map.u_minus, -1.0);
    px[i] = vp.x();
    py[i] = vp.y();
    mx[i] = vm.x();
    my[i] = vm.y();
    scale = std::max({scale, vp.norm(), vm.norm()});
  }
  const double gap_a = std::hypot(px[0] - mx[0], py[0] - my[0]);
  const double gap_b = std::hypot(px[n] - mx[n], py[n] - my[n]);
  if (gap_a > 1e-6 * scale || gap_b > 1e-6 * scale)
    throw TraceMismatchAtTips("extrapolated endpoint gap " +
                              std::to_string(std::max(gap_a, gap_b)));
  px[0] = mx[0] = 0.5 * (px[0] + mx[0]);
  py[0] = my[0] = 0.5 * (py[0] + my[0]);
  px[n] = mx[n] = 0.5 * (px[n] + mx[n]);
  py[n] = my[n] = 0.5 * (py[n] + my[n]);

  data->push_back({GridInterp1D(px), GridInterp1D(py)});
  data->push_back({GridInterp1D(mx), GridInterp1D(my)});

  auto xi_of_t = [a, b, n](double t) {
    const double r = std::clamp(2.0 * (t - a) / (b - a) - 1.0, -1.0, 1.0);
    return n * std::acos(-r) / M_PI;  // grid index
  };
  SpaceContour out;
  out.a = a;
  out.b = b;
  out.smoothness = Smoothness::c2;
  out.gp = [data, xi_of_t](double t) {
    const double x = xi_of_t(t);
    return Vec2((*data)[0][0].value(x), (*data)[0][1].value(x));
  };
  out.gm = [data, xi_of_t](double t) {
    const double x = xi_of_t(t);
    return Vec2((*data)[1][0].value(x), (*data)[1][1].value(x));
  };
  return out;
}

BulkAreaResult bulk_area(const JumpMap& map, double strip_halfwidth, int n) {
  const auto& curve = *map.chart.curve;
  const Vec2 tip_a = curve.pos(curve.a()), tip_b = curve.pos(curve.b());

  auto quadrature = [&](double w, int res) {
    const double hx = (map.omega.x1 - map.omega.x0) / res;
    const double hy = (map.omega.y1 - map.omega.y0) / res;
    std::vector<double> tile_sum(res, 0.0);
    parallel_tiles(res, [&](int j) {
      double acc = 0;
      const double y = map.omega.y0 + (j + 0.5) * hy;
      for (int i = 0; i < res; ++i) {
        const Vec2 p(map.omega.x0 + (i + 0.5) * hx, y);
        if ((p - tip_a).norm() < w || (p - tip_b).norm() < w) continue;
        const auto loc = map.chart.locate(p);
        if (loc.t >= curve.a() && loc.t <= curve.b() && std::abs(loc.s) < w) continue;
        const double fd = std::min(hx, hy) / 8.0;
        acc += area_integrand(map.jacobian(p, fd));
      }
      tile_sum[j] = acc * hx * hy;
    });
    double total = 0;
    for (double s : tile_sum) total += s;
    return total;
  };

  BulkAreaResult r;
  double w = strip_halfwidth;
  for (int k = 0; k < 3; ++k, w *= 0.5) {
    r.w_sequence.push_back(w);
    r.areas.push_back(quadrature(w, n));
  }
  const double d1 = r.areas[1] - r.areas[0];
  const double d2 = r.areas[2] - r.areas[1];
  const double tiny = 1e-12 * (1.0 + std::abs(r.areas[0]));
  if (std::abs(d2) > std::abs(d1) * 1.05 + tiny)
    throw NonIntegrable("w-refinement sequence diverges");
  const auto ext = richardson_limit(r.areas);
  r.value = ext.limit;
  r.order = ext.order;
  const double coarse = quadrature(r.w_sequence.back(), n / 2);
  r.error = ext.error_estimate + std::abs(r.areas.back() - coarse) / 3.0;
  return r;
}

double singular_mass(const SpaceContour& contour) {
  return adaptive_simpson([&](double t) { return contour.gap(t); }, contour.a, contour.b, 1e-8,
                          40);
}

double piecewise_constant_relaxed_area(double omega_area,
                                       const std::vector<std::pair<double, double>>& jumps) {
  double s = omega_area;
  for (const auto& [jump, length] : jumps) s += jump * length;
  return s;
}

ConditionAReport check_condition_A(const std::function<Vec3(double)>& g, int n) {
  ConditionAReport rep;
  n = std::max(n, 64);
  std::vector<double> g1(n);
  for (int i = 0; i < n; ++i) g1[i] = g(2 * M_PI * i / n).x();
  const double dtheta = 2 * M_PI / n;

  double lo = g1[0], hi = g1[0];
  for (double v : g1) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double scale = std::max(hi - lo, 1e-300);

  std::vector<int> minima, maxima;
  for (int i = 0; i < n; ++i) {
    const double prev = g1[(i + n - 1) % n], next = g1[(i + 1) % n];
    auto less = [&](double x, int ix, double y, int iy) { return x < y || (x == y && ix < iy); };
    if (less(g1[i], i, prev, (i + n - 1) % n) && less(g1[i], i, next, (i + 1) % n))
      minima.push_back(i);
    if (less(prev, (i + n - 1) % n, g1[i], i) && less(next, (i + 1) % n, g1[i], i))
      maxima.push_back(i);
  }
  rep.n_minima = static_cast<int>(minima.size());
  rep.n_maxima = static_cast<int>(maxima.size());
  if (rep.n_minima > 1 || rep.n_maxima > 1)
    throw MultipleExtrema("g1 has " + std::to_string(rep.n_minima) + " minima / " +
                          std::to_string(rep.n_maxima) + " maxima");
  if (rep.n_minima == 0 || rep.n_maxima == 0) {
    rep.detail = "flat first component";
    return rep;
  }
  const int is = minima[0], in = maxima[0];
  rep.theta_s = is * dtheta;
  rep.theta_n = in * dtheta;

  auto second = [&](int i) {
    return (g1[(i + 1) % n] - 2 * g1[i] + g1[(i + n - 1) % n]) / (dtheta * dtheta);
  };
  rep.dds_margin = second(is);
  rep.ddn_margin = second(in);

  rep.min_speed = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const Vec3 d = (g(2 * M_PI * ((i + 1) % n) / n + (i + 1 >= n ? 2 * M_PI : 0.0)) -
                    g(2 * M_PI * i / n)) /
                   dtheta;
    rep.min_speed = std::min(rep.min_speed, d.norm());
  }

  rep.monotone_ok = true;
  for (int i = 0; i < n; ++i) {
    const bool ascending_arc = ((i - is + n) % n) < ((in - is + n) % n);
    const double diff = g1[(i + 1) % n] - g1[i];
    if (i == is || i == in || (i + 1) % n == is || (i + 1) % n == in) continue;
    if (ascending_arc ? diff < 0 : diff > 0) {
      rep.monotone_ok = false;
      break;
    }
  }

  const double margin_tol = 1e-2 * scale;
  rep.passed = rep.min_speed > 1e-8 && rep.monotone_ok && rep.dds_margin > margin_tol &&
               rep.ddn_margin < -margin_tol;
  if (!rep.passed && (rep.dds_margin <= margin_tol || rep.ddn_margin >= -margin_tol))
    rep.detail = "degenerate extremum margin";
  return rep;
}

namespace {
// max |grad u| over cell midpoints, one-sided closures
double grad_sup(const JumpMap& map, int res) {
  const double hx = (map.omega.x1 - map.omega.x0) / res;
  const double hy = (map.omega.y1 - map.omega.y0) / res;
  double m = 0;
  for (int j = 0; j < res; ++j)
    for (int i = 0; i < res; ++i) {
      const Vec2 p(map.omega.x0 + (i + 0.5) * hx, map.omega.y0 + (j + 0.5) * hy);
      m = std::max(m, map.jacobian(p, std::min(hx, hy) / 8.0).norm());
    }
  return m;
}

// integral over omega minus tip disks of a pointwise functional of the jacobian
double jac_integral(const JumpMap& map, double zeta, int res,
                    const std::function<double(const Eigen::Matrix2d&)>& f) {
  const auto& curve = *map.chart.curve;
  const Vec2 ta = curve.pos(curve.a()), tb = curve.pos(curve.b());
  const double hx = (map.omega.x1 - map.omega.x0) / res;
  const double hy = (map.omega.y1 - map.omega.y0) / res;
  std::vector<double> tile(res, 0.0);
  parallel_tiles(res, [&](int j) {
    double acc = 0;
    for (int i = 0; i < res; ++i) {
      const Vec2 p(map.omega.x0 + (i + 0.5) * hx, map.omega.y0 + (j + 0.5) * hy);
      if (zeta > 0 && ((p - ta).norm() < zeta || (p - tb).norm() < zeta)) continue;
      acc += f(map.jacobian(p, std::min(hx, hy) / 8.0));
    }
    tile[j] = acc * hx * hy;
  });
  double s = 0;
  for (double v : tile) s += v;
  return s;
}
}  // namespace

HypothesesReport check_hypotheses(const JumpMap& map) {
  HypothesesReport rep;
  const auto& curve = *map.chart.curve;
  const double a = curve.a(), b = curve.b();

  // (u1): simple C2 jump compactly inside omega
  const double clear = map.clearance();
  rep.u1.passed = clear > 0 && curve.length() > 0;
  rep.u1.measure = clear;
  rep.u1.detail = "tube clearance to the domain boundary";

  // traces
  SpaceContour tr;
  if (map.trace_plus && map.trace_minus) {
    tr.a = a;
    tr.b = b;
    tr.gp = [&map](double t) { return map.trace_plus(t); };
    tr.gm = [&map](double t) { return map.trace_minus(t); };
  } else {
    tr = extract_traces(map, 129);
  }
  double scale = 1.0;
  const int ng = 512;
  const double eta = 1e-3 * (b - a);
  rep.min_interior_gap = std::numeric_limits<double>::infinity();
  double argmin_t = a + eta;
  for (int i = 0; i <= ng; ++i) {
    const double t = (a + eta) + (b - a - 2 * eta) * cos_grade(double(i) / ng);
    scale = std::max({scale, tr.gp(t).norm(), tr.gm(t).norm()});
    if (tr.gap(t) < rep.min_interior_gap) {
      rep.min_interior_gap = tr.gap(t);
      argmin_t = t;
    }
  }
  {
    // refine around the coarse argmin so transversal crossings are caught
    const double win = (b - a) / ng;
    const double t_star = golden_section_min([&](double t) { return tr.gap(t); },
                                             std::max(a + eta, argmin_t - win),
                                             std::min(b - eta, argmin_t + win), 1e-12);
    rep.min_interior_gap = std::min(rep.min_interior_gap, tr.gap(t_star));
  }
  // local Lipschitz bound on compact interior subintervals (the traces need
  // not be Lipschitz up to the tips)
  auto max_slope = [&](int m) {
    double s = 0;
    const double lo = a + 0.02 * (b - a), hi = b - 0.02 * (b - a);
    for (int i = 0; i < m; ++i) {
      const double t0 = lo + (hi - lo) * double(i) / m, t1 = lo + (hi - lo) * double(i + 1) / m;
      s = std::max(s, (tr.gp(t1) - tr.gp(t0)).norm() / (t1 - t0));
      s = std::max(s, (tr.gm(t1) - tr.gm(t0)).norm() / (t1 - t0));
    }
    return s;
  };
  const double lip = max_slope(128), lip_fine = max_slope(256);
  rep.endpoint_gap_a = tr.gap(a);
  rep.endpoint_gap_b = tr.gap(b);
  rep.interior_gap_ok = rep.min_interior_gap > 1e-7 * scale;

  const bool endpoints_ok = rep.endpoint_gap_a < 1e-6 * scale && rep.endpoint_gap_b < 1e-6 * scale;
  const bool lip_ok = lip_fine < 1.15 * lip + 1e-12;
  rep.u3.passed = endpoints_ok && lip_ok && rep.interior_gap_ok;
  rep.u3.measure = lip_fine;
  rep.u3.detail = "interior trace Lipschitz bound / endpoint and interior gap checks";

  // (u2): Lipschitz map off the jump -> sup |grad u| stays bounded under refinement
  const double s1 = grad_sup(map, 96), s2 = grad_sup(map, 192), s3 = grad_sup(map, 384);
  const bool unbounded = s3 > 1.15 * s2 && s2 > 1.15 * s1;
  rep.u2.passed = !unbounded;
  rep.u2.measure = s3;
  rep.u2.detail = "sup |grad u| across grid refinement (96/192/384)";

  // (u4): convex shadow
  {
    const int m = 256;
    double worst_lo = 0, worst_hi = 0;
    bool ordered = true;
    for (int i = 1; i < m; ++i) {
      const double h = (b - a) / m;
      const double t = a + i * h;
      const double d2lo = tr.gm(t + h).x() - 2 * tr.gm(t).x() + tr.gm(t - h).x();
      const double d2hi = tr.gp(t + h).x() - 2 * tr.gp(t).x() + tr.gp(t - h).x();
      worst_lo = std::min(worst_lo, d2lo);   // must stay >= -tol (convex)
      worst_hi = std::max(worst_hi, d2hi);   // must stay <= +tol (concave)
      if (tr.gm(t).x() >= tr.gp(t).x()) ordered = false;
    }
    const double tol = 1e-8 * scale;
    rep.u4.passed = ordered && worst_lo > -tol && worst_hi < tol;
    rep.u4.measure = std::max(-worst_lo, worst_hi);
    rep.u4.detail = "second-difference convexity of the shadow boundary";
  }

  // (h2): W^{1,2} probes away from the tip disks, and |M(grad u)| in L^1
  {
    const double delta = map.chart.delta;
    bool ok = true;
    for (double zeta : {delta / 4.0, delta / 8.0}) {
      const double i1 = jac_integral(map, zeta, 192,
                                     [](const Eigen::Matrix2d& J) { return J.row(0).squaredNorm(); });
      const double i2 = jac_integral(map, zeta, 384,
                                     [](const Eigen::Matrix2d& J) { return J.row(0).squaredNorm(); });
      rep.w12_probes.emplace_back(zeta, i2);
      if (std::abs(i2 - i1) > 0.05 * std::abs(i2) + 1e-9) ok = false;
    }
    const double u2c = jac_integral(map, 0.0, 192,
                                    [](const Eigen::Matrix2d& J) { return J.row(1).squaredNorm(); });
    const double u2f = jac_integral(map, 0.0, 384,
                                    [](const Eigen::Matrix2d& J) { return J.row(1).squaredNorm(); });
    if (std::abs(u2f - u2c) > 0.05 * std::abs(u2f) + 1e-9) ok = false;
    const double m1 = jac_integral(map, 0.0, 192, area_integrand);
    const double m2 = jac_integral(map, 0.0, 384, area_integrand);
    if (std::abs(m2 - m1) > 0.05 * std::abs(m2) + 1e-9) ok = false;
    rep.h2.passed = ok;
    rep.h2.measure = rep.w12_probes.back().second;
    rep.h2.detail = "grad u1 square-integrable off tip disks; u2 and |M| integrable";
  }

  // (h3): continuous BV traces with matching endpoints and interior gap
  rep.h3.passed = endpoints_ok && rep.interior_gap_ok;
  rep.h3.measure = rep.min_interior_gap;
  rep.h3.detail = "trace endpoint agreement and interior separation";

  return rep;
}

}  // namespace relarea
