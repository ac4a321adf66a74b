#include "relarea/fixtures.hpp"

#include <cmath>

#include "relarea/errors.hpp"

namespace relarea {

namespace {
double dsmoothstep_quintic(double x) {
  if (x <= 0 || x >= 1) return 0.0;
  return 30.0 * x * x * (1.0 - x) * (1.0 - x);
}
}  // namespace

Fixture make_circle_fixture(double omega_half, double tilt) {
  Fixture f;
  f.name = tilt == 0.0 ? "circle" : "planar-tilt";
  f.description = tilt == 0.0
                      ? "perturbed-circle map: square-root jump across [-1,1]x{0}, boundary "
                        "curve the unit circle in the (t,xi) plane"
                      : "circle map with the second component tilted by a factor, boundary "
                        "curve planar (equality case)";
  f.satisfies = {"u1", "u3", "u4", "h2", "h3", "A"};
  f.has_condition_A = true;
  f.needs_tip_disks = true;
  f.planar = true;
  f.planar_area = M_PI * std::sqrt(1.0 + tilt * tilt);

  auto map = std::make_shared<JumpMap>();
  map->omega = Rect{-omega_half, omega_half, -omega_half, omega_half};
  map->chart = make_jump_chart(std::make_shared<SegmentCurve>(Vec2(-1, 0), Vec2(1, 0), -1.0),
                               map->omega);
  map->regularity = RegularityClass::sobolev_w12;
  map->side = [](const Vec2& p) { return p.y(); };

  auto u1 = [](const Vec2& p, double sgn) {
    if (std::abs(p.x()) < 1.0) return sgn * std::sqrt(1.0 - p.x() * p.x() + p.y() * p.y());
    return p.y();
  };
  auto grad1 = [](const Vec2& p, double sgn) {
    if (std::abs(p.x()) < 1.0) {
      const double w = std::sqrt(1.0 - p.x() * p.x() + p.y() * p.y());
      return Vec2(-sgn * p.x() / w, sgn * p.y() / w);
    }
    return Vec2(0.0, 1.0);
  };
  auto make_field = [&](double sgn) {
    Field2 fld;
    fld.value = [u1, sgn, tilt](const Vec2& p) {
      const double v = u1(p, sgn);
      return Vec2(v, tilt * v);
    };
    fld.jacobian = [grad1, sgn, tilt](const Vec2& p) {
      const Vec2 g = grad1(p, sgn);
      Eigen::Matrix2d J;
      J.row(0) = g.transpose();
      J.row(1) = tilt * g.transpose();
      return J;
    };
    return fld;
  };
  map->u_plus = make_field(+1.0);
  map->u_minus = make_field(-1.0);
  map->trace_plus = [tilt](double t) {
    const double r = std::sqrt(std::max(1.0 - t * t, 0.0));
    return Vec2(r, tilt * r);
  };
  map->trace_minus = [tilt](double t) {
    const double r = std::sqrt(std::max(1.0 - t * t, 0.0));
    return Vec2(-r, -tilt * r);
  };
  f.map = map;

  SpaceContour c;
  c.a = -1.0;
  c.b = 1.0;
  c.gp = map->trace_plus;
  c.gm = map->trace_minus;
  c.dgp = [tilt](double t) {
    const double tc = std::clamp(t, -1.0 + 1e-12, 1.0 - 1e-12);
    const double d = -tc / std::sqrt(1.0 - tc * tc);
    return Vec2(d, tilt * d);
  };
  c.dgm = [tilt](double t) {
    const double tc = std::clamp(t, -1.0 + 1e-12, 1.0 - 1e-12);
    const double d = tc / std::sqrt(1.0 - tc * tc);
    return Vec2(d, tilt * d);
  };
  c.smoothness = Smoothness::analytic;
  f.contour = c;
  f.gamma = [tilt](double th) { return Vec3(-std::cos(th), -std::sin(th), -tilt * std::sin(th)); };
  return f;
}

Fixture make_parab_fixture(double cc, double d, double omega_half) {
  Fixture f;
  f.name = "parab";
  f.description = "Lipschitz map with parabolic shadow: traces open a convex lens, Dirichlet "
                  "data quartic on the upper edge";
  f.satisfies = {"u1", "u2", "u3", "u4", "h3"};
  f.needs_tip_disks = false;

  auto map = std::make_shared<JumpMap>();
  map->omega = Rect{-omega_half, omega_half, -omega_half, omega_half};
  map->chart = make_jump_chart(std::make_shared<SegmentCurve>(Vec2(-1, 0), Vec2(1, 0), -1.0),
                               map->omega);
  map->regularity = RegularityClass::lipschitz;
  map->side = [](const Vec2& p) { return p.y(); };

  auto clampw = [](double x) { return std::clamp(x, -1.0, 1.0); };
  map->u_plus.value = [cc, d, clampw](const Vec2& p) {
    const double w = clampw(p.x()), q = 1.0 - w * w;
    return Vec2(q, cc * w + d * q * q);
  };
  map->u_plus.jacobian = [cc, d, clampw](const Vec2& p) {
    const double w = clampw(p.x());
    const double dw = std::abs(p.x()) < 1.0 ? 1.0 : 0.0;
    Eigen::Matrix2d J;
    J << -2 * w * dw, 0, (cc - 4 * d * w * (1 - w * w)) * dw, 0;
    return J;
  };
  map->u_minus.value = [cc, clampw](const Vec2& p) {
    const double w = clampw(p.x());
    return Vec2(-(1.0 - w * w), cc * w);
  };
  map->u_minus.jacobian = [cc, clampw](const Vec2& p) {
    const double w = clampw(p.x());
    const double dw = std::abs(p.x()) < 1.0 ? 1.0 : 0.0;
    Eigen::Matrix2d J;
    J << 2 * w * dw, 0, cc * dw, 0;
    return J;
  };
  map->trace_plus = [cc, d](double t) {
    const double q = 1.0 - t * t;
    return Vec2(q, cc * t + d * q * q);
  };
  map->trace_minus = [cc](double t) { return Vec2(-(1.0 - t * t), cc * t); };
  f.map = map;

  SpaceContour c;
  c.a = -1.0;
  c.b = 1.0;
  c.gp = map->trace_plus;
  c.gm = map->trace_minus;
  c.dgp = [cc, d](double t) { return Vec2(-2 * t, cc - 4 * d * t * (1 - t * t)); };
  c.dgm = [cc](double t) { return Vec2(2 * t, cc); };
  c.smoothness = Smoothness::c2;
  f.contour = c;
  f.gamma = [cc, d](double th) {
    const double s = std::sin(th);
    const double upper = th > M_PI ? 1.0 : 0.0;
    return Vec3(-std::cos(th), -s * std::abs(s),
                -cc * std::cos(th) + d * s * s * s * s * upper);
  };
  return f;
}

Fixture make_arc_fixture(double radius, double half_angle, double amp, double omega_half) {
  Fixture f;
  f.name = "arc";
  f.description = "curved jump (circular arc): compactly supported angular bump, planar "
                  "boundary curve; exercises the nonzero-curvature chart";
  f.satisfies = {"u1", "u2", "u3", "h3"};
  f.needs_tip_disks = false;
  f.planar = true;

  const double span = radius * half_angle;  // arc half-length
  // integral of (1 - x^2)^3 over [-1,1] is 32/35
  f.planar_area = 2.0 * amp * span * 32.0 / 35.0;

  auto map = std::make_shared<JumpMap>();
  map->omega = Rect{-omega_half, omega_half, -omega_half, omega_half};
  map->chart = make_jump_chart(
      std::make_shared<CircularArcCurve>(Vec2(0, 0), radius, M_PI / 2 + half_angle,
                                         M_PI / 2 - half_angle, -span),
      map->omega);
  map->regularity = RegularityClass::lipschitz;
  map->side = [radius](const Vec2& p) { return p.norm() - radius; };

  auto bump = [=](const Vec2& p, double sgn) -> std::pair<double, Vec2> {
    const double r = p.norm();
    if (r < 0.52 * radius) return {0.0, Vec2(0, 0)};
    const double tau = std::atan2(p.x(), p.y());
    const double x = tau / half_angle;
    if (std::abs(x) >= 1.0) return {0.0, Vec2(0, 0)};
    const double q = 1.0 - x * x;
    const double G = q * q * q;
    const double dG = -6.0 * x * q * q / half_angle;  // d/d tau
    const double bs = (r / radius - 0.5) / 0.3;
    const double B = smoothstep_quintic(bs);
    const double dB = dsmoothstep_quintic(bs) / (0.3 * radius);
    const Vec2 grad_tau(p.y() / (r * r), -p.x() / (r * r));
    const Vec2 grad_r = p / r;
    return {sgn * amp * G * B, sgn * amp * (dG * B * grad_tau + G * dB * grad_r)};
  };
  auto make_field = [&](double sgn) {
    Field2 fld;
    fld.value = [bump, sgn](const Vec2& p) { return Vec2(bump(p, sgn).first, 0.0); };
    fld.jacobian = [bump, sgn](const Vec2& p) {
      Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
      J.row(0) = bump(p, sgn).second.transpose();
      return J;
    };
    return fld;
  };
  map->u_plus = make_field(+1.0);
  map->u_minus = make_field(-1.0);
  auto trace = [=](double t, double sgn) {
    const double x = t / span, q = 1.0 - std::clamp(x * x, 0.0, 1.0);
    return Vec2(sgn * amp * q * q * q, 0.0);
  };
  map->trace_plus = [trace](double t) { return trace(t, +1.0); };
  map->trace_minus = [trace](double t) { return trace(t, -1.0); };
  f.map = map;

  SpaceContour c;
  c.a = -span;
  c.b = span;
  c.gp = map->trace_plus;
  c.gm = map->trace_minus;
  auto dtrace = [=](double t, double sgn) {
    const double x = std::clamp(t / span, -1.0, 1.0), q = 1.0 - x * x;
    return Vec2(sgn * amp * (-6.0 * x * q * q / span), 0.0);
  };
  c.dgp = [dtrace](double t) { return dtrace(t, +1.0); };
  c.dgm = [dtrace](double t) { return dtrace(t, -1.0); };
  c.smoothness = Smoothness::c2;
  f.contour = c;
  f.gamma = [=](double th) {
    const double s = std::sin(th);
    const double s5 = s * s * s * s * s;
    return Vec3(-span * std::cos(th), -amp * s5 * std::abs(s), 0.0);
  };
  return f;
}

Fixture make_helix_contour(double winding, double flatten) {
  Fixture f;
  f.name = "helix";
  f.description = "analytic space curve: near-planar lower branch, winding upper branch; "
                  "nondegenerate junctions, non-graph minimizer";
  f.satisfies = {"A"};
  f.has_condition_A = true;
  auto g = [winding, flatten](double th) {
    const double phi = winding * (1.0 - std::cos(th));
    return Vec3(-std::cos(th), -std::sin(th) * std::cos(phi),
                flatten * std::sin(th) * std::sin(phi));
  };
  f.gamma = g;
  SpaceContour c;
  c.a = -1.0;
  c.b = 1.0;
  c.gm = [g](double t) {
    const Vec3 v = g(std::acos(std::clamp(-t, -1.0, 1.0)));
    return Vec2(v.y(), v.z());
  };
  c.gp = [g](double t) {
    const Vec3 v = g(2.0 * M_PI - std::acos(std::clamp(-t, -1.0, 1.0)));
    return Vec2(v.y(), v.z());
  };
  c.smoothness = Smoothness::analytic;
  f.contour = c;
  return f;
}

Fixture make_nondege_contour() {
  Fixture f;
  f.name = "nondege";
  f.description = "planar contour whose first component has a quartic-flat minimum: violates "
                  "the junction nondegeneracy, used as the transversality negative control";
  f.satisfies = {};
  auto g = [](double th) {
    return Vec3(-std::cos(th) + 0.25 * std::cos(2 * th), -std::sin(th), 0.0);
  };
  f.gamma = g;
  f.planar = true;
  {
    std::vector<Vec2> poly;
    for (int i = 0; i < 2048; ++i) {
      const Vec3 v = g(2 * M_PI * i / 2048);
      poly.emplace_back(v.x(), v.y());
    }
    f.planar_area = std::abs(polygon_area(poly));
  }
  SpaceContour c;
  c.a = -1.25;  // min of g1 is -0.75 at theta=0 ... max 1.25 at pi
  c.b = 1.25;
  // traces parametrized by g1: invert numerically per branch
  auto invert = [g](double t, bool upper) {
    double lo = upper ? M_PI : 0.0, hi = upper ? 2 * M_PI : M_PI;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double v = g(mid).x();
      const bool take_hi = upper ? (v > t) : (v < t);
      (take_hi ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  c.gm = [g, invert](double t) {
    const Vec3 v = g(invert(std::clamp(t, -0.75, 1.25), false));
    return Vec2(v.y(), v.z());
  };
  c.gp = [g, invert](double t) {
    const Vec3 v = g(invert(std::clamp(t, -0.75, 1.25), true));
    return Vec2(v.y(), v.z());
  };
  f.contour = c;
  return f;
}

Fixture make_two_value_fixture(const Vec2& alpha1, const Vec2& alpha2) {
  Fixture f;
  f.name = "twovalue";
  f.description = "piecewise-constant map across a segment: constant traces never meet at the "
                  "tips, so the pipeline rejects it at trace extraction";
  f.satisfies = {"u1", "u2"};
  auto map = std::make_shared<JumpMap>();
  map->omega = Rect{-2.0, 2.0, -2.0, 2.0};
  map->chart = make_jump_chart(std::make_shared<SegmentCurve>(Vec2(-1, 0), Vec2(1, 0), -1.0),
                               map->omega);
  map->side = [](const Vec2& p) { return p.y(); };
  map->u_plus.value = [alpha1](const Vec2&) { return alpha1; };
  map->u_plus.jacobian = [](const Vec2&) { return Eigen::Matrix2d::Zero().eval(); };
  map->u_minus.value = [alpha2](const Vec2&) { return alpha2; };
  map->u_minus.jacobian = [](const Vec2&) { return Eigen::Matrix2d::Zero().eval(); };
  f.map = map;
  return f;
}

Fixture get_fixture(const std::string& name) {
  if (name == "circle") return make_circle_fixture();
  if (name == "planar-tilt") return make_circle_fixture(2.2, 0.5);
  if (name == "parab") return make_parab_fixture();
  if (name == "arc") return make_arc_fixture();
  if (name == "helix") return make_helix_contour();
  if (name == "nondege") return make_nondege_contour();
  if (name == "twovalue") return make_two_value_fixture(Vec2(1, 0), Vec2(0, 0));
  throw ConfigError("unknown fixture: " + name);
}

std::vector<Fixture> all_fixtures() {
  std::vector<Fixture> v;
  for (const char* n : {"circle", "planar-tilt", "parab", "arc", "helix", "nondege", "twovalue"})
    v.push_back(get_fixture(n));
  return v;
}

}  // namespace relarea
