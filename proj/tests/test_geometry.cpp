#include <cmath>

#include "doctest.h"
#include "relarea/geometry.hpp"

using namespace relarea;

namespace {
std::vector<Vec2> half_circle(int n) {
  std::vector<Vec2> pts;
  for (int i = 0; i <= n; ++i) {
    const double th = M_PI * i / n;
    pts.emplace_back(std::cos(th), std::sin(th));
  }
  return pts;
}
}  // namespace

TEST_CASE("arc_length_reparametrize: straight segment is the identity chart") {
  std::vector<Vec2> pts;
  for (int i = 0; i <= 10; ++i) pts.emplace_back(i / 10.0, 0.0);
  auto c = arc_length_reparametrize(pts);
  CHECK(c->a() == doctest::Approx(0.0));
  CHECK(c->b() == doctest::Approx(1.0).epsilon(1e-10));
  for (double t : {0.0, 0.3, 0.77, 1.0}) {
    CHECK(c->pos(t).x() == doctest::Approx(t).epsilon(1e-9));
    CHECK(std::abs(c->pos(t).y()) < 1e-12);
  }
}

TEST_CASE("arc_length_reparametrize: half circle length and unit speed") {
  auto c = arc_length_reparametrize(half_circle(100));
  CHECK(std::abs(c->length() - M_PI) < 1e-4);
  // |alpha'| = 1 within 1e-8 via centered differences of the position
  const double h = 1e-5;
  for (int i = 1; i < 40; ++i) {
    const double t = c->a() + c->length() * i / 40.0;
    const double speed = (c->pos(t + h) - c->pos(t - h)).norm() / (2 * h);
    CHECK(std::abs(speed - 1.0) < 1e-8);
  }
  // curvature of the unit circle
  CHECK(std::abs(std::abs(c->curvature(c->length() / 2)) - 1.0) < 1e-3);
}

TEST_CASE("arc_length_reparametrize: error cases") {
  std::vector<Vec2> dup = {{0, 0}, {0.5, 0}, {0.5, 0}, {1, 0}};
  CHECK_THROWS_AS(arc_length_reparametrize(dup), DegenerateCurve);

  std::vector<Vec2> crossing = {{0, 0}, {1, 0}, {1, 1}, {0.5, -0.5}};
  CHECK_THROWS_AS(arc_length_reparametrize(crossing), SelfIntersecting);

  std::vector<Vec2> two = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(arc_length_reparametrize(two), DegenerateCurve);
}

TEST_CASE("max_tubular_halfwidth bounds") {
  SUBCASE("segment: capped by length only") {
    SegmentCurve seg({0, 0}, {1, 0});
    CHECK(max_tubular_halfwidth(seg) == doctest::Approx(0.9));
  }
  SUBCASE("unit circular arc: curvature bound 0.9") {
    CircularArcCurve arc({0, 0}, 1.0, 0.0, M_PI);
    CHECK(max_tubular_halfwidth(arc) == doctest::Approx(0.9).epsilon(1e-6));
  }
  SUBCASE("S-curve with near approach 0.2") {
    // two parallel segments joined by a U-turn; the straight parts run at
    // distance 0.2 from each other
    std::vector<Vec2> pts;
    for (int i = 0; i <= 40; ++i) pts.emplace_back(-2.0 + 2.0 * i / 40.0, 0.0);
    for (int i = 1; i <= 20; ++i) {
      const double th = -M_PI / 2 + M_PI * i / 20.0;
      pts.emplace_back(0.1 * std::cos(th), 0.1 + 0.1 * std::sin(th));
    }
    for (int i = 1; i <= 40; ++i) pts.emplace_back(-2.0 * i / 40.0, 0.2);
    auto c = arc_length_reparametrize(pts);
    // oracle: brute-force pairwise scan over the resampled points
    const double d = c->min_self_distance();
    CHECK(d == doctest::Approx(0.2).epsilon(0.05));
    CHECK(max_tubular_halfwidth(*c) <= 0.9 * 0.5 * d * 1.0001);
    CHECK(max_tubular_halfwidth(*c) <= 0.09 * 1.05);
  }
}

TEST_CASE("lambda map and inverse") {
  SUBCASE("flat chart") {
    auto seg = std::make_shared<SegmentCurve>(Vec2(0, 0), Vec2(1, 0));
    TubularChart chart(seg, 0.5);
    const Vec2 p = chart.map(0.5, 0.1);
    CHECK(p.x() == doctest::Approx(0.5));
    CHECK(p.y() == doctest::Approx(0.1));  // perp of (1,0) is (0,1)
    const auto c = chart.inverse(Vec2(0.3, -0.2));
    CHECK(c.t == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(c.s == doctest::Approx(-0.2).epsilon(1e-10));
    CHECK_THROWS_AS(chart.map(0.5, 0.6), OutOfChart);
    CHECK_THROWS_AS(chart.inverse(Vec2(0.5, 0.7)), OutOfChart);
  }
  SUBCASE("on-curve points return s = 0") {
    auto arc = std::make_shared<CircularArcCurve>(Vec2(0, 0), 1.0, 0.2, 2.0);
    TubularChart chart(arc, 0.5);
    for (double t : {0.0, 0.4, 1.2, arc->length()}) {
      const auto c = chart.inverse(arc->pos(t));
      CHECK(std::abs(c.s) < 1e-10);
      CHECK(c.t == doctest::Approx(t).epsilon(1e-8));
    }
  }
  SUBCASE("circle-arc chart: |map(t,s) - pos(t)| = |s|") {
    auto arc = std::make_shared<CircularArcCurve>(Vec2(0.3, -0.1), 1.5, 0.1, 1.9);
    TubularChart chart(arc, 0.6);
    Rng rng(7);
    for (int k = 0; k < 50; ++k) {
      const double t = rng.uniform(arc->a(), arc->b());
      const double s = rng.uniform(-0.6, 0.6);
      CHECK((chart.map(t, s) - arc->pos(t)).norm() == doctest::Approx(std::abs(s)).epsilon(1e-12));
    }
  }
  SUBCASE("round trip on a 50x20 grid") {
    auto c = arc_length_reparametrize(half_circle(200));
    TubularChart chart(c, 0.4);
    double worst = 0;
    for (int i = 0; i <= 50; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double t = c->a() + c->length() * i / 50.0;
        const double s = -0.4 + 0.8 * j / 20.0;
        const Vec2 p = chart.map(t, s);
        const auto back = chart.inverse(p);
        worst = std::max(worst, (chart.map(back.t, back.s) - p).norm());
        worst = std::max(worst, std::abs(back.s - s));
      }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("chart differential identities") {
  auto arc = std::make_shared<CircularArcCurve>(Vec2(0, 0), 1.4, 1.0, 2.2);
  TubularChart chart(arc, 0.5);
  Rng rng(11);
  const double h = 1e-5;
  double eik_worst = 0, det_worst = 0, lucia_worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const double t = rng.uniform(arc->a() + 0.05, arc->b() - 0.05);
    const double s = rng.uniform(-0.45, 0.45);
    const Vec2 p = chart.map(t, s);

    // eikonal: |grad d| = 1 by central differences of the signed distance
    const double dx =
        (chart.locate(p + Vec2(h, 0)).s - chart.locate(p - Vec2(h, 0)).s) / (2 * h);
    const double dy =
        (chart.locate(p + Vec2(0, h)).s - chart.locate(p - Vec2(0, h)).s) / (2 * h);
    eik_worst = std::max(eik_worst, std::abs(std::hypot(dx, dy) - 1.0));

    // |det D Lambda| = |1 - kappa s| against finite differences of the map
    const Vec2 dt = (chart.map(t + h, s) - chart.map(t - h, s)) / (2 * h);
    const Vec2 ds = (chart.map(t, s + h) - chart.map(t, s - h)) / (2 * h);
    const double fd_det = std::abs(cross2(dt, ds));
    det_worst = std::max(det_worst,
                         std::abs(fd_det - std::abs(chart.det_jacobian(t, s))));

    // grad t . perp(grad d) = -1/(1 - kappa s)
    const double tx = (chart.locate(p + Vec2(h, 0)).t - chart.locate(p - Vec2(h, 0)).t) / (2 * h);
    const double ty = (chart.locate(p + Vec2(0, h)).t - chart.locate(p - Vec2(0, h)).t) / (2 * h);
    const Vec2 grad_t_fd(tx, ty);
    const Vec2 gd = chart.grad_d(t);
    lucia_worst = std::max(lucia_worst, std::abs(std::abs(grad_t_fd.dot(perp(gd))) -
                                                 1.0 / std::abs(chart.det_jacobian(t, s))));
  }
  CHECK(eik_worst < 1e-6);
  CHECK(det_worst < 1e-6);
  CHECK(lucia_worst < 1e-5);
}

TEST_CASE("grad t on the curve has unit length") {
  auto arc = std::make_shared<CircularArcCurve>(Vec2(0, 0), 2.0, 0.3, 1.3);
  TubularChart chart(arc, 0.3);
  for (double t : {0.3, 0.8, 1.5}) {
    CHECK(chart.grad_t(t, 0.0).norm() == doctest::Approx(1.0));
    CHECK(std::abs(chart.grad_t(t, 0.0).dot(chart.grad_d(t))) < 1e-12);
  }
}
