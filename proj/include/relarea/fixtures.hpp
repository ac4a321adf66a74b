#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relarea/contour.hpp"

namespace relarea {

// A named scenario: a discontinuous map with its analytic traces, or a
// contour-only boundary curve for the parametric solver.
struct Fixture {
  std::string name;
  std::string description;
  std::vector<std::string> satisfies;  // hypothesis tags for the catalog

  std::shared_ptr<JumpMap> map;        // null for contour-only fixtures
  std::optional<SpaceContour> contour;
  std::function<Vec3(double)> gamma;   // closed boundary parametrization, theta in [0, 2pi)

  bool planar = false;
  double planar_area = 0.0;            // area of the planar minimizer when planar
  bool has_condition_A = false;
  bool needs_tip_disks = false;        // W^{1,2}-class pipeline (tip disks + trimming)
};

// tilt = 0 gives the plain perturbed-circle map (u2 identically zero);
// tilt > 0 scales the second component, keeping the boundary curve planar.
Fixture make_circle_fixture(double omega_half = 2.2, double tilt = 0.0);
Fixture make_parab_fixture(double c = 0.25, double d = 0.4, double omega_half = 2.2);
Fixture make_arc_fixture(double radius = 1.4, double half_angle = 0.7, double amp = 0.45,
                         double omega_half = 2.2);
Fixture make_helix_contour(double winding = 1.8, double flatten = 0.55);
Fixture make_nondege_contour();
Fixture make_two_value_fixture(const Vec2& alpha1, const Vec2& alpha2);

Fixture get_fixture(const std::string& name);  // throws ConfigError for unknown names
std::vector<Fixture> all_fixtures();

}  // namespace relarea
