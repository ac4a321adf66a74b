#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "relarea/util.hpp"

namespace relarea {

// Planar triangle mesh with P1 helpers. Triangles are CCW after finalize().
struct TriMesh2 {
  std::vector<Vec2> pts;
  std::vector<std::array<int, 3>> tris;

  // derived by finalize()
  std::vector<char> on_boundary;
  std::vector<double> tri_area;
  std::vector<Eigen::Matrix<double, 2, 3>> tri_grad;  // P1 gradient operator per triangle
  std::vector<std::vector<int>> vertex_tris;          // incident triangles

  void finalize();
  int n_vertices() const { return static_cast<int>(pts.size()); }
  int n_triangles() const { return static_cast<int>(tris.size()); }
  double total_area() const;

  // point location through a uniform bin grid; returns -1 outside (up to tol)
  int locate(const Vec2& p, double tol = 1e-9) const;
  Eigen::Vector3d barycentric(int tri, const Vec2& p) const;
  double interpolate(const Eigen::VectorXd& z, const Vec2& p) const;  // throws outside
  Vec2 p1_gradient(const Eigen::VectorXd& z, int tri) const;

  // boundary loop in CCW order (single closed loop expected)
  std::vector<int> boundary_loop() const;

 private:
  struct Bins {
    double x0, y0, hx, hy;
    int nx, ny;
    std::vector<std::vector<int>> cells;
  };
  mutable Bins bins_;
  mutable bool bins_built_ = false;
  void build_bins() const;
};

// Delaunay triangulation (Bowyer-Watson) of a point set; returns triangles of
// the convex hull.
std::vector<std::array<int, 3>> delaunay(const std::vector<Vec2>& pts);

// Mesh of a convex region given its CCW boundary polyline: boundary vertices
// kept as-is, interior filled with a hex lattice at the given spacing.
TriMesh2 mesh_convex_polygon(const std::vector<Vec2>& boundary, double interior_spacing);

// Unit disk mesh with boundary vertex count a multiple of four so that the
// angles -pi/2, 0, pi/2 are exact boundary nodes.
TriMesh2 mesh_unit_disk(int target_triangles);

void write_off(const std::string& path, const std::vector<Vec3>& pts,
               const std::vector<std::array<int, 3>>& tris);

}  // namespace relarea
