#include "relarea/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "relarea/errors.hpp"

namespace relarea {

void TriMesh2::finalize() {
  const int nv = n_vertices();
  tri_area.resize(tris.size());
  tri_grad.resize(tris.size());
  vertex_tris.assign(nv, {});
  on_boundary.assign(nv, 0);

  std::map<std::pair<int, int>, int> edge_count;
  for (size_t k = 0; k < tris.size(); ++k) {
    auto& T = tris[k];
    const Vec2 e1 = pts[T[1]] - pts[T[0]], e2 = pts[T[2]] - pts[T[0]];
    double det = cross2(e1, e2);
    if (det < 0) {
      std::swap(T[1], T[2]);
      det = -det;
    }
    tri_area[k] = 0.5 * det;
    // grad of barycentric hat functions
    const Vec2 p0 = pts[T[0]], p1 = pts[T[1]], p2 = pts[T[2]];
    Eigen::Matrix<double, 2, 3> G;
    G.col(0) = perp(p2 - p1) / det;
    G.col(1) = perp(p0 - p2) / det;
    G.col(2) = perp(p1 - p0) / det;
    tri_grad[k] = G;
    for (int j = 0; j < 3; ++j) {
      vertex_tris[T[j]].push_back(static_cast<int>(k));
      const int u = T[j], v = T[(j + 1) % 3];
      edge_count[{std::min(u, v), std::max(u, v)}]++;
    }
  }
  for (const auto& [e, c] : edge_count)
    if (c == 1) {
      on_boundary[e.first] = 1;
      on_boundary[e.second] = 1;
    }
  bins_built_ = false;
}

double TriMesh2::total_area() const {
  double s = 0;
  for (double a : tri_area) s += a;
  return s;
}

void TriMesh2::build_bins() const {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x());
    y0 = std::min(y0, p.y());
    x1 = std::max(x1, p.x());
    y1 = std::max(y1, p.y());
  }
  const int n = std::max(1, static_cast<int>(std::sqrt(double(tris.size()))));
  bins_.x0 = x0;
  bins_.y0 = y0;
  bins_.nx = n;
  bins_.ny = n;
  bins_.hx = std::max((x1 - x0) / n, 1e-300);
  bins_.hy = std::max((y1 - y0) / n, 1e-300);
  bins_.cells.assign(size_t(n) * n, {});
  for (size_t k = 0; k < tris.size(); ++k) {
    double tx0 = 1e300, ty0 = 1e300, tx1 = -1e300, ty1 = -1e300;
    for (int j = 0; j < 3; ++j) {
      const Vec2& p = pts[tris[k][j]];
      tx0 = std::min(tx0, p.x());
      ty0 = std::min(ty0, p.y());
      tx1 = std::max(tx1, p.x());
      ty1 = std::max(ty1, p.y());
    }
    const int i0 = std::clamp(int((tx0 - x0) / bins_.hx), 0, n - 1);
    const int i1 = std::clamp(int((tx1 - x0) / bins_.hx), 0, n - 1);
    const int j0 = std::clamp(int((ty0 - y0) / bins_.hy), 0, n - 1);
    const int j1 = std::clamp(int((ty1 - y0) / bins_.hy), 0, n - 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) bins_.cells[size_t(j) * n + i].push_back(int(k));
  }
  bins_built_ = true;
}

Eigen::Vector3d TriMesh2::barycentric(int tri, const Vec2& p) const {
  const auto& T = tris[tri];
  const Vec2 p0 = pts[T[0]], p1 = pts[T[1]], p2 = pts[T[2]];
  const double det = cross2(p1 - p0, p2 - p0);
  Eigen::Vector3d l;
  l[1] = cross2(p - p0, p2 - p0) / det;
  l[2] = cross2(p1 - p0, p - p0) / det;
  l[0] = 1.0 - l[1] - l[2];
  return l;
}

int TriMesh2::locate(const Vec2& p, double tol) const {
  if (!bins_built_) build_bins();
  const int i = std::clamp(int((p.x() - bins_.x0) / bins_.hx), 0, bins_.nx - 1);
  const int j = std::clamp(int((p.y() - bins_.y0) / bins_.hy), 0, bins_.ny - 1);
  int best = -1;
  double best_def = -1e300;
  for (int dj = -1; dj <= 1; ++dj)
    for (int di = -1; di <= 1; ++di) {
      const int ii = i + di, jj = j + dj;
      if (ii < 0 || jj < 0 || ii >= bins_.nx || jj >= bins_.ny) continue;
      for (int k : bins_.cells[size_t(jj) * bins_.nx + ii]) {
        const Eigen::Vector3d l = barycentric(k, p);
        const double deficiency = l.minCoeff();
        if (deficiency >= -1e-12) return k;
        if (deficiency > best_def) {
          best_def = deficiency;
          best = k;
        }
      }
    }
  const double h = std::sqrt(tri_area.empty() ? 1.0 : tri_area[0]);
  if (best >= 0 && best_def > -tol / std::max(h, 1e-12)) return best;
  return -1;
}

double TriMesh2::interpolate(const Eigen::VectorXd& z, const Vec2& p) const {
  int k = locate(p, 1e-6);
  if (k < 0) throw Error("interpolate: point outside mesh");
  Eigen::Vector3d l = barycentric(k, p);
  for (int j = 0; j < 3; ++j) l[j] = std::clamp(l[j], 0.0, 1.0);
  l /= l.sum();
  return l[0] * z[tris[k][0]] + l[1] * z[tris[k][1]] + l[2] * z[tris[k][2]];
}

Vec2 TriMesh2::p1_gradient(const Eigen::VectorXd& z, int tri) const {
  const auto& T = tris[tri];
  return tri_grad[tri] * Eigen::Vector3d(z[T[0]], z[T[1]], z[T[2]]);
}

std::vector<int> TriMesh2::boundary_loop() const {
  std::map<std::pair<int, int>, int> count;
  std::map<int, int> next;  // directed boundary edges, CCW triangles -> CCW loop
  for (const auto& T : tris)
    for (int j = 0; j < 3; ++j) {
      const int u = T[j], v = T[(j + 1) % 3];
      count[{std::min(u, v), std::max(u, v)}]++;
    }
  for (const auto& T : tris)
    for (int j = 0; j < 3; ++j) {
      const int u = T[j], v = T[(j + 1) % 3];
      if (count[{std::min(u, v), std::max(u, v)}] == 1) next[u] = v;
    }
  if (next.empty()) return {};
  std::vector<int> loop;
  const int start = next.begin()->first;
  int cur = start;
  do {
    loop.push_back(cur);
    auto it = next.find(cur);
    if (it == next.end()) throw Error("boundary loop is not closed");
    cur = it->second;
  } while (cur != start && loop.size() <= next.size());
  return loop;
}

namespace {
struct DTri {
  int a, b, c;
  Vec2 cc;      // circumcenter
  double r2;    // squared circumradius
  bool alive;
};

DTri make_dtri(const std::vector<Vec2>& pts, int a, int b, int c) {
  DTri t{a, b, c, Vec2::Zero(), 0, true};
  const Vec2 A = pts[a], B = pts[b], C = pts[c];
  const double d = 2.0 * cross2(B - A, C - A);
  const double a2 = A.squaredNorm(), b2 = B.squaredNorm(), c2 = C.squaredNorm();
  t.cc = Vec2(a2 * (B.y() - C.y()) + b2 * (C.y() - A.y()) + c2 * (A.y() - B.y()),
              a2 * (C.x() - B.x()) + b2 * (A.x() - C.x()) + c2 * (B.x() - A.x())) /
         d;
  t.r2 = (A - t.cc).squaredNorm();
  return t;
}
}  // namespace

std::vector<std::array<int, 3>> delaunay(const std::vector<Vec2>& pts_in) {
  const int n = static_cast<int>(pts_in.size());
  if (n < 3) throw Error("delaunay: need at least 3 points");
  std::vector<Vec2> pts = pts_in;
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x());
    y0 = std::min(y0, p.y());
    x1 = std::max(x1, p.x());
    y1 = std::max(y1, p.y());
  }
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  const double span = std::max(x1 - x0, y1 - y0) * 16.0 + 1.0;
  pts.emplace_back(cx - span, cy - span);
  pts.emplace_back(cx + span, cy - span);
  pts.emplace_back(cx, cy + span);

  std::vector<DTri> tris;
  tris.push_back(make_dtri(pts, n, n + 1, n + 2));

  std::vector<std::array<int, 2>> cavity;
  for (int ip = 0; ip < n; ++ip) {
    const Vec2 p = pts[ip];
    cavity.clear();
    for (auto& t : tris) {
      if (!t.alive) continue;
      if ((p - t.cc).squaredNorm() <= t.r2 * (1.0 + 1e-12)) {
        t.alive = false;
        cavity.push_back({t.a, t.b});
        cavity.push_back({t.b, t.c});
        cavity.push_back({t.c, t.a});
      }
    }
    // boundary of the cavity = edges that appear exactly once
    for (size_t i = 0; i < cavity.size(); ++i) {
      if (cavity[i][0] < 0) continue;
      bool shared = false;
      for (size_t j = 0; j < cavity.size(); ++j) {
        if (i == j || cavity[j][0] < 0) continue;
        if (cavity[i][0] == cavity[j][1] && cavity[i][1] == cavity[j][0]) {
          cavity[i][0] = cavity[j][0] = -1;
          shared = true;
          break;
        }
      }
      if (!shared) {
        tris.push_back(make_dtri(pts, cavity[i][0], cavity[i][1], ip));
      }
    }
    // periodic compaction keeps the scan linear in live triangles
    if (tris.size() > 4 * pts.size()) {
      std::vector<DTri> live;
      live.reserve(tris.size());
      for (const auto& t : tris)
        if (t.alive) live.push_back(t);
      tris.swap(live);
    }
  }

  std::vector<std::array<int, 3>> out;
  for (const auto& t : tris) {
    if (!t.alive) continue;
    if (t.a >= n || t.b >= n || t.c >= n) continue;
    out.push_back({t.a, t.b, t.c});
  }
  return out;
}

TriMesh2 mesh_convex_polygon(const std::vector<Vec2>& boundary, double interior_spacing) {
  TriMesh2 m;
  m.pts = boundary;
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  for (const auto& p : boundary) {
    x0 = std::min(x0, p.x());
    y0 = std::min(y0, p.y());
    x1 = std::max(x1, p.x());
    y1 = std::max(y1, p.y());
  }
  // signed distance to the convex boundary polygon (positive inside)
  auto inside_by = [&](const Vec2& p) {
    double d = 1e300;
    const size_t nb = boundary.size();
    for (size_t i = 0; i < nb; ++i) {
      const Vec2 a = boundary[i], b = boundary[(i + 1) % nb];
      const Vec2 e = b - a;
      const double len = e.norm();
      if (len < 1e-300) continue;
      d = std::min(d, cross2(e, p - a) / len);  // CCW: positive inside
    }
    return d;
  };
  const double h = interior_spacing;
  const double row_h = h * std::sqrt(3.0) / 2.0;
  int row = 0;
  for (double y = y0 + 0.5 * row_h; y < y1; y += row_h, ++row) {
    const double off = (row % 2) ? 0.5 * h : 0.0;
    for (double x = x0 + off + 0.25 * h; x < x1; x += h) {
      const Vec2 p(x, y);
      if (inside_by(p) > 0.45 * h) m.pts.push_back(p);
    }
  }
  m.tris = delaunay(m.pts);
  m.finalize();
  return m;
}

TriMesh2 mesh_unit_disk(int target_triangles) {
  // hex spacing from the target count: n_tri ~ 2 * area / (sqrt(3)/2 h^2)
  const double h = std::sqrt(4.0 * M_PI / (std::sqrt(3.0) * std::max(target_triangles, 16)));
  int nb = std::max(16, int(std::lround(2.0 * M_PI / h)));
  nb = ((nb + 3) / 4) * 4;  // multiple of 4: pins at angles 0, pi/2, -pi/2 are nodes
  std::vector<Vec2> boundary(nb);
  for (int i = 0; i < nb; ++i) {
    const double th = 2.0 * M_PI * i / nb;
    boundary[i] = Vec2(std::cos(th), std::sin(th));
  }
  return mesh_convex_polygon(boundary, h);
}

void write_off(const std::string& path, const std::vector<Vec3>& pts,
               const std::vector<std::array<int, 3>>& tris) {
  std::ofstream out(path);
  out << "OFF\n" << pts.size() << " " << tris.size() << " 0\n";
  out.precision(12);
  for (const auto& p : pts) out << p.x() << " " << p.y() << " " << p.z() << "\n";
  for (const auto& t : tris) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
}

}  // namespace relarea
