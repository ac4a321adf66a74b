#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace relarea {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }  // counterclockwise quarter turn
inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Deterministic 64-bit generator (splitmix64); the pipeline carries no other randomness.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed = 0x9e3779b97f4a7c15ull) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Runs fn(tile) for tile = 0..n_tiles-1 on up to RELAREA_THREADS workers.
// Tiles are claimed atomically; callers needing determinism must write
// per-tile results and reduce in tile order afterwards.
void parallel_tiles(int n_tiles, const std::function<void(int)>& fn);
int thread_budget();

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 30);

// Least squares fit y ≈ c0 + c1 x; returns {c0, c1}.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Log-log slope of y ≈ C x^p for positive data.
double fit_power_exponent(const std::vector<double>& x, const std::vector<double>& y);

// Richardson limit of a sequence f(h), f(h/2), f(h/4), ...: estimates the
// convergence order from consecutive differences and extrapolates h -> 0.
struct RichardsonResult {
  double limit;
  double order;
  double error_estimate;
};
RichardsonResult richardson_limit(const std::vector<double>& values, double default_order = 1.0);

inline double smoothstep_quintic(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

// Uniform-grid Catmull-Rom interpolation with quadratic ghost nodes.
// value() is C1 in x on [0, n-1] (grid index coordinates).
struct CatmullRom1D {
  static void weights(double f, double w[4]) {
    const double f2 = f * f, f3 = f2 * f;
    w[0] = 0.5 * (-f3 + 2 * f2 - f);
    w[1] = 0.5 * (3 * f3 - 5 * f2 + 2);
    w[2] = 0.5 * (-3 * f3 + 4 * f2 + f);
    w[3] = 0.5 * (f3 - f2);
  }
  static void dweights(double f, double w[4]) {
    const double f2 = f * f;
    w[0] = 0.5 * (-3 * f2 + 4 * f - 1);
    w[1] = 0.5 * (9 * f2 - 10 * f);
    w[2] = 0.5 * (-9 * f2 + 8 * f + 1);
    w[3] = 0.5 * (3 * f2 - 2 * f);
  }
};

// Samples y_i at grid index i; evaluates anywhere in index coordinates.
class GridInterp1D {
 public:
  GridInterp1D() = default;
  explicit GridInterp1D(std::vector<double> y) : y_(std::move(y)) {}
  int size() const { return static_cast<int>(y_.size()); }
  double node(int i) const { return y_[i]; }
  double value(double x) const { return eval(x, false); }
  double derivative(double x) const { return eval(x, true); }  // d/dx in index units

 private:
  double eval(double x, bool deriv) const;
  double ghost(int i) const;  // quadratic extrapolation outside [0, n-1]
  std::vector<double> y_;
};

double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol);

double polygon_area(const std::vector<Vec2>& pts);  // shoelace, signed

}  // namespace relarea
