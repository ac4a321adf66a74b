#include "relarea/util.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace relarea {

int thread_budget() {
  static int budget = [] {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("RELAREA_THREADS")) {
      int cap = std::atoi(env);
      if (cap > 0) hw = std::min(hw, cap);
    }
    return hw;
  }();
  return budget;
}

void parallel_tiles(int n_tiles, const std::function<void(int)>& fn) {
  const int workers = std::min(thread_budget(), n_tiles);
  if (workers <= 1) {
    for (int i = 0; i < n_tiles; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int tile = next.fetch_add(1);
      if (tile >= n_tiles) return;
      fn(tile);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int i = 0; i < workers - 1; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

namespace {
double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("linear_fit: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  const double c1 = (n * sxy - sx * sy) / det;
  const double c0 = (sy - c1 * sx) / n;
  return {c0, c1};
}

double fit_power_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0 && y[i] > 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  return linear_fit(lx, ly).second;
}

RichardsonResult richardson_limit(const std::vector<double>& values, double default_order) {
  RichardsonResult r{values.back(), default_order, 0.0};
  const size_t n = values.size();
  if (n < 2) return r;
  const double d_last = values[n - 1] - values[n - 2];
  double order = default_order;
  if (n >= 3) {
    const double d_prev = values[n - 2] - values[n - 3];
    if (d_prev != 0.0 && d_last != 0.0 && d_prev * d_last > 0.0) {
      const double ratio = d_prev / d_last;
      if (ratio > 1.05) order = std::log2(ratio);
    }
  }
  const double factor = std::pow(2.0, order) - 1.0;
  r.order = order;
  r.limit = values[n - 1] + d_last / factor;
  r.error_estimate = std::abs(d_last / factor);
  return r;
}

double GridInterp1D::ghost(int i) const {
  const int n = size();
  if (i >= 0 && i < n) return y_[i];
  if (i < 0) return 3.0 * y_[0] - 3.0 * y_[1] + y_[2];
  return 3.0 * y_[n - 1] - 3.0 * y_[n - 2] + y_[n - 3];
}

double GridInterp1D::eval(double x, bool deriv) const {
  const int n = size();
  if (n == 1) return deriv ? 0.0 : y_[0];
  x = std::clamp(x, 0.0, double(n - 1));
  int i0 = std::min(static_cast<int>(std::floor(x)), n - 2);
  const double f = x - i0;
  double w[4];
  if (deriv)
    CatmullRom1D::dweights(f, w);
  else
    CatmullRom1D::weights(f, w);
  double v = 0;
  for (int k = 0; k < 4; ++k) v += w[k] * ghost(i0 - 1 + k);
  return v;
}

double golden_section_min(const std::function<double(double)>& f, double a, double b, double tol) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

double polygon_area(const std::vector<Vec2>& pts) {
  double s = 0;
  const size_t n = pts.size();
  for (size_t i = 0; i < n; ++i) s += cross2(pts[i], pts[(i + 1) % n]);
  return 0.5 * s;
}

}  // namespace relarea
