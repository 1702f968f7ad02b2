// oracles.hpp - independent reference computations for the test suites.
// Nothing here calls into the code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "rggham/lp_geometry.hpp"
#include "rggham/rgg_instance.hpp"

namespace rggham::oracle {

/// Adaptive Simpson quadrature on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                               int depth = 60) {
  struct Rec {
    static double run(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                      double whole, double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m);
      const double rm = 0.5 * (m + b);
      const double flm = f(lm);
      const double frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      return run(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
             run(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
    }
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec::run(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// Area of {|x|^p + |y|^p <= 1} as 4 * int_0^1 (1 - x^p)^(1/p) dx. The
/// integrand has a vertical tangent at x = 1 for p > 1, so the interval is split
/// and the last piece refined hard.
inline double alpha_by_quadrature(double p) {
  const auto f = [p](double x) {
    const double base = 1.0 - std::pow(x, p);
    return base <= 0.0 ? 0.0 : std::pow(base, 1.0 / p);
  };
  double total = 0.0;
  double lo = 0.0;
  for (double hi : {0.5, 0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999, 1.0}) {
    total += adaptive_simpson(f, lo, hi, 1e-13);
    lo = hi;
  }
  return 4.0 * total;
}

/// Box corners in a fixed order.
inline std::vector<Point2D> corners(const Box& b) {
  return {{b.x_lo, b.y_lo}, {b.x_hi, b.y_lo}, {b.x_lo, b.y_hi}, {b.x_hi, b.y_hi}};
}

/// Largest lp_distance over the 16 corner pairs.
inline double max_corner_distance(const LpExponent& p, const Box& a, const Box& b) {
  double best = 0.0;
  for (const auto& u : corners(a)) {
    for (const auto& v : corners(b)) best = std::max(best, lp_distance(p, u, v));
  }
  return best;
}

/// Component count by all-pairs BFS, O(n^2).
inline bool naive_connected(const std::vector<Point2D>& pts, double r, const LpExponent& p) {
  const std::size_t n = pts.size();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < n; ++w) {
      if (!seen[w] && lp_distance(p, pts[v], pts[w]) <= r) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

/// Closeness of two cells from their corner coordinates, cells of side 1/side.
inline bool cells_close_by_corners(const LpExponent& p, int side, int ca, int ra, int cb, int rb, double r) {
  const double s = static_cast<double>(side);
  const Box a{ca / s, (ca + 1) / s, ra / s, (ra + 1) / s};
  const Box b{cb / s, (cb + 1) / s, rb / s, (rb + 1) / s};
  return max_corner_distance(p, a, b) <= r;
}

/// K by scanning the whole closed quadrant above-right of (col, row) with the
/// corner oracle.
inline std::size_t brute_force_K(const LpExponent& p, int side, int col, int row, double r) {
  std::size_t count = 0;
  for (int rb = row; rb < side; ++rb) {
    for (int cb = col; cb < side; ++cb) {
      if (cb == col && rb == row) continue;
      if (cells_close_by_corners(p, side, col, row, cb, rb, r)) ++count;
    }
  }
  return count;
}

}  // namespace rggham::oracle
