// lp_geometry.hpp - l_p distances, unit-disk areas and box-to-box sup distances.
#pragma once

#include <string>
#include <string_view>

namespace rggham {

/// Exponent of an l_p norm, p in [1, inf]. Infinity is its own case rather than
/// a large finite value so the max-norm path never evaluates x^p.
class LpExponent {
 public:
  /// Throws std::invalid_argument for p < 1 or NaN. Passing +inf yields infinity().
  explicit LpExponent(double p);
  static LpExponent infinity() noexcept { return LpExponent(); }

  /// Accepts a decimal number or "inf"/"infinity" (case-insensitive).
  static LpExponent parse(std::string_view text);

  bool is_infinite() const noexcept { return infinite_; }
  /// Finite exponent; undefined meaning when is_infinite().
  double value() const noexcept { return p_; }
  std::string to_string() const;

  friend bool operator==(const LpExponent& a, const LpExponent& b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.p_ == b.p_);
  }

 private:
  LpExponent() noexcept : p_(0.0), infinite_(true) {}
  double p_;
  bool infinite_;
};

struct Point2D {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2D&, const Point2D&) = default;
};

/// Axis-aligned box [x_lo, x_hi] x [y_lo, y_hi]; used for squares and cells.
struct Box {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
};

/// ||(dx, dy)||_p for non-negative components.
double lp_norm(const LpExponent& p, double dx, double dy) noexcept;

double lp_distance(const LpExponent& p, const Point2D& a, const Point2D& b) noexcept;

/// Area of the l_p unit disk: 4 Gamma(1+1/p)^2 / Gamma(1+2/p), and 4 for p = inf.
double alpha_p(const LpExponent& p) noexcept;

/// sup over u in a, v in b of lp_distance(u, v). The sup of a convex function
/// over a product of boxes sits at corners, so this is the norm of the per-axis
/// largest separations.
double max_box_distance(const LpExponent& p, const Box& a, const Box& b) noexcept;

}  // namespace rggham
