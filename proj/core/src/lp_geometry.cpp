#include "rggham/lp_geometry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rggham {

LpExponent::LpExponent(double p) : p_(p), infinite_(false) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("l_p exponent must satisfy p >= 1");
  }
  if (std::isinf(p)) {
    p_ = 0.0;
    infinite_ = true;
  }
}

LpExponent LpExponent::parse(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "inf" || lowered == "infinity" || lowered == "+inf") {
    return infinity();
  }
  double value = 0.0;
  const char* first = lowered.data();
  const char* last = first + lowered.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("cannot parse l_p exponent '" + std::string(text) + "'");
  }
  return LpExponent(value);
}

std::string LpExponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream out;
  out.precision(17);
  out << p_;
  return out.str();
}

double lp_norm(const LpExponent& p, double dx, double dy) noexcept {
  dx = std::fabs(dx);
  dy = std::fabs(dy);
  if (p.is_infinite()) return std::max(dx, dy);
  const double e = p.value();
  if (e == 1.0) return dx + dy;
  if (e == 2.0) return std::hypot(dx, dy);
  // Scale by the larger component so pow never underflows for tiny separations.
  const double big = std::max(dx, dy);
  if (big == 0.0) return 0.0;
  const double a = dx / big;
  const double b = dy / big;
  return big * std::pow(std::pow(a, e) + std::pow(b, e), 1.0 / e);
}

double lp_distance(const LpExponent& p, const Point2D& a, const Point2D& b) noexcept {
  return lp_norm(p, a.x - b.x, a.y - b.y);
}

double alpha_p(const LpExponent& p) noexcept {
  if (p.is_infinite()) return 4.0;
  const double e = p.value();
  const double g1 = std::tgamma(1.0 + 1.0 / e);
  return 4.0 * g1 * g1 / std::tgamma(1.0 + 2.0 / e);
}

double max_box_distance(const LpExponent& p, const Box& a, const Box& b) noexcept {
  const double sx = std::max(std::fabs(a.x_lo - b.x_hi), std::fabs(a.x_hi - b.x_lo));
  const double sy = std::max(std::fabs(a.y_lo - b.y_hi), std::fabs(a.y_hi - b.y_lo));
  return lp_norm(p, sx, sy);
}

}  // namespace rggham
