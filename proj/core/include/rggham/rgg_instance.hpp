// rgg_instance.hpp - seeded sampling of G(n, r) vertex sets, radius resolution,
// and bucket-grid adjacency / connectivity queries.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "rggham/lp_geometry.hpp"

namespace rggham {

using VertexId = std::uint32_t;

namespace radius {
struct Explicit {
  double r;
};
/// r = sqrt(log n / ((alpha_p - eps) n)); supercritical side.
struct EpsilonAbove {
  double eps;
};
/// r = sqrt(log n / ((alpha_p + eps) n)); subcritical side.
struct EpsilonBelow {
  double eps;
};
/// r = c * sqrt(log n / (alpha_p n)).
struct MultipleOfThreshold {
  double c;
};
}  // namespace radius

using RadiusSpec =
    std::variant<radius::Explicit, radius::EpsilonAbove, radius::EpsilonBelow, radius::MultipleOfThreshold>;

struct InstanceConfig {
  std::size_t n = 0;
  LpExponent p{2.0};
  RadiusSpec radius = radius::MultipleOfThreshold{1.0};
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when n < 3 or the radius spec is unusable.
  void validate() const;
};

struct VertexSet {
  std::vector<Point2D> points;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return points.size(); }
  const Point2D& operator[](VertexId v) const { return points[v]; }
};

/// sqrt(log n / (alpha_p n)), natural log. Requires n >= 3.
double threshold_radius(std::size_t n, const LpExponent& p);

/// Multiplier c with r = c * threshold_radius(n, p).
double threshold_multiple(std::size_t n, const LpExponent& p, double r);

/// Margin eps with r = sqrt(log n / ((alpha_p - eps) n)); negative below the threshold.
double supercritical_margin(std::size_t n, const LpExponent& p, double r);

/// Concrete radius for cfg. Throws std::invalid_argument on an invalid config,
/// including EpsilonAbove with eps >= alpha_p.
double resolve_radius(const InstanceConfig& cfg);

/// n i.i.d. uniform points in [0,1]^2 from std::mt19937_64 seeded with cfg.seed.
/// Each vertex draws x then y; a draw maps the top 53 bits of one 64-bit output
/// to [0,1). The stream is fixed by the C++ standard, so output is bit-identical
/// across platforms.
VertexSet sample_points(const InstanceConfig& cfg);

/// Bucket grid with cell width >= r. Two vertices within distance r are always in
/// the same or in 8-neighbouring buckets.
class SpatialIndex {
 public:
  SpatialIndex(std::span<const Point2D> points, double r);

  std::size_t buckets_per_side() const noexcept { return side_; }
  std::size_t bucket_of(const Point2D& pt) const noexcept;
  std::span<const VertexId> bucket(std::size_t bx, std::size_t by) const noexcept;
  std::span<const Point2D> points() const noexcept { return points_; }

  /// Calls f(w) for every vertex w != v with lp_distance(v, w) <= r.
  template <class F>
  void for_each_neighbor(VertexId v, const LpExponent& p, F&& f) const {
    const Point2D& pv = points_[v];
    const std::size_t b = bucket_of(pv);
    const std::size_t bx = b % side_;
    const std::size_t by = b / side_;
    const std::size_t x0 = bx == 0 ? 0 : bx - 1;
    const std::size_t y0 = by == 0 ? 0 : by - 1;
    const std::size_t x1 = bx + 1 < side_ ? bx + 1 : bx;
    const std::size_t y1 = by + 1 < side_ ? by + 1 : by;
    for (std::size_t yy = y0; yy <= y1; ++yy) {
      for (std::size_t xx = x0; xx <= x1; ++xx) {
        for (VertexId w : bucket(xx, yy)) {
          if (w != v && lp_distance(p, pv, points_[w]) <= r_) f(w);
        }
      }
    }
  }

  double radius() const noexcept { return r_; }

 private:
  std::span<const Point2D> points_;
  double r_;
  std::size_t side_;
  std::vector<std::size_t> offsets_;  // CSR over buckets, size side^2 + 1
  std::vector<VertexId> members_;
};

/// True iff lp_distance(u, v) <= r. The index is only consulted for coordinates.
bool adjacent(const SpatialIndex& idx, VertexId u, VertexId v, double r, const LpExponent& p);

/// Union-find over bucket-local neighbour scans; true iff G(n, r) has one component.
/// An empty vertex set is reported as connected.
bool is_connected(const VertexSet& vs, double r, const LpExponent& p);

}  // namespace rggham
