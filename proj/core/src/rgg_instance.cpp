#include "rggham/rgg_instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace rggham {

namespace {

double checked_radius(double r, const LpExponent& p) {
  // Diameter bound of [0,1]^2 with slack; anything larger is meaningless.
  const double cap = std::sqrt(2.0) * lp_norm(p, 1.0, 1.0);
  if (!(r > 0.0) || !std::isfinite(r) || r > cap) {
    throw std::invalid_argument("resolved radius must lie in (0, sqrt(2) * 2^(1/p)]");
  }
  return r;
}

// Top 53 bits of one generator output, mapped to [0, 1).
double unit_draw(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

}  // namespace

void InstanceConfig::validate() const {
  if (n < 3) throw std::invalid_argument("instance needs n >= 3 vertices");
  (void)resolve_radius(*this);
}

double threshold_radius(std::size_t n, const LpExponent& p) {
  if (n < 3) throw std::invalid_argument("threshold radius needs n >= 3");
  const double nn = static_cast<double>(n);
  return std::sqrt(std::log(nn) / (alpha_p(p) * nn));
}

double threshold_multiple(std::size_t n, const LpExponent& p, double r) {
  return r / threshold_radius(n, p);
}

double supercritical_margin(std::size_t n, const LpExponent& p, double r) {
  const double nn = static_cast<double>(n);
  return alpha_p(p) - std::log(nn) / (nn * r * r);
}

double resolve_radius(const InstanceConfig& cfg) {
  if (cfg.n < 3) throw std::invalid_argument("instance needs n >= 3 vertices");
  const double nn = static_cast<double>(cfg.n);
  const double alpha = alpha_p(cfg.p);
  const double r = std::visit(
      [&](const auto& spec) -> double {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, radius::Explicit>) {
          return spec.r;
        } else if constexpr (std::is_same_v<T, radius::EpsilonAbove>) {
          if (!(spec.eps > 0.0) || spec.eps >= alpha) {
            throw std::invalid_argument("epsilon-above needs 0 < eps < alpha_p");
          }
          return std::sqrt(std::log(nn) / ((alpha - spec.eps) * nn));
        } else if constexpr (std::is_same_v<T, radius::EpsilonBelow>) {
          if (!(spec.eps > 0.0) || !std::isfinite(spec.eps)) {
            throw std::invalid_argument("epsilon-below needs eps > 0");
          }
          return std::sqrt(std::log(nn) / ((alpha + spec.eps) * nn));
        } else {
          if (!(spec.c > 0.0) || !std::isfinite(spec.c)) {
            throw std::invalid_argument("threshold multiplier must be positive");
          }
          return spec.c * threshold_radius(cfg.n, cfg.p);
        }
      },
      cfg.radius);
  return checked_radius(r, cfg.p);
}

VertexSet sample_points(const InstanceConfig& cfg) {
  cfg.validate();
  std::mt19937_64 gen(cfg.seed);
  VertexSet vs;
  vs.seed = cfg.seed;
  vs.points.resize(cfg.n);
  for (auto& pt : vs.points) {
    pt.x = unit_draw(gen);
    pt.y = unit_draw(gen);
  }
  return vs;
}

SpatialIndex::SpatialIndex(std::span<const Point2D> points, double r) : points_(points), r_(r) {
  if (!(r > 0.0)) throw std::invalid_argument("spatial index needs r > 0");
  // Bucket width must be >= r; the cap keeps the grid O(n) for tiny radii.
  const double by_radius = std::floor(1.0 / (r * (1.0 + 1e-9)));
  const double by_count = std::ceil(2.0 * std::sqrt(static_cast<double>(points.size()))) + 1.0;
  side_ = static_cast<std::size_t>(std::clamp(std::min(by_radius, by_count), 1.0, 1.0e6));

  offsets_.assign(side_ * side_ + 1, 0);
  for (const auto& pt : points_) ++offsets_[bucket_of(pt) + 1];
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  members_.resize(points_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (VertexId v = 0; v < points_.size(); ++v) members_[cursor[bucket_of(points_[v])]++] = v;
}

std::size_t SpatialIndex::bucket_of(const Point2D& pt) const noexcept {
  const auto axis = [this](double c) {
    const double scaled = std::floor(c * static_cast<double>(side_));
    if (!(scaled > 0.0)) return std::size_t{0};
    return std::min(static_cast<std::size_t>(scaled), side_ - 1);
  };
  return axis(pt.y) * side_ + axis(pt.x);
}

std::span<const VertexId> SpatialIndex::bucket(std::size_t bx, std::size_t by) const noexcept {
  const std::size_t b = by * side_ + bx;
  return {members_.data() + offsets_[b], offsets_[b + 1] - offsets_[b]};
}

bool adjacent(const SpatialIndex& idx, VertexId u, VertexId v, double r, const LpExponent& p) {
  const auto pts = idx.points();
  return lp_distance(p, pts[u], pts[v]) <= r;
}

bool is_connected(const VertexSet& vs, double r, const LpExponent& p) {
  const std::size_t n = vs.size();
  if (n <= 1) return true;
  // Buckets of side just under r/2 have l1 diameter below r, so each is a
  // clique and only bucket pairs need testing. Tiny radii fall back to the
  // vertex neighbour scan to keep the bucket grid proportional to n.
  const double s = 0.5 * r * (1.0 - 1e-9);
  const double per_side = std::ceil(1.0 / s);
  if (per_side * per_side > 4.0 * static_cast<double>(n) + 64.0) {
    SpatialIndex idx(vs.points, r);
    DisjointSets sets(n);
    std::size_t components = n;
    for (VertexId v = 0; v < n; ++v) {
      idx.for_each_neighbor(v, p, [&](VertexId w) {
        if (w > v && sets.unite(v, w)) --components;
      });
    }
    return components == 1;
  }

  const auto side = static_cast<std::ptrdiff_t>(per_side);
  const auto index = [&](double c) {
    return std::clamp(static_cast<std::ptrdiff_t>(c / s), std::ptrdiff_t{0}, side - 1);
  };
  std::vector<std::vector<VertexId>> buckets(static_cast<std::size_t>(side * side));
  for (VertexId v = 0; v < n; ++v) {
    buckets[static_cast<std::size_t>(index(vs[v].y) * side + index(vs[v].x))].push_back(v);
  }
  std::size_t components = 0;
  for (const auto& b : buckets) components += !b.empty();

  // Offsets whose bucket gap can still hold an edge, nearest first, so dense
  // instances merge early and later pairs are skipped as already joined.
  const auto reach = static_cast<std::ptrdiff_t>(std::ceil(r / s)) + 1;
  std::vector<std::pair<double, std::pair<std::ptrdiff_t, std::ptrdiff_t>>> offsets;
  for (std::ptrdiff_t dy = 0; dy <= reach; ++dy) {
    for (std::ptrdiff_t dx = -reach; dx <= reach; ++dx) {
      if (dy == 0 && dx <= 0) continue;
      const double gx = static_cast<double>(std::max<std::ptrdiff_t>(std::abs(dx) - 1, 0)) * s;
      const double gy = static_cast<double>(std::max<std::ptrdiff_t>(dy - 1, 0)) * s;
      const double gap = lp_norm(p, gx, gy);
      if (gap <= r * (1.0 + 1e-9)) offsets.push_back({gap, {dx, dy}});
    }
  }
  std::sort(offsets.begin(), offsets.end());

  DisjointSets sets(buckets.size());
  for (const auto& [gap, d] : offsets) {
    const auto [dx, dy] = d;
    for (std::ptrdiff_t by = 0; by + dy < side; ++by) {
      for (std::ptrdiff_t bx = std::max<std::ptrdiff_t>(0, -dx); bx < side && bx + dx < side; ++bx) {
        const auto a = static_cast<std::size_t>(by * side + bx);
        const auto b = static_cast<std::size_t>((by + dy) * side + bx + dx);
        if (buckets[a].empty() || buckets[b].empty() || sets.find(a) == sets.find(b)) continue;
        const auto joined = [&] {
          for (VertexId u : buckets[a]) {
            for (VertexId w : buckets[b]) {
              if (lp_distance(p, vs[u], vs[w]) <= r) return true;
            }
          }
          return false;
        };
        if (joined()) {
          sets.unite(a, b);
          if (--components == 1) return true;
        }
      }
    }
  }
  return components == 1;
}

}  // namespace rggham
