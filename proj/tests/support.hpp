// support.hpp - helpers shared by the unit and acceptance suites.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rggham/pipeline.hpp"
#include "rggham/rgg_instance.hpp"

namespace rggham::testing {

/// Every structural bound the construction relies on, checked on whatever
/// artifacts a solve produced. eps is the supercritical margin k was chosen for;
/// eps <= 0 skips the K bound. Returns one message per violation.
inline std::vector<std::string> structural_violations(const SolveResult& res, const LpExponent& p, double eps) {
  std::vector<std::string> out;
  const auto& art = res.artifacts;

  if (art.g_prime && art.g_prime->max_degree() > kMaxFriends) {
    out.push_back("G' max degree " + std::to_string(art.g_prime->max_degree()));
  }
  if (art.g_double_prime) {
    std::map<SquareId, std::size_t> per_square;
    for (const auto& g : art.g_double_prime->groups) ++per_square[g.square];
    for (const auto& [sq, count] : per_square) {
      if (count > kMaxFriends) out.push_back("square with " + std::to_string(count) + " groups");
    }
  }
  if (art.plan) {
    const SpanningTree& tree = art.plan->tree;
    if (tree.max_degree() > kMaxFriends) out.push_back("tree max degree " + std::to_string(tree.max_degree()));

    std::map<std::pair<GraphVertex, GraphVertex>, std::size_t> crossed;
    const auto& seq = art.plan->sequence;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      ++crossed[{std::min(seq[i], seq[i + 1]), std::max(seq[i], seq[i + 1])}];
    }
    std::map<std::pair<GraphVertex, GraphVertex>, std::size_t> expected;
    for (const auto& [a, b] : tree.edges) expected[{std::min(a, b), std::max(a, b)}] = 2;
    if (crossed != expected) out.push_back("traversal does not cross each tree edge exactly twice");
  }
  if (art.ledger.max_dense_withdrawals > kDenseThreshold) {
    out.push_back("dense cell drew " + std::to_string(art.ledger.max_dense_withdrawals) + " vertices");
  }
  if (art.tessellation && eps > 0.0) {
    const int k = art.tessellation->cells_per_square_side();
    try {
      const double K = static_cast<double>(count_K(*art.tessellation));
      const double bound = (alpha_p(p) - eps / 2.0) * k * k;
      if (K < bound) out.push_back("K = " + std::to_string(K) + " below " + std::to_string(bound));
    } catch (const std::domain_error&) {
      out.push_back("no interior cell to evaluate K");
    }
  }
  return out;
}

/// Uniform points with extra control over placement, for hand-built instances.
class PointBuilder {
 public:
  explicit PointBuilder(std::uint64_t seed) : gen_(seed) {}

  /// count points uniform in the box [x0, x1) x [y0, y1).
  PointBuilder& fill(double x0, double x1, double y0, double y1, std::size_t count) {
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1);
    for (std::size_t i = 0; i < count; ++i) {
      const double x = ux(gen_);
      const double y = uy(gen_);
      vs_.points.push_back({x, y});
    }
    return *this;
  }

  PointBuilder& add(double x, double y) {
    vs_.points.push_back({x, y});
    return *this;
  }

  /// count points uniform in the interior of a tessellation cell.
  PointBuilder& fill_cell(const Tessellation& t, CellId c, std::size_t count) {
    const Box b = t.cell_box(c);
    const double pad = 1e-6 * t.cell_side();
    return fill(b.x_lo + pad, b.x_hi - pad, b.y_lo + pad, b.y_hi - pad, count);
  }

  VertexSet build() const { return vs_; }

 private:
  std::mt19937_64 gen_;
  VertexSet vs_;
};

/// Drops vertices of square s until each of its cells holds at most keep_per_cell.
inline VertexSet thin_square(const VertexSet& vs, const Tessellation& t, SquareId s, std::size_t keep_per_cell) {
  std::map<CellId, std::size_t> kept;
  VertexSet out;
  out.seed = vs.seed;
  for (const auto& pt : vs.points) {
    const CellId c = t.locate(pt);
    if (t.square_of(c) == s && kept[c]++ >= keep_per_cell) continue;
    out.points.push_back(pt);
  }
  return out;
}

}  // namespace rggham::testing
