#include "rggham/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rggham {

std::vector<std::array<int, 2>> square_cell_tour(int k) {
  if (k < 2) throw std::invalid_argument("cell tour needs k >= 2");
  std::vector<std::array<int, 2>> tour;
  tour.reserve(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i) tour.push_back({i, 0});
  // Snake over columns 1..k-1. Even k: all remaining rows. Odd k: rows up to k-3,
  // then rows k-2 and k-1 column by column so the walk ends next to column 0.
  const int snake_rows = (k % 2 == 0) ? k - 1 : k - 3;
  for (int j = 1; j <= snake_rows; ++j) {
    if (j % 2 == 1) {
      for (int i = k - 1; i >= 1; --i) tour.push_back({i, j});
    } else {
      for (int i = 1; i <= k - 1; ++i) tour.push_back({i, j});
    }
  }
  if (k % 2 == 1) {
    for (int i = k - 1; i >= 1; --i) {
      if ((k - 1 - i) % 2 == 0) {
        tour.push_back({i, k - 2});
        tour.push_back({i, k - 1});
      } else {
        tour.push_back({i, k - 1});
        tour.push_back({i, k - 2});
      }
    }
  }
  for (int j = k - 1; j >= 1; --j) tour.push_back({0, j});
  return tour;
}

namespace {

// Position of each in-square cell offset (j * k + i) along square_cell_tour(k).
std::vector<int> tour_rank(int k) {
  const auto tour = square_cell_tour(k);
  std::vector<int> rank(tour.size());
  for (std::size_t pos = 0; pos < tour.size(); ++pos) {
    rank[static_cast<std::size_t>(tour[pos][1] * k + tour[pos][0])] = static_cast<int>(pos);
  }
  return rank;
}

std::string square_context(const char* what, SquareId s) {
  std::ostringstream out;
  out << what << " in square " << s.col << "," << s.row;
  return out.str();
}

std::string cell_context(const char* what, CellId c) {
  std::ostringstream out;
  out << what << " at cell " << c.col << "," << c.row;
  return out.str();
}

// Arranges a cyclic list into a path whose consecutive pairs are all close, with
// start -> front and back -> end close when those endpoints are given. Cuts the
// cycle at its only long pair if it has one, else anywhere that fits; tries
// both directions. Fails if the cyclic list has two or more long pairs.
template <class Close>
std::optional<std::vector<VertexId>> cut_path(const std::vector<VertexId>& list, std::optional<VertexId> start,
                                              std::optional<VertexId> end, Close&& close) {
  const std::size_t n = list.size();
  const auto fits = [&](VertexId first, VertexId last) {
    return (!start || close(*start, first)) && (!end || close(last, *end));
  };
  if (n == 0) return std::vector<VertexId>{};
  if (n == 1) {
    if (fits(list[0], list[0])) return list;
    return std::nullopt;
  }
  if (n == 2) {
    if (!close(list[0], list[1])) return std::nullopt;
    if (fits(list[0], list[1])) return list;
    if (fits(list[1], list[0])) return std::vector<VertexId>{list[1], list[0]};
    return std::nullopt;
  }

  std::size_t bad_count = 0;
  std::size_t bad_at = 0;  // index j whose incoming pair (j-1, j) is long
  for (std::size_t j = 0; j < n; ++j) {
    if (!close(list[(j + n - 1) % n], list[j])) {
      ++bad_count;
      bad_at = j;
      if (bad_count > 1) return std::nullopt;
    }
  }

  const auto build = [&](std::size_t j, bool forward) {
    std::vector<VertexId> path;
    path.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
      path.push_back(forward ? list[(j + s) % n] : list[(j + n - 1 - s) % n]);
    }
    return path;
  };
  const auto try_cut = [&](std::size_t j) -> std::optional<std::vector<VertexId>> {
    const VertexId head = list[j];
    const VertexId tail = list[(j + n - 1) % n];
    if (fits(head, tail)) return build(j, true);
    if (fits(tail, head)) return build(j, false);
    return std::nullopt;
  };

  if (bad_count == 1) return try_cut(bad_at);
  for (std::size_t j = 0; j < n; ++j) {
    if (auto path = try_cut(j)) return path;
  }
  return std::nullopt;
}

struct Failed {
  ConstructionFailure failure;
};

class CycleBuilder {
 public:
  explicit CycleBuilder(const ConstructionInput& in)
      : in_(in),
        t_(in.tessellation),
        cls_(in.classification),
        r_(in.tessellation.radius()),
        p_(in.tessellation.norm()),
        k_(in.tessellation.cells_per_square_side()),
        tour_(square_cell_tour(k_)),
        rank_(tour_rank(k_)),
        queue_(in.classification.vertices),
        cursor_(in.classification.offsets.begin(), in.classification.offsets.end() - 1),
        demand_(in.tessellation.cell_count(), 0) {}

  ConstructionOutcome run() {
    ConstructionOutcome out;
    try {
      build();
      out.cycle = HamCycle{std::move(cycle_)};
    } catch (const Failed& f) {
      out.failure = f.failure;
    }
    out.ledger = stats_;
    return out;
  }

 private:
  struct Step {
    CellId leave;  // cell of the current square the walk leaves from
    CellId enter;  // cell of the next square (old -> old) or of the same square (old -> new)
    std::vector<VertexId> group_path;  // old -> new only
  };

  [[noreturn]] static void fail(FailureReason reason, std::string context) {
    throw Failed{ConstructionFailure{reason, std::move(context)}};
  }

  bool close(VertexId a, VertexId b) const {
    return lp_distance(p_, in_.vertices[a], in_.vertices[b]) <= r_;
  }

  CellId cell_of(VertexId v) const { return t_.locate(in_.vertices[v]); }

  int rank_in_square(CellId c) const { return rank_[static_cast<std::size_t>((c.row % k_) * k_ + c.col % k_)]; }

  void emit(VertexId v) {
    if (!cycle_.empty() && !close(cycle_.back(), v)) {
      fail(FailureReason::EdgeTooLong, cell_context("step longer than r", cell_of(v)));
    }
    cycle_.push_back(v);
  }

  std::size_t withdrawn(std::size_t cell) const { return cursor_[cell] - cls_.offsets[cell]; }
  std::size_t unused(std::size_t cell) const { return cls_.offsets[cell + 1] - cursor_[cell]; }

  // Dequeues an unused vertex of cell c, preferring one within r of `near`.
  VertexId withdraw(CellId c, std::optional<VertexId> near, bool planned) {
    const std::size_t cell = t_.index(c);
    if (unused(cell) == 0) fail(FailureReason::LedgerExhausted, cell_context("no unused vertex left", c));
    const bool dense = cls_.cell_class[cell] == CellClass::Dense;
    if (dense && withdrawn(cell) >= kDenseThreshold) {
      fail(FailureReason::LedgerExhausted, cell_context("withdrawal budget of a dense cell exceeded", c));
    }
    std::size_t& cur = cursor_[cell];
    if (near) {
      for (std::size_t i = cur; i < cls_.offsets[cell + 1]; ++i) {
        if (close(*near, queue_[i])) {
          std::swap(queue_[i], queue_[cur]);
          break;
        }
      }
    }
    const VertexId v = queue_[cur++];
    if (planned) --demand_[cell];
    ++stats_.dequeued;
    if (dense) stats_.max_dense_withdrawals = std::max(stats_.max_dense_withdrawals, withdrawn(cell));
    return v;
  }

  // Cells of square s in tour order.
  std::vector<CellId> square_cells(SquareId s) const {
    std::vector<CellId> cells;
    cells.reserve(static_cast<std::size_t>(k_) * k_);
    for (const auto& [i, j] : tour_) cells.push_back(t_.cell_in(s, i, j));
    return cells;
  }

  // w -> u inside square s, through one spare vertex of s when the direct step is too long.
  void walk_to(std::optional<VertexId> w, VertexId u, SquareId s) {
    if (!w || close(*w, u)) {
      emit(u);
      return;
    }
    for (const CellId c : square_cells(s)) {
      const std::size_t cell = t_.index(c);
      if (unused(cell) == 0) continue;
      const CellClass cc = cls_.cell_class[cell];
      if (cc == CellClass::Dense) {
        const auto reserved = static_cast<std::size_t>(demand_[cell]);
        if (withdrawn(cell) + reserved + 1 > kDenseThreshold || unused(cell) <= reserved) continue;
      }
      std::size_t& cur = cursor_[cell];
      for (std::size_t i = cur; i < cls_.offsets[cell + 1]; ++i) {
        const VertexId x = queue_[i];
        if (close(*w, x) && close(x, u)) {
          std::swap(queue_[i], queue_[cur]);
          const VertexId bridge = withdraw(c, std::nullopt, false);
          ++stats_.bridged;
          emit(bridge);
          emit(u);
          return;
        }
      }
    }
    fail(FailureReason::EdgeTooLong, square_context("no bridge for a within-square step", s));
  }

  // Every unused vertex of square s, cells in tour order.
  std::vector<VertexId> take_remaining(SquareId s) {
    std::vector<VertexId> rest;
    for (const CellId c : square_cells(s)) {
      const std::size_t cell = t_.index(c);
      for (std::size_t i = cursor_[cell]; i < cls_.offsets[cell + 1]; ++i) rest.push_back(queue_[i]);
      cursor_[cell] = cls_.offsets[cell + 1];
    }
    return rest;
  }

  std::vector<VertexId> plan_group(const CellGroup& group) const {
    std::vector<CellId> cells = group.cells;
    std::sort(cells.begin(), cells.end(),
              [&](CellId a, CellId b) { return rank_in_square(a) < rank_in_square(b); });
    std::vector<VertexId> list;
    for (const CellId c : cells) {
      const auto vs = cls_.cell_vertices(t_.index(c));
      list.insert(list.end(), vs.begin(), vs.end());
    }
    auto path = cut_path(list, std::nullopt, std::nullopt, [&](VertexId a, VertexId b) { return close(a, b); });
    if (!path) fail(FailureReason::EdgeTooLong, square_context("sparse group has no short path", group.square));
    return std::move(*path);
  }

  const Hook& hook_of(CellId c) const {
    const Hook* h = in_.hooks.find(t_, c);
    if (h == nullptr) fail(FailureReason::HookMissing, cell_context("sparse cell without hook", c));
    return *h;
  }

  Step plan_step(GraphVertex from, GraphVertex to) const {
    const auto& gpp = in_.g_double_prime;
    if (gpp.is_new(to)) {
      Step step;
      step.group_path = plan_group(gpp.group(to));
      step.leave = hook_of(cell_of(step.group_path.front())).hook_cell;
      step.enter = hook_of(cell_of(step.group_path.back())).hook_cell;
      return step;
    }
    for (const std::size_t e : in_.g_prime.incident[from]) {
      const DenseEdge& edge = in_.g_prime.edges[e];
      if (edge.a == from && edge.b == to) return {edge.cell_a, edge.cell_b, {}};
      if (edge.b == from && edge.a == to) return {edge.cell_b, edge.cell_a, {}};
    }
    throw std::logic_error("traversal step between old vertices that share no G' edge");
  }

  SquareId square_of_vertex(GraphVertex v) const { return in_.g_prime.squares[v]; }

  void build() {
    const auto& seq = in_.plan.sequence;
    const auto& gpp = in_.g_double_prime;
    if (seq.empty()) throw std::invalid_argument("empty traversal plan");
    if (gpp.is_new(seq.front())) throw std::invalid_argument("traversal must start at an old vertex");
    cycle_.reserve(in_.vertices.size());

    std::vector<std::size_t> last(gpp.vertex_count(), 0);
    for (std::size_t i = 0; i < seq.size(); ++i) last[seq[i]] = i;

    // Plan every step first so bridges know which withdrawals are still owed.
    std::vector<Step> steps(seq.size());
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      if (gpp.is_new(seq[i])) continue;
      steps[i] = plan_step(seq[i], seq[i + 1]);
      ++demand_[t_.index(steps[i].leave)];
      ++demand_[t_.index(steps[i].enter)];
    }

    const SquareId root = square_of_vertex(seq.front());
    if (seq.size() == 1) {
      close_single_square(root);
      return;
    }

    std::optional<VertexId> entered;
    std::size_t pos = 0;
    while (pos + 1 < seq.size()) {
      const GraphVertex here = seq[pos];
      const GraphVertex next = seq[pos + 1];
      const SquareId square = square_of_vertex(here);
      Step& step = steps[pos];
      if (gpp.is_new(next)) {
        const VertexId u = withdraw(step.leave, entered, true);
        walk_to(entered, u, square);
        for (const VertexId v : step.group_path) emit(v);
        stats_.group_covered += step.group_path.size();
        const VertexId v = withdraw(step.enter, step.group_path.back(), true);
        emit(v);
        entered = v;
        pos += 2;
        continue;
      }
      const VertexId u = withdraw(step.leave, entered, true);
      if (pos == last[here]) {
        stitch(square, *entered, u);
      } else {
        walk_to(entered, u, square);
      }
      const VertexId v = withdraw(step.enter, u, true);
      emit(v);
      entered = v;
      ++pos;
    }
    close_root(root, *entered);
    if (cycle_.size() != in_.vertices.size()) {
      throw std::logic_error("constructed cycle does not cover every vertex");
    }
  }

  // Last visit of square s, entered at w: every unused vertex of s, then u.
  void stitch(SquareId s, VertexId w, VertexId u) {
    const auto rest = take_remaining(s);
    auto path = cut_path(rest, w, u, [&](VertexId a, VertexId b) { return close(a, b); });
    if (!path) fail(FailureReason::EdgeTooLong, square_context("no short sweep at last visit", s));
    for (const VertexId v : *path) emit(v);
    stats_.stitched += path->size();
    emit(u);
  }

  void close_root(SquareId root, VertexId w) {
    const VertexId start = cycle_.front();
    const auto rest = take_remaining(root);
    auto path = cut_path(rest, w, start, [&](VertexId a, VertexId b) { return close(a, b); });
    if (!path) fail(FailureReason::EdgeTooLong, square_context("no short sweep closing the cycle", root));
    for (const VertexId v : *path) emit(v);
    stats_.stitched += path->size();
    if (!close(cycle_.back(), start)) fail(FailureReason::EdgeTooLong, square_context("closing step", root));
  }

  // G'' is a single dense square: the cycle is that square's tour.
  void close_single_square(SquareId root) {
    const auto rest = take_remaining(root);
    const std::size_t n = rest.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!close(rest[i], rest[(i + 1) % n])) {
        fail(FailureReason::EdgeTooLong, square_context("single-square tour has a long step", root));
      }
    }
    for (const VertexId v : rest) emit(v);
    stats_.stitched += n;
  }

  const ConstructionInput& in_;
  const Tessellation& t_;
  const CellClassification& cls_;
  double r_;
  LpExponent p_;
  int k_;
  std::vector<std::array<int, 2>> tour_;
  std::vector<int> rank_;
  std::vector<VertexId> queue_;      // per-cell queues laid out like cls_.vertices
  std::vector<std::size_t> cursor_;  // first unused slot per cell
  std::vector<int> demand_;          // planned withdrawals not yet made
  std::vector<VertexId> cycle_;
  LedgerStats stats_;
};

}  // namespace

CliquePath within_clique_path(const Tessellation& t, const VertexSet& vs, std::span<const VertexId> vertices,
                              std::optional<VertexId> entry) {
  if (vertices.empty()) throw std::invalid_argument("clique path needs at least one vertex");
  const int k = t.cells_per_square_side();
  const auto rank = tour_rank(k);
  struct Keyed {
    std::size_t square;
    int rank;
    VertexId v;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(vertices.size());
  bool entry_seen = false;
  for (const VertexId v : vertices) {
    if (entry && v == *entry) {
      entry_seen = true;
      continue;
    }
    const CellId c = t.locate(vs[v]);
    keyed.push_back({t.index(t.square_of(c)), rank[static_cast<std::size_t>((c.row % k) * k + c.col % k)], v});
  }
  if (entry && !entry_seen) throw std::invalid_argument("entry vertex is not in the list");
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.square != b.square) return a.square < b.square;
    if (a.rank != b.rank) return a.rank < b.rank;
    return a.v < b.v;
  });
  CliquePath path;
  path.order.reserve(vertices.size());
  if (entry) path.order.push_back(*entry);
  for (const auto& kv : keyed) path.order.push_back(kv.v);
  path.front = path.order.front();
  path.back = path.order.back();
  return path;
}

ConstructionOutcome construct_cycle(const ConstructionInput& in) { return CycleBuilder(in).run(); }

Result<HamCycle> angular_cycle(const VertexSet& vs, double r, const LpExponent& p) {
  const std::size_t n = vs.size();
  if (n < 3) return ConstructionFailure{FailureReason::RadiusDegenerate, "a cycle needs n >= 3"};
  double cx = 0.0;
  double cy = 0.0;
  for (const auto& pt : vs.points) {
    cx += pt.x;
    cy += pt.y;
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  std::vector<double> angle(n);
  for (VertexId v = 0; v < n; ++v) angle[v] = std::atan2(vs[v].y - cy, vs[v].x - cx);
  HamCycle cyc;
  cyc.order.resize(n);
  std::iota(cyc.order.begin(), cyc.order.end(), VertexId{0});
  std::stable_sort(cyc.order.begin(), cyc.order.end(),
                   [&](VertexId a, VertexId b) { return angle[a] < angle[b]; });
  for (std::size_t i = 0; i < n; ++i) {
    if (lp_distance(p, vs[cyc.order[i]], vs[cyc.order[(i + 1) % n]]) > r) {
      return ConstructionFailure{FailureReason::RadiusDegenerate,
                                 "angular order around the centroid has a step longer than r"};
    }
  }
  return cyc;
}

std::string_view to_string(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::NotPermutation: return "NotPermutation";
    case ViolationKind::EdgeTooLong: return "EdgeTooLong";
  }
  return "?";
}

VerificationReport verify_cycle(const VertexSet& vs, double r, const LpExponent& p, std::span<const VertexId> cycle,
                                double relative_tolerance) {
  VerificationReport rep;
  const std::size_t n = vs.size();
  const auto reject = [&](std::size_t pos, ViolationKind kind, std::optional<double> d = std::nullopt) {
    rep.valid = false;
    rep.first_violation = Violation{pos, kind, d};
    return rep;
  };
  if (n < 3) return reject(0, ViolationKind::NotPermutation);

  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const VertexId v = cycle[i];
    if (v >= n || seen[v]) return reject(i, ViolationKind::NotPermutation);
    seen[v] = 1;
  }
  if (cycle.size() != n) return reject(cycle.size(), ViolationKind::NotPermutation);

  const double limit = r * (1.0 + relative_tolerance);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = lp_distance(p, vs[cycle[i]], vs[cycle[(i + 1) % n]]);
    if (!(d <= limit)) return reject(i, ViolationKind::EdgeTooLong, d);
  }
  rep.valid = true;
  return rep;
}

}  // namespace rggham
