#include "rggham/tessellation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace rggham {

namespace {

// Cells whose boxes can be close to a given cell lie within this many cells on
// each axis: closeness needs (offset + 1) * cell_side <= r.
int close_window(const Tessellation& t) {
  return static_cast<int>(std::ceil(t.radius() / t.cell_side())) + 1;
}

bool is_interior(const Tessellation& t, CellId c) {
  const Box b = t.cell_box(c);
  const double r = t.radius();
  return b.x_lo >= r && 1.0 - b.x_hi >= r && b.y_lo >= r && 1.0 - b.y_hi >= r;
}

void finish_classes(const Tessellation& t, CellClassification& cls) {
  const std::size_t cells = t.cell_count();
  cls.cell_class.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const std::size_t size = cls.cell_size(c);
    cls.cell_class[c] = size >= kDenseThreshold ? CellClass::Dense
                        : size > 0              ? CellClass::Sparse
                                                : CellClass::Empty;
  }

  const int k = t.cells_per_square_side();
  cls.square_class.assign(t.square_count(), SquareClass::Empty);
  cls.dense_offsets.assign(t.square_count() + 1, 0);
  cls.dense_cells.clear();
  for (std::size_t s = 0; s < t.square_count(); ++s) {
    const SquareId sq = t.square_at(s);
    bool any_vertex = false;
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) {
        const CellId c = t.cell_in(sq, i, j);
        const CellClass cc = cls.cell_class[t.index(c)];
        if (cc == CellClass::Dense) cls.dense_cells.push_back(c);
        any_vertex = any_vertex || cc != CellClass::Empty;
      }
    }
    cls.dense_offsets[s + 1] = cls.dense_cells.size();
    if (cls.dense_offsets[s + 1] > cls.dense_offsets[s]) {
      cls.square_class[s] = SquareClass::Dense;
    } else if (any_vertex) {
      cls.square_class[s] = SquareClass::Sparse;
    }
  }
}

}  // namespace

Tessellation::Tessellation(double r, LpExponent p, int k) : r_(r), p_(p), m_(0), k_(k), y_(0.0), cell_side_(0.0) {
  if (!(r > 0.0) || r > 1.0) {
    throw std::invalid_argument("tessellation needs 0 < r <= 1");
  }
  if (k < 2) throw std::invalid_argument("tessellation needs k >= 2");
  m_ = static_cast<int>(std::floor(2.0 / r));
  y_ = 1.0 / m_;
  cell_side_ = y_ / k_;
  if (r <= 0.5) {
    // A cell must be close to itself.
    assert(lp_norm(p_, cell_side_, cell_side_) <= r_);
  }
}

Tessellation build_tessellation(double r, const LpExponent& p, int k) { return Tessellation(r, p, k); }

Box Tessellation::cell_box(CellId c) const noexcept {
  const double side = static_cast<double>(cells_per_side());
  return {c.col / side, (c.col + 1) / side, c.row / side, (c.row + 1) / side};
}

Box Tessellation::square_box(SquareId s) const noexcept {
  const double side = static_cast<double>(m_);
  return {s.col / side, (s.col + 1) / side, s.row / side, (s.row + 1) / side};
}

CellId Tessellation::locate(const Point2D& pt) const noexcept {
  const int side = cells_per_side();
  const double dside = static_cast<double>(side);
  // Consistent with cell_box: col / side <= x < (col + 1) / side.
  const auto axis = [&](double v) {
    double f = std::floor(v * dside);
    int c = f < 0.0 ? 0 : (f >= dside ? side - 1 : static_cast<int>(f));
    if (c + 1 < side && v >= (c + 1) / dside) ++c;
    if (c > 0 && v < c / dside) --c;
    return c;
  };
  return {axis(pt.x), axis(pt.y)};
}

std::string_view to_string(CellClass c) noexcept {
  switch (c) {
    case CellClass::Empty: return "empty";
    case CellClass::Sparse: return "sparse";
    case CellClass::Dense: return "dense";
  }
  return "?";
}

std::size_t CellClassification::count(CellClass c) const noexcept {
  return static_cast<std::size_t>(std::count(cell_class.begin(), cell_class.end(), c));
}

std::size_t CellClassification::count(SquareClass c) const noexcept {
  return static_cast<std::size_t>(std::count(square_class.begin(), square_class.end(), c));
}

CellClassification classify_cells(const Tessellation& t, const VertexSet& vs) {
  // Stable counting sort in two passes, by cell row and then by column within
  // each row band, so every scatter stays within a cache-sized range.
  const auto side = static_cast<std::size_t>(t.cells_per_side());
  CellClassification cls;
  std::vector<std::uint32_t> col_of(vs.size());
  std::vector<std::size_t> row_start(side + 1, 0);
  std::vector<std::uint32_t> row_of(vs.size());
  for (VertexId v = 0; v < vs.size(); ++v) {
    const CellId c = t.locate(vs[v]);
    col_of[v] = static_cast<std::uint32_t>(c.col);
    row_of[v] = static_cast<std::uint32_t>(c.row);
    ++row_start[row_of[v] + 1];
  }
  std::partial_sum(row_start.begin(), row_start.end(), row_start.begin());
  struct Placed {
    std::uint32_t v, col;
  };
  std::vector<Placed> by_row(vs.size());
  {
    std::vector<std::size_t> cursor(row_start.begin(), row_start.end() - 1);
    for (VertexId v = 0; v < vs.size(); ++v) {
      by_row[cursor[row_of[v]]++] = {static_cast<std::uint32_t>(v), col_of[v]};
    }
  }

  cls.offsets.assign(t.cell_count() + 1, 0);
  cls.vertices.resize(vs.size());
  std::vector<std::size_t> cursor(side);
  for (std::size_t row = 0; row < side; ++row) {
    const std::size_t base = row * side;
    for (std::size_t i = row_start[row]; i < row_start[row + 1]; ++i) ++cls.offsets[base + by_row[i].col + 1];
    std::size_t at = row_start[row];
    for (std::size_t col = 0; col < side; ++col) {
      cursor[col] = at;
      at += cls.offsets[base + col + 1];
      cls.offsets[base + col + 1] = at;
    }
    for (std::size_t i = row_start[row]; i < row_start[row + 1]; ++i) {
      cls.vertices[cursor[by_row[i].col]++] = by_row[i].v;
    }
  }
  finish_classes(t, cls);
  return cls;
}

CellClassification classification_from_lists(const Tessellation& t,
                                             const std::vector<std::vector<VertexId>>& lists) {
  if (lists.size() != t.cell_count()) {
    throw std::invalid_argument("one vertex list per cell required");
  }
  CellClassification cls;
  cls.offsets.assign(lists.size() + 1, 0);
  for (std::size_t c = 0; c < lists.size(); ++c) {
    cls.offsets[c + 1] = cls.offsets[c] + lists[c].size();
    cls.vertices.insert(cls.vertices.end(), lists[c].begin(), lists[c].end());
  }
  finish_classes(t, cls);
  return cls;
}

bool cells_close(const Tessellation& t, CellId a, CellId b) noexcept {
  return max_box_distance(t.norm(), t.cell_box(a), t.cell_box(b)) <= t.radius();
}

std::optional<CellId> first_dense_close_cell(const Tessellation& t, const CellClassification& cls,
                                             CellId c) noexcept {
  const int w = close_window(t);
  const int side = t.cells_per_side();
  const int r0 = std::max(0, c.row - w);
  const int r1 = std::min(side - 1, c.row + w);
  const int c0 = std::max(0, c.col - w);
  const int c1 = std::min(side - 1, c.col + w);
  for (int row = r0; row <= r1; ++row) {
    for (int col = c0; col <= c1; ++col) {
      const CellId b{col, row};
      if (cls.cell_class[t.index(b)] == CellClass::Dense && cells_close(t, c, b)) return b;
    }
  }
  return std::nullopt;
}

bool friends(SquareId a, SquareId b) {
  if (a == b) throw std::invalid_argument("friendship is defined for distinct squares");
  return std::max(std::abs(a.col - b.col), std::abs(a.row - b.row)) <= kFriendRadius;
}

std::size_t count_K_at(const Tessellation& t, CellId c) {
  if (!is_interior(t, c)) {
    throw std::domain_error("anchor cell is closer than r to the boundary");
  }
  const int w = close_window(t);
  const int side = t.cells_per_side();
  std::size_t count = 0;
  for (int row = c.row; row <= std::min(side - 1, c.row + w); ++row) {
    for (int col = c.col; col <= std::min(side - 1, c.col + w); ++col) {
      const CellId b{col, row};
      if (b != c && cells_close(t, c, b)) ++count;
    }
  }
  return count;
}

std::size_t count_K(const Tessellation& t) {
  const int mid = t.cells_per_side() / 2;
  const CellId c{mid, mid};
  if (!is_interior(t, c)) {
    throw std::domain_error("no cell lies at distance >= r from the boundary; r is too large");
  }
  return count_K_at(t, c);
}

std::size_t lattice_K(const LpExponent& p, int k, double r_over_y) {
  // Offsets (a-1, b-1) in cells; the sup distance spans a and b cells per axis.
  const double limit = r_over_y * k;
  const int reach = static_cast<int>(std::ceil(limit)) + 1;
  std::size_t count = 0;
  for (int b = 1; b <= reach; ++b) {
    for (int a = 1; a <= reach; ++a) {
      if (a == 1 && b == 1) continue;
      if (lp_norm(p, a, b) <= limit) ++count;
    }
  }
  return count;
}

KChoice choose_k(const LpExponent& p, double eps, int k_max, double r_over_y, int k_min) {
  const double alpha = alpha_p(p);
  if (!(eps > 0.0) || eps >= alpha) throw std::invalid_argument("choose_k needs 0 < eps < alpha_p");
  if (k_min < 2 || k_max < k_min) throw std::invalid_argument("choose_k needs 2 <= k_min <= k_max");
  const double target = alpha - eps / 2.0;
  for (int k = k_min; k <= k_max; ++k) {
    const std::size_t K = lattice_K(p, k, r_over_y);
    if (static_cast<double>(K) >= target * k * k) return {k, K, true};
  }
  return {k_max, lattice_K(p, k_max, r_over_y), false};
}

std::string_view to_string(DensityViolation::Kind kind) noexcept {
  switch (kind) {
    case DensityViolation::Kind::CornerCellNotDense: return "corner_cell_not_dense";
    case DensityViolation::Kind::NoDenseCloseCell: return "no_dense_close_cell";
  }
  return "?";
}

DiagnosticsReport density_diagnostics(const Tessellation& t, const CellClassification& cls,
                                      std::size_t max_listed) {
  DiagnosticsReport rep;
  rep.m = t.squares_per_side();
  rep.k = t.cells_per_square_side();
  rep.y = t.square_side();
  rep.r = t.radius();
  rep.dense_cells = cls.count(CellClass::Dense);
  rep.sparse_cells = cls.count(CellClass::Sparse);
  rep.empty_cells = cls.count(CellClass::Empty);
  rep.dense_squares = cls.count(SquareClass::Dense);
  rep.sparse_squares = cls.count(SquareClass::Sparse);
  rep.empty_squares = cls.count(SquareClass::Empty);
  try {
    rep.K = count_K(t);
  } catch (const std::domain_error&) {
    rep.K.reset();
  }

  const auto record = [&](DensityViolation::Kind kind, CellId c) {
    if (rep.violations.size() < max_listed) rep.violations.push_back({kind, c});
  };

  // Cell boxes within 4y of a side: the first / last 4k cells on that axis.
  const int side = t.cells_per_side();
  const int band = 4 * t.cells_per_square_side();
  for (std::size_t idx = 0; idx < t.cell_count(); ++idx) {
    const CellId c = t.cell_at(idx);
    const int sides = (c.col < band) + (c.col >= side - band) + (c.row < band) + (c.row >= side - band);
    if (sides >= 2 && cls.cell_class[idx] != CellClass::Dense) {
      ++rep.corner_violations;
      record(DensityViolation::Kind::CornerCellNotDense, c);
    }
  }
  for (std::size_t idx = 0; idx < t.cell_count(); ++idx) {
    if (cls.cell_class[idx] != CellClass::Sparse) continue;
    const CellId c = t.cell_at(idx);
    if (!first_dense_close_cell(t, cls, c)) {
      ++rep.hook_violations;
      record(DensityViolation::Kind::NoDenseCloseCell, c);
    }
  }
  return rep;
}

}  // namespace rggham
