// tessellation.hpp - the two-level grid: squares of side y = 1/floor(2/r), each
// split into k x k cells, with per-cell vertex buckets and density classes.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rggham/lp_geometry.hpp"
#include "rggham/rgg_instance.hpp"

namespace rggham {

/// A cell with at least this many vertices is dense. Fixed: the traversal
/// budget spends two vertices per visit and a square is visited at most
/// kMaxFriends times.
inline constexpr std::size_t kDenseThreshold = 48;
/// Friendship reaches squares at Chebyshev index distance <= 2.
inline constexpr int kFriendRadius = 2;
inline constexpr std::size_t kMaxFriends = 24;
/// Smallest k choose_k will return.
inline constexpr int kMinCellsPerSide = 4;
inline constexpr int kDefaultMaxCellsPerSide = 64;

struct CellId {
  int col = 0;
  int row = 0;
  friend bool operator==(const CellId&, const CellId&) = default;
  friend auto operator<=>(const CellId& a, const CellId& b) {
    if (auto c = a.row <=> b.row; c != 0) return c;
    return a.col <=> b.col;
  }
};

struct SquareId {
  int col = 0;
  int row = 0;
  friend bool operator==(const SquareId&, const SquareId&) = default;
  /// Row-major: lower row first, then lower column.
  friend auto operator<=>(const SquareId& a, const SquareId& b) {
    if (auto c = a.row <=> b.row; c != 0) return c;
    return a.col <=> b.col;
  }
};

class Tessellation {
 public:
  Tessellation(double r, LpExponent p, int k);

  int squares_per_side() const noexcept { return m_; }
  int cells_per_square_side() const noexcept { return k_; }
  int cells_per_side() const noexcept { return m_ * k_; }
  double square_side() const noexcept { return y_; }
  double cell_side() const noexcept { return cell_side_; }
  double radius() const noexcept { return r_; }
  const LpExponent& norm() const noexcept { return p_; }

  std::size_t square_count() const noexcept { return static_cast<std::size_t>(m_) * m_; }
  std::size_t cell_count() const noexcept {
    return static_cast<std::size_t>(cells_per_side()) * cells_per_side();
  }

  std::size_t index(CellId c) const noexcept {
    return static_cast<std::size_t>(c.row) * cells_per_side() + c.col;
  }
  std::size_t index(SquareId s) const noexcept { return static_cast<std::size_t>(s.row) * m_ + s.col; }
  CellId cell_at(std::size_t idx) const noexcept {
    const auto side = static_cast<std::size_t>(cells_per_side());
    return {static_cast<int>(idx % side), static_cast<int>(idx / side)};
  }
  SquareId square_at(std::size_t idx) const noexcept {
    return {static_cast<int>(idx % m_), static_cast<int>(idx / m_)};
  }
  SquareId square_of(CellId c) const noexcept { return {c.col / k_, c.row / k_}; }
  /// Cell (i, j) of square s, i = column offset, j = row offset.
  CellId cell_in(SquareId s, int i, int j) const noexcept { return {s.col * k_ + i, s.row * k_ + j}; }

  Box cell_box(CellId c) const noexcept;
  Box square_box(SquareId s) const noexcept;

  /// Half-open assignment; coordinate 1.0 clamps to the last cell.
  CellId locate(const Point2D& pt) const noexcept;

 private:
  double r_;
  LpExponent p_;
  int m_;
  int k_;
  double y_;
  double cell_side_;
};

/// Throws std::invalid_argument unless 0 < r <= 1 and k >= 2.
Tessellation build_tessellation(double r, const LpExponent& p, int k);

inline CellId locate(const Tessellation& t, const Point2D& pt) noexcept { return t.locate(pt); }

enum class CellClass : std::uint8_t { Empty, Sparse, Dense };
enum class SquareClass : std::uint8_t { Empty, Sparse, Dense };

std::string_view to_string(CellClass c) noexcept;

/// Per-cell vertex lists (CSR, vertex index order within a cell), density
/// classes, and per-square summaries.
struct CellClassification {
  std::vector<std::size_t> offsets;  // cell_count + 1
  std::vector<VertexId> vertices;
  std::vector<CellClass> cell_class;
  std::vector<SquareClass> square_class;
  std::vector<std::size_t> dense_offsets;  // square_count + 1, CSR into dense_cells
  std::vector<CellId> dense_cells;         // row-major within each square

  std::span<const VertexId> cell_vertices(std::size_t cell_index) const noexcept {
    return {vertices.data() + offsets[cell_index], offsets[cell_index + 1] - offsets[cell_index]};
  }
  std::size_t cell_size(std::size_t cell_index) const noexcept {
    return offsets[cell_index + 1] - offsets[cell_index];
  }
  std::span<const CellId> dense_cells_of(std::size_t square_index) const noexcept {
    return {dense_cells.data() + dense_offsets[square_index],
            dense_offsets[square_index + 1] - dense_offsets[square_index]};
  }
  std::size_t count(CellClass c) const noexcept;
  std::size_t count(SquareClass c) const noexcept;
};

/// Single pass over the vertices plus one over the cells: O(n + (mk)^2).
CellClassification classify_cells(const Tessellation& t, const VertexSet& vs);

/// Class lists from explicit per-cell vertex lists; used to inject hand-built
/// configurations. lists.size() must equal t.cell_count().
CellClassification classification_from_lists(const Tessellation& t,
                                             const std::vector<std::vector<VertexId>>& lists);

/// max_box_distance(p, box(a), box(b)) <= r.
bool cells_close(const Tessellation& t, CellId a, CellId b) noexcept;

/// Row-major (row, then column) first Dense cell close to c, if any.
std::optional<CellId> first_dense_close_cell(const Tessellation& t, const CellClassification& cls,
                                             CellId c) noexcept;

/// Squares adjacent (share a corner) or sharing a common adjacent square.
/// Requires a != b.
bool friends(SquareId a, SquareId b);

/// Cells close to a central cell c with col >= c.col, row >= c.row, excluding c.
/// Throws std::domain_error when no cell lies at distance >= r from the boundary.
std::size_t count_K(const Tessellation& t);
/// Same count anchored at a specific cell; throws std::domain_error if c is not
/// at distance >= r from the boundary.
std::size_t count_K_at(const Tessellation& t, CellId c);

/// K on an unbounded lattice of cells with side 1/k relative to a square side of
/// 1 and closeness radius r_over_y; matches count_K for a tessellation with the
/// same k and r / y up to rounding at exact ties. Since y = 1/floor(2/r), r / y
/// lies in (2 - r, 2], with 2 exactly when 2/r is an integer.
std::size_t lattice_K(const LpExponent& p, int k, double r_over_y = 2.0);

struct KChoice {
  int k = kMinCellsPerSide;
  std::size_t K = 0;
  bool qualified = false;  // false: no k up to the cap met the bound, k is the cap
};

/// Smallest k in [k_min, k_max] with lattice_K >= (alpha_p - eps/2) k^2 at the
/// given r / y. Throws std::invalid_argument unless 0 < eps < alpha_p and
/// 2 <= k_min <= k_max.
KChoice choose_k(const LpExponent& p, double eps, int k_max = kDefaultMaxCellsPerSide,
                 double r_over_y = 2.0, int k_min = kMinCellsPerSide);

struct DensityViolation {
  enum class Kind { CornerCellNotDense, NoDenseCloseCell };
  Kind kind;
  CellId cell;
};

std::string_view to_string(DensityViolation::Kind kind) noexcept;

struct DiagnosticsReport {
  int m = 0;
  int k = 0;
  double y = 0.0;
  double r = 0.0;
  std::size_t dense_cells = 0;
  std::size_t sparse_cells = 0;
  std::size_t empty_cells = 0;
  std::size_t dense_squares = 0;
  std::size_t sparse_squares = 0;
  std::size_t empty_squares = 0;
  std::optional<std::size_t> K;  // absent when no interior cell exists
  std::size_t corner_violations = 0;
  std::size_t hook_violations = 0;
  std::vector<DensityViolation> violations;  // the first max_listed of them
};

/// Empirical per-instance checks: every cell within 4y of two sides is dense,
/// and every sparse cell has a dense close cell. Never throws on degenerate input.
DiagnosticsReport density_diagnostics(const Tessellation& t, const CellClassification& cls,
                                      std::size_t max_listed = 64);

}  // namespace rggham
