// hamiltonian.hpp - assembling the Hamiltonian cycle along a traversal plan, and
// checking any claimed cycle against the raw geometry.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rggham/aux_graphs.hpp"
#include "rggham/failure.hpp"
#include "rggham/rgg_instance.hpp"
#include "rggham/tessellation.hpp"

namespace rggham {

struct HamCycle {
  std::vector<VertexId> order;
};

/// Closed tour of the k x k cells of a square, as (column, row) offsets starting
/// at (0, 0). Consecutive cells, including last -> first, share an edge; for odd
/// k exactly one step is diagonal.
std::vector<std::array<int, 2>> square_cell_tour(int k);

struct CliquePath {
  std::vector<VertexId> order;
  VertexId front = 0;
  VertexId back = 0;
};

/// Deterministic path through vertices of one square: cells in tour order,
/// vertex index order inside a cell, entry first when given. Requires a non-empty
/// vertex list; entry, when given, must be one of them.
CliquePath within_clique_path(const Tessellation& t, const VertexSet& vs, std::span<const VertexId> vertices,
                              std::optional<VertexId> entry = std::nullopt);

/// Everything construct_cycle reads; all references must outlive the call.
struct ConstructionInput {
  const VertexSet& vertices;
  const Tessellation& tessellation;
  const CellClassification& classification;
  const DensityGraph& g_prime;
  const HookAssignment& hooks;
  const AugmentedGraph& g_double_prime;
  const TraversalPlan& plan;
};

struct LedgerStats {
  std::size_t dequeued = 0;        // witness and hook withdrawals, bridges included
  std::size_t bridged = 0;         // extra vertices inserted to keep within-square steps <= r
  std::size_t stitched = 0;        // swept up at last visits
  std::size_t group_covered = 0;   // vertices of sparse-cell groups
  std::size_t max_dense_withdrawals = 0;
};

struct ConstructionOutcome {
  std::optional<HamCycle> cycle;
  std::optional<ConstructionFailure> failure;
  LedgerStats ledger;

  bool ok() const noexcept { return cycle.has_value(); }
};

/// Walks the traversal: witness cells for dense-to-dense steps, hook cells
/// around each sparse group, and a sweep of the remaining vertices of a square
/// at its last visit. Every emitted edge is checked against r; a step that
/// cannot be made short enough fails with EdgeTooLong. O(n + squares).
ConstructionOutcome construct_cycle(const ConstructionInput& in);

/// Fallback for r > 1, where the grid degenerates: vertices sorted by angle
/// around their centroid, accepted only if every edge is within r.
Result<HamCycle> angular_cycle(const VertexSet& vs, double r, const LpExponent& p);

enum class ViolationKind { NotPermutation, EdgeTooLong };
std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  std::size_t position = 0;  // cycle position (edge from position to position + 1)
  ViolationKind kind = ViolationKind::NotPermutation;
  std::optional<double> distance;
};

struct VerificationReport {
  bool valid = false;
  std::optional<Violation> first_violation;
};

/// (a) cycle is a permutation of 0..n-1 with n >= 3; (b) every consecutive
/// pair, wrap-around included, has lp_distance <= r * (1 + relative_tolerance).
/// Independent of every construction structure. O(n).
VerificationReport verify_cycle(const VertexSet& vs, double r, const LpExponent& p, std::span<const VertexId> cycle,
                                double relative_tolerance = 0.0);

}  // namespace rggham
