// pipeline.hpp - the full construction on a given vertex set:
// tessellate -> classify -> G' -> hooks -> G'' -> tree -> traversal -> cycle.
#pragma once

#include <optional>

#include "rggham/aux_graphs.hpp"
#include "rggham/hamiltonian.hpp"
#include "rggham/tessellation.hpp"

namespace rggham {

struct SolveOptions {
  /// Cells per square side; 0 derives it with choose_k from the instance's margin.
  int k = 0;
  int k_max = kDefaultMaxCellsPerSide;
};

/// Intermediate structures, filled as far as the construction got.
struct SolveArtifacts {
  std::optional<Tessellation> tessellation;
  std::optional<CellClassification> classification;
  std::optional<DensityGraph> g_prime;
  std::optional<HookAssignment> hooks;
  std::optional<AugmentedGraph> g_double_prime;
  std::optional<TraversalPlan> plan;
  LedgerStats ledger;
};

struct SolveResult {
  std::optional<HamCycle> cycle;
  std::optional<ConstructionFailure> failure;
  int k = 0;
  bool degenerate = false;  // r > 1: angular fallback, no tessellation
  SolveArtifacts artifacts;

  bool ok() const noexcept { return cycle.has_value(); }
};

/// r / y for the tessellation of radius r, i.e. r * floor(2/r); in (2 - r, 2].
double radius_to_square_ratio(double r);

/// k for an instance with n vertices at radius r: choose_k with the margin
/// eps = alpha_p - log n / (n r^2) at the instance's own r / y. At or below the
/// threshold (eps <= 0) there is no margin to meet and kMinCellsPerSide is used.
int derive_k(std::size_t n, double r, const LpExponent& p, int k_max = kDefaultMaxCellsPerSide);

/// k shared by every instance at threshold multiplier c, where
/// eps = alpha_p (1 - 1/c^2) does not depend on n. K grows with r / y, so the
/// choice is made at the smallest ratio the instances will see.
int derive_k_for_multiplier(double c, const LpExponent& p, double min_r_over_y,
                            int k_max = kDefaultMaxCellsPerSide);

/// Runs the construction. Throws std::invalid_argument for n < 3 or r <= 0.
/// Construction failures are reported in the result, never thrown.
SolveResult solve(const VertexSet& vs, double r, const LpExponent& p, const SolveOptions& opts = {});

}  // namespace rggham
