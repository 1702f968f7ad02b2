// aux_graphs.hpp - the square-level graphs that order the Hamiltonian cycle.
//
// DensityGraph (G'): one vertex per dense square; friends R, S are joined when a
// dense cell of R is close to a dense cell of S. AugmentedGraph (G'') adds one
// leaf per (sparse square, hook square) group of sparse cells. A spanning tree of
// G'' walked depth-first, each edge once down and once up, is the TraversalPlan.
#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "rggham/failure.hpp"
#include "rggham/tessellation.hpp"

namespace rggham {

using GraphVertex = std::uint32_t;

struct DenseEdge {
  GraphVertex a = 0;  // lower square index
  GraphVertex b = 0;
  CellId cell_a;  // dense cell in square a
  CellId cell_b;  // dense cell in square b, close to cell_a
};

struct DensityGraph {
  std::vector<SquareId> squares;         // dense squares, row-major
  std::vector<std::int64_t> vertex_of;   // square index -> vertex, -1 if not dense
  std::vector<DenseEdge> edges;
  std::vector<std::vector<std::size_t>> incident;  // vertex -> edge indices

  std::size_t vertex_count() const noexcept { return squares.size(); }
  std::size_t degree(GraphVertex v) const noexcept { return incident[v].size(); }
  std::size_t max_degree() const noexcept;
};

DensityGraph build_g_prime(const Tessellation& t, const CellClassification& cls);

/// Row-major first Dense cell close to c. Requires c to be Sparse; a missing
/// hook is a HookMissing failure.
Result<CellId> find_hook_cell(const Tessellation& t, const CellClassification& cls, CellId c);

struct Hook {
  CellId sparse_cell;
  CellId hook_cell;
  SquareId hook_square;
};

/// Hooks for every sparse cell of every sparse square, in cell index order.
struct HookAssignment {
  std::vector<Hook> hooks;
  std::vector<std::int64_t> hook_of;  // cell index -> position in hooks, -1 if none

  const Hook* find(const Tessellation& t, CellId c) const noexcept {
    const auto pos = hook_of[t.index(c)];
    return pos < 0 ? nullptr : &hooks[static_cast<std::size_t>(pos)];
  }
};

Result<HookAssignment> assign_hooks(const Tessellation& t, const CellClassification& cls);

/// Sparse cells of one sparse square that share a hook square.
struct CellGroup {
  SquareId square;
  SquareId label;
  std::vector<CellId> cells;  // row-major
};

/// Vertices 0..old_count-1 are the DensityGraph vertices; old_count + g is group g.
struct AugmentedGraph {
  std::size_t old_count = 0;
  std::vector<CellGroup> groups;
  std::vector<std::pair<GraphVertex, GraphVertex>> edges;  // G' edges first, then one per group
  std::vector<std::vector<GraphVertex>> adjacency;          // sorted ascending

  std::size_t vertex_count() const noexcept { return old_count + groups.size(); }
  bool is_new(GraphVertex v) const noexcept { return v >= old_count; }
  const CellGroup& group(GraphVertex v) const { return groups[v - old_count]; }
};

/// Groups per sparse square in ascending label order. Propagates HookMissing.
Result<AugmentedGraph> build_g_double_prime(const Tessellation& t, const CellClassification& cls,
                                            const DensityGraph& gp, const HookAssignment& hooks);

/// Convenience overload computing the hooks itself.
Result<AugmentedGraph> build_g_double_prime(const Tessellation& t, const CellClassification& cls,
                                            const DensityGraph& gp);

/// BFS reachability. A graph without vertices is not connected.
bool is_gpp_connected(const AugmentedGraph& g);

struct SpanningTree {
  GraphVertex root = 0;
  std::vector<std::pair<GraphVertex, GraphVertex>> edges;  // (parent, child)
  std::vector<std::vector<GraphVertex>> children;          // ascending
  std::vector<std::int64_t> parent;                        // -1 for the root

  std::size_t degree(GraphVertex v) const noexcept {
    return children[v].size() + (parent[v] >= 0 ? 1 : 0);
  }
  std::size_t max_degree() const noexcept;
};

/// BFS tree from the smallest old vertex (smallest dense SquareId). Disconnected
/// if g is not connected or has no old vertex.
Result<SpanningTree> spanning_tree(const AugmentedGraph& g);

struct TraversalPlan {
  SpanningTree tree;
  std::vector<GraphVertex> sequence;  // starts and ends at the root
};

/// Depth-first walk crossing every tree edge twice; children in ascending order.
TraversalPlan euler_traversal(SpanningTree tree, GraphVertex root);
inline TraversalPlan euler_traversal(SpanningTree tree) {
  const GraphVertex root = tree.root;
  return euler_traversal(std::move(tree), root);
}

/// Edge-list dump: one "u v" line per edge, old vertices as S:col,row and groups
/// as N:col,row:col,row (square, then hook-square label).
void write_edge_list(std::ostream& out, const DensityGraph& gp);
void write_edge_list(std::ostream& out, const DensityGraph& gp, const AugmentedGraph& gpp);

}  // namespace rggham
