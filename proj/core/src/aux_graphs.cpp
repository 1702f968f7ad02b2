#include "rggham/aux_graphs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rggham {

namespace {

std::string describe(CellId c) {
  std::ostringstream out;
  out << "cell " << c.col << "," << c.row;
  return out.str();
}

void write_square(std::ostream& out, SquareId s) { out << s.col << ',' << s.row; }

}  // namespace

std::size_t DensityGraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& inc : incident) best = std::max(best, inc.size());
  return best;
}

DensityGraph build_g_prime(const Tessellation& t, const CellClassification& cls) {
  DensityGraph g;
  g.vertex_of.assign(t.square_count(), -1);
  for (std::size_t s = 0; s < t.square_count(); ++s) {
    if (cls.square_class[s] == SquareClass::Dense) {
      g.vertex_of[s] = static_cast<std::int64_t>(g.squares.size());
      g.squares.push_back(t.square_at(s));
    }
  }
  g.incident.resize(g.squares.size());

  const int m = t.squares_per_side();
  for (GraphVertex a = 0; a < g.squares.size(); ++a) {
    const SquareId R = g.squares[a];
    const auto cells_r = cls.dense_cells_of(t.index(R));
    for (int dr = -kFriendRadius; dr <= kFriendRadius; ++dr) {
      for (int dc = -kFriendRadius; dc <= kFriendRadius; ++dc) {
        const SquareId S{R.col + dc, R.row + dr};
        if (S.col < 0 || S.row < 0 || S.col >= m || S.row >= m) continue;
        if (!(R < S)) continue;
        const auto vs = g.vertex_of[t.index(S)];
        if (vs < 0) continue;
        const auto cells_s = cls.dense_cells_of(t.index(S));
        bool found = false;
        for (const CellId c1 : cells_r) {
          for (const CellId c2 : cells_s) {
            if (cells_close(t, c1, c2)) {
              const auto b = static_cast<GraphVertex>(vs);
              g.incident[a].push_back(g.edges.size());
              g.incident[b].push_back(g.edges.size());
              g.edges.push_back({a, b, c1, c2});
              found = true;
              break;
            }
          }
          if (found) break;
        }
      }
    }
  }
  return g;
}

Result<CellId> find_hook_cell(const Tessellation& t, const CellClassification& cls, CellId c) {
  if (cls.cell_class[t.index(c)] != CellClass::Sparse) {
    throw std::invalid_argument("find_hook_cell needs a sparse cell");
  }
  if (auto hook = first_dense_close_cell(t, cls, c)) return *hook;
  return ConstructionFailure{FailureReason::HookMissing, "no dense cell is close to sparse " + describe(c)};
}

Result<HookAssignment> assign_hooks(const Tessellation& t, const CellClassification& cls) {
  HookAssignment out;
  out.hook_of.assign(t.cell_count(), -1);
  const int k = t.cells_per_square_side();
  for (std::size_t s = 0; s < t.square_count(); ++s) {
    if (cls.square_class[s] != SquareClass::Sparse) continue;
    const SquareId sq = t.square_at(s);
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) {
        const CellId c = t.cell_in(sq, i, j);
        if (cls.cell_class[t.index(c)] != CellClass::Sparse) continue;
        auto hook = find_hook_cell(t, cls, c);
        if (!hook) return hook.failure();
        out.hook_of[t.index(c)] = static_cast<std::int64_t>(out.hooks.size());
        out.hooks.push_back({c, hook.value(), t.square_of(hook.value())});
      }
    }
  }
  return out;
}

Result<AugmentedGraph> build_g_double_prime(const Tessellation& t, const CellClassification& cls,
                                            const DensityGraph& gp, const HookAssignment& hooks) {
  AugmentedGraph g;
  g.old_count = gp.vertex_count();
  for (const auto& e : gp.edges) g.edges.emplace_back(e.a, e.b);

  const int k = t.cells_per_square_side();
  for (std::size_t s = 0; s < t.square_count(); ++s) {
    if (cls.square_class[s] != SquareClass::Sparse) continue;
    const SquareId sq = t.square_at(s);
    std::map<std::size_t, std::vector<CellId>> by_label;  // ascending label index
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) {
        const CellId c = t.cell_in(sq, i, j);
        if (cls.cell_class[t.index(c)] != CellClass::Sparse) continue;
        const Hook* hook = hooks.find(t, c);
        if (hook == nullptr) {
          return ConstructionFailure{FailureReason::HookMissing, "sparse " + describe(c) + " has no hook"};
        }
        by_label[t.index(hook->hook_square)].push_back(c);
      }
    }
    for (auto& [label_index, cells] : by_label) {
      const auto old = gp.vertex_of[label_index];
      if (old < 0) {
        return ConstructionFailure{FailureReason::HookMissing, "hook square of a sparse cell is not dense"};
      }
      const auto v = static_cast<GraphVertex>(g.old_count + g.groups.size());
      g.groups.push_back({sq, t.square_at(label_index), std::move(cells)});
      g.edges.emplace_back(static_cast<GraphVertex>(old), v);
    }
  }

  g.adjacency.resize(g.vertex_count());
  for (const auto& [a, b] : g.edges) {
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
  return g;
}

Result<AugmentedGraph> build_g_double_prime(const Tessellation& t, const CellClassification& cls,
                                            const DensityGraph& gp) {
  auto hooks = assign_hooks(t, cls);
  if (!hooks) return hooks.failure();
  return build_g_double_prime(t, cls, gp, hooks.value());
}

bool is_gpp_connected(const AugmentedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<GraphVertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const GraphVertex v = stack.back();
    stack.pop_back();
    for (GraphVertex w : g.adjacency[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

std::size_t SpanningTree::max_degree() const noexcept {
  std::size_t best = 0;
  for (GraphVertex v = 0; v < children.size(); ++v) best = std::max(best, degree(v));
  return best;
}

Result<SpanningTree> spanning_tree(const AugmentedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (g.old_count == 0) {
    return ConstructionFailure{FailureReason::Disconnected, "G'' has no dense square to root the tree"};
  }
  SpanningTree tree;
  tree.root = 0;
  tree.children.resize(n);
  tree.parent.assign(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<GraphVertex> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const GraphVertex v = queue.front();
    queue.pop_front();
    for (GraphVertex w : g.adjacency[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      ++reached;
      tree.parent[w] = v;
      tree.children[v].push_back(w);
      tree.edges.emplace_back(v, w);
      queue.push_back(w);
    }
  }
  if (reached != n) {
    std::ostringstream msg;
    msg << "G'' is disconnected: " << reached << " of " << n << " vertices reachable from the root";
    return ConstructionFailure{FailureReason::Disconnected, msg.str()};
  }
  return tree;
}

TraversalPlan euler_traversal(SpanningTree tree, GraphVertex root) {
  if (root >= tree.children.size()) throw std::invalid_argument("traversal root out of range");
  // Re-root if asked for a root other than the tree's own.
  if (root != tree.root) {
    const std::size_t n = tree.children.size();
    std::vector<std::vector<GraphVertex>> adj(n);
    for (const auto& [a, b] : tree.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    SpanningTree rerooted;
    rerooted.root = root;
    rerooted.children.resize(n);
    rerooted.parent.assign(n, -1);
    std::vector<GraphVertex> order{root};
    std::vector<char> seen(n, 0);
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const GraphVertex v = order[i];
      std::sort(adj[v].begin(), adj[v].end());
      for (GraphVertex w : adj[v]) {
        if (seen[w]) continue;
        seen[w] = 1;
        rerooted.parent[w] = v;
        rerooted.children[v].push_back(w);
        rerooted.edges.emplace_back(v, w);
        order.push_back(w);
      }
    }
    tree = std::move(rerooted);
  }

  TraversalPlan plan;
  plan.sequence.reserve(2 * tree.edges.size() + 1);
  plan.sequence.push_back(root);
  std::vector<std::pair<GraphVertex, std::size_t>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < tree.children[v].size()) {
      const GraphVertex child = tree.children[v][next++];
      plan.sequence.push_back(child);
      stack.emplace_back(child, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) plan.sequence.push_back(stack.back().first);
    }
  }
  plan.tree = std::move(tree);
  return plan;
}

void write_edge_list(std::ostream& out, const DensityGraph& gp) {
  for (const auto& e : gp.edges) {
    out << "S:";
    write_square(out, gp.squares[e.a]);
    out << " S:";
    write_square(out, gp.squares[e.b]);
    out << '\n';
  }
}

void write_edge_list(std::ostream& out, const DensityGraph& gp, const AugmentedGraph& gpp) {
  const auto name = [&](GraphVertex v) {
    std::ostringstream s;
    if (gpp.is_new(v)) {
      const auto& grp = gpp.group(v);
      s << "N:";
      write_square(s, grp.square);
      s << ':';
      write_square(s, grp.label);
    } else {
      s << "S:";
      write_square(s, gp.squares[v]);
    }
    return s.str();
  };
  for (const auto& [a, b] : gpp.edges) out << name(a) << ' ' << name(b) << '\n';
}

}  // namespace rggham
