#include "rggham/pipeline.hpp"

#include <cmath>
#include <stdexcept>

namespace rggham {

namespace {

int k_for_margin(double eps, const LpExponent& p, double r_over_y, int k_max) {
  if (!(eps > 0.0) || eps >= alpha_p(p)) return kMinCellsPerSide;
  return choose_k(p, eps, std::max(k_max, kMinCellsPerSide), r_over_y).k;
}

}  // namespace

double radius_to_square_ratio(double r) {
  if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("square ratio needs 0 < r <= 1");
  return r * std::floor(2.0 / r);
}

int derive_k(std::size_t n, double r, const LpExponent& p, int k_max) {
  return k_for_margin(supercritical_margin(n, p, r), p, radius_to_square_ratio(r), k_max);
}

int derive_k_for_multiplier(double c, const LpExponent& p, double min_r_over_y, int k_max) {
  if (!(c > 0.0)) throw std::invalid_argument("multiplier must be positive");
  return k_for_margin(alpha_p(p) * (1.0 - 1.0 / (c * c)), p, min_r_over_y, k_max);
}

SolveResult solve(const VertexSet& vs, double r, const LpExponent& p, const SolveOptions& opts) {
  if (vs.size() < 3) throw std::invalid_argument("a Hamiltonian cycle needs n >= 3 vertices");
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radius must be positive and finite");

  SolveResult res;
  if (r > 1.0) {
    res.degenerate = true;
    auto cyc = angular_cycle(vs, r, p);
    if (cyc) {
      res.cycle = std::move(cyc).value();
    } else {
      res.failure = cyc.failure();
    }
    return res;
  }

  res.k = opts.k > 0 ? opts.k : derive_k(vs.size(), r, p, opts.k_max);
  auto& art = res.artifacts;
  const Tessellation& t = art.tessellation.emplace(r, p, res.k);
  const CellClassification& cls = art.classification.emplace(classify_cells(t, vs));
  const DensityGraph& gp = art.g_prime.emplace(build_g_prime(t, cls));

  auto hooks = assign_hooks(t, cls);
  if (!hooks) {
    res.failure = hooks.failure();
    return res;
  }
  const HookAssignment& hk = art.hooks.emplace(std::move(hooks).value());

  auto gpp = build_g_double_prime(t, cls, gp, hk);
  if (!gpp) {
    res.failure = gpp.failure();
    return res;
  }
  const AugmentedGraph& g2 = art.g_double_prime.emplace(std::move(gpp).value());

  auto tree = spanning_tree(g2);
  if (!tree) {
    res.failure = tree.failure();
    return res;
  }
  const TraversalPlan& plan = art.plan.emplace(euler_traversal(std::move(tree).value()));

  ConstructionOutcome built = construct_cycle({vs, t, cls, gp, hk, g2, plan});
  art.ledger = built.ledger;
  res.cycle = std::move(built.cycle);
  res.failure = std::move(built.failure);
  return res;
}

}  // namespace rggham
