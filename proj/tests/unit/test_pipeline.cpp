#include <stdexcept>

#include <gtest/gtest.h>

#include "rggham/pipeline.hpp"
#include "support.hpp"

namespace rggham {
namespace {

struct Case {
  double p;  // 0 for infinity
  double r;
  std::uint64_t seed;
};

LpExponent exponent(double p) { return p == 0.0 ? LpExponent::infinity() : LpExponent(p); }

class DenseRegime : public ::testing::TestWithParam<Case> {};

TEST_P(DenseRegime, CycleVerifiedAndInvariantsHold) {
  const auto [pv, r, seed] = GetParam();
  const LpExponent p = exponent(pv);
  const std::size_t n = 120'000;
  const VertexSet vs = sample_points({n, p, radius::Explicit{r}, seed});
  const SolveResult res = solve(vs, r, p);
  ASSERT_TRUE(res.ok()) << res.failure->context;
  EXPECT_FALSE(res.degenerate);
  EXPECT_EQ(res.k, derive_k(n, r, p));
  const auto rep = verify_cycle(vs, r, p, res.cycle->order);
  EXPECT_TRUE(rep.valid);
  const auto bad = testing::structural_violations(res, p, supercritical_margin(n, p, r));
  EXPECT_TRUE(bad.empty()) << bad.front();
}

TEST_P(DenseRegime, ThinnedSquaresGoThroughGroups) {
  const auto [pv, r, seed] = GetParam();
  const LpExponent p = exponent(pv);
  VertexSet vs = sample_points({120'000, p, radius::Explicit{r}, seed + 100});
  const Tessellation t(r, p, derive_k(vs.size(), r, p));
  vs = testing::thin_square(vs, t, {1, 1}, 4);
  vs = testing::thin_square(vs, t, {4, 2}, 0);
  vs = testing::thin_square(vs, t, {t.squares_per_side() - 1, 3}, 10);
  const SolveResult res = solve(vs, r, p);
  ASSERT_TRUE(res.ok()) << res.failure->context;
  EXPECT_TRUE(verify_cycle(vs, r, p, res.cycle->order).valid);
  EXPECT_GE(res.artifacts.g_double_prime->groups.size(), 2u);
  const auto bad = testing::structural_violations(res, p, supercritical_margin(vs.size(), p, r));
  EXPECT_TRUE(bad.empty()) << bad.front();
}

INSTANTIATE_TEST_SUITE_P(Norms, DenseRegime,
                         ::testing::Values(Case{1.0, 0.25, 1}, Case{1.5, 0.25, 2}, Case{2.0, 0.25, 3},
                                           Case{0.0, 0.25, 4}, Case{1.0, 0.24, 5}, Case{1.5, 0.24, 6},
                                           Case{2.0, 0.24, 7}, Case{0.0, 0.24, 8}));

TEST(Solve, DeskScaleInstancesFailWithoutDenseCells) {
  const std::size_t n = 10'000;
  const LpExponent p(2.0);
  const double r = 2.0 * threshold_radius(n, p);
  const VertexSet vs = sample_points({n, p, radius::Explicit{r}, 1});
  const SolveResult res = solve(vs, r, p);
  ASSERT_FALSE(res.ok());
  EXPECT_EQ(res.failure->reason, FailureReason::HookMissing);
  EXPECT_EQ(res.artifacts.g_prime->vertex_count(), 0u);
}

TEST(Solve, Preconditions) {
  VertexSet two;
  two.points = {{0.1, 0.1}, {0.2, 0.2}};
  EXPECT_THROW(solve(two, 0.3, LpExponent(2)), std::invalid_argument);
  const VertexSet vs = sample_points({10, LpExponent(2), radius::Explicit{0.3}, 1});
  EXPECT_THROW(solve(vs, 0.0, LpExponent(2)), std::invalid_argument);
}

TEST(DeriveK, FloorAndMargin) {
  const LpExponent p(2.0);
  // At or below the threshold there is no margin.
  EXPECT_EQ(derive_k(10'000, threshold_radius(10'000, p), p), kMinCellsPerSide);
  EXPECT_EQ(derive_k_for_multiplier(0.7, p, 2.0), kMinCellsPerSide);
  // Multiplier 2 gives eps = 3 alpha / 4, met by the smallest k.
  EXPECT_EQ(derive_k_for_multiplier(2.0, p, 2.0), kMinCellsPerSide);
  // A thin margin needs finer cells.
  EXPECT_GT(derive_k_for_multiplier(1.05, p, 2.0), kMinCellsPerSide);
  EXPECT_NEAR(radius_to_square_ratio(0.25), 2.0, 1e-15);
  EXPECT_NEAR(radius_to_square_ratio(0.21), 0.21 * 9, 1e-15);
}

}  // namespace
}  // namespace rggham
