// experiments.hpp - Monte-Carlo trials, radius sweeps and runtime scaling.
//
// Seeds are replayable: trial t of a sweep (t counted across (n, multiplier,
// trial) in lexicographic order) uses seed base_seed + t.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "rggham/failure.hpp"
#include "rggham/lp_geometry.hpp"

namespace rggham {

enum class TrialOutcome {
  CycleVerified,
  ConstructionFailed,
  VerifierRejected,  // a returned cycle failed verification; always a bug
};

struct TrialResult {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double r = 0.0;
  int k = 0;
  TrialOutcome outcome = TrialOutcome::ConstructionFailed;
  std::optional<FailureReason> reason;
  bool connected = false;
  double wall_ms = 0.0;  // construction + verification, sampling excluded

  bool success() const noexcept { return outcome == TrialOutcome::CycleVerified; }
};

/// sample -> construct -> verify, plus a connectivity check outside the timed
/// region. k <= 0 derives k from the instance.
TrialResult run_trial(std::size_t n, const LpExponent& p, double r, std::uint64_t seed, int k = 0);

struct SweepConfig {
  std::vector<std::size_t> n_values;
  LpExponent p{2.0};
  std::vector<double> multipliers;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  std::size_t workers = 1;

  void validate() const;
};

struct SweepCell {
  std::size_t n = 0;
  double multiplier = 0.0;
  double r = 0.0;
  int k = 0;
  std::size_t trials = 0;
  std::size_t cycle_verified = 0;
  std::size_t connected = 0;
  std::size_t verifier_rejected = 0;
  std::array<std::size_t, kFailureReasonCount> failures_by_reason{};
  double median_ms = 0.0;
  double p90_ms = 0.0;

  double success_fraction() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(cycle_verified) / static_cast<double>(trials);
  }
};

struct SweepReport {
  LpExponent p{2.0};
  std::vector<SweepCell> cells;        // (n, multiplier) in config order
  std::vector<TrialResult> trials;     // in trial-index order
};

/// Runs every (n, multiplier, trial) combination on cfg.workers threads; the
/// report does not depend on the worker count apart from timing fields.
SweepReport sweep(const SweepConfig& cfg);

/// "n,p,multiplier,r,trials,cycle_verified,connected,failures_by_reason,median_ms,p90_ms"
void write_sweep_csv(std::ostream& out, const SweepReport& report);
nlohmann::json sweep_to_json(const SweepReport& report);

struct ScalingRow {
  std::size_t n = 0;
  double median_ms = 0.0;
  std::size_t successes = 0;
  std::size_t trials = 0;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  std::vector<double> ratios;  // median(n_{i+1}) / median(n_i)
};

/// Median construction time per n. Trial j of the whole table (n-major) uses
/// seed + j. workers > 1 runs trials concurrently, which makes the timings
/// compete for memory bandwidth; keep 1 for scaling measurements. Throws
/// std::invalid_argument unless n_values is strictly ascending with each >= 1000.
ScalingTable scaling_bench(const std::vector<std::size_t>& n_values, const LpExponent& p, double multiplier,
                           std::size_t trials, std::uint64_t seed, std::size_t workers = 1);

nlohmann::json scaling_to_json(const ScalingTable& table);

/// k used for every n at this multiplier: choose_k at the smallest r / y among
/// the instances.
int shared_k(const std::vector<std::size_t>& n_values, const LpExponent& p, double multiplier);

/// Linear-interpolated quantile of unsorted samples, q in [0, 1]; 0 when empty.
double quantile(std::vector<double> samples, double q);

}  // namespace rggham
