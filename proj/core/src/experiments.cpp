#include "rggham/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rggham/hamiltonian.hpp"
#include "rggham/pipeline.hpp"
#include "rggham/rgg_instance.hpp"

namespace rggham {

namespace {

std::string reasons_field(const SweepCell& cell) {
  std::string out;
  const auto add = [&](std::string_view name, std::size_t count) {
    if (count == 0) return;
    if (!out.empty()) out += ';';
    out += name;
    out += '=';
    out += std::to_string(count);
  };
  for (int i = 0; i < kFailureReasonCount; ++i) {
    add(to_string(static_cast<FailureReason>(i)), cell.failures_by_reason[static_cast<std::size_t>(i)]);
  }
  add("VerifierRejected", cell.verifier_rejected);
  return out;
}

// Calls fn(i) for i in [0, count) on up to `workers` threads.
template <class F>
void run_jobs(std::size_t count, std::size_t workers, F&& fn) {
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
}

}  // namespace

int shared_k(const std::vector<std::size_t>& n_values, const LpExponent& p, double multiplier) {
  double min_ratio = 2.0;
  for (std::size_t n : n_values) {
    const double r = multiplier * threshold_radius(n, p);
    if (r <= 1.0) min_ratio = std::min(min_ratio, radius_to_square_ratio(r));
  }
  return derive_k_for_multiplier(multiplier, p, min_ratio);
}

double quantile(std::vector<double> samples, double q) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return samples[lo] + frac * (samples[hi] - samples[lo]);
}

TrialResult run_trial(std::size_t n, const LpExponent& p, double r, std::uint64_t seed, int k) {
  InstanceConfig cfg{n, p, radius::Explicit{r}, seed};
  const VertexSet vs = sample_points(cfg);

  TrialResult res;
  res.seed = seed;
  res.n = n;
  res.r = r;

  const auto start = std::chrono::steady_clock::now();
  SolveOptions opts;
  opts.k = k;
  const SolveResult solved = solve(vs, r, p, opts);
  if (solved.cycle) {
    const auto report = verify_cycle(vs, r, p, solved.cycle->order);
    res.outcome = report.valid ? TrialOutcome::CycleVerified : TrialOutcome::VerifierRejected;
  } else {
    res.outcome = TrialOutcome::ConstructionFailed;
    res.reason = solved.failure->reason;
  }
  const auto stop = std::chrono::steady_clock::now();
  res.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  res.k = solved.k;
  res.connected = is_connected(vs, r, p);
  return res;
}

void SweepConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("sweep needs at least one trial per point");
  for (double c : multipliers) {
    if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("multipliers must be positive");
  }
  for (std::size_t n : n_values) {
    if (n < 3) throw std::invalid_argument("sweep needs n >= 3");
  }
}

SweepReport sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepReport report;
  report.p = cfg.p;

  // One k per multiplier, shared across n.
  std::map<double, int> k_cache;
  for (double c : cfg.multipliers) {
    if (!k_cache.count(c)) k_cache[c] = shared_k(cfg.n_values, cfg.p, c);
  }

  struct Job {
    std::size_t cell;
    std::size_t n;
    double r;
    int k;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t n : cfg.n_values) {
    for (double c : cfg.multipliers) {
      SweepCell cell;
      cell.n = n;
      cell.multiplier = c;
      cell.r = c * threshold_radius(n, cfg.p);
      cell.k = k_cache[c];
      report.cells.push_back(cell);
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        jobs.push_back({report.cells.size() - 1, n, cell.r, cell.k, cfg.base_seed + jobs.size()});
      }
    }
  }

  report.trials.resize(jobs.size());
  run_jobs(jobs.size(), cfg.workers, [&](std::size_t i) {
    const Job& job = jobs[i];
    report.trials[i] = run_trial(job.n, cfg.p, job.r, job.seed, job.k);
  });

  std::vector<std::vector<double>> times(report.cells.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const TrialResult& tr = report.trials[i];
    SweepCell& cell = report.cells[jobs[i].cell];
    ++cell.trials;
    if (tr.connected) ++cell.connected;
    switch (tr.outcome) {
      case TrialOutcome::CycleVerified: ++cell.cycle_verified; break;
      case TrialOutcome::VerifierRejected: ++cell.verifier_rejected; break;
      case TrialOutcome::ConstructionFailed:
        ++cell.failures_by_reason[static_cast<std::size_t>(*tr.reason)];
        break;
    }
    times[jobs[i].cell].push_back(tr.wall_ms);
  }
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    report.cells[c].median_ms = quantile(times[c], 0.5);
    report.cells[c].p90_ms = quantile(times[c], 0.9);
  }
  return report;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "n,p,multiplier,r,trials,cycle_verified,connected,failures_by_reason,median_ms,p90_ms\n";
  const auto old_precision = out.precision(10);
  for (const auto& c : report.cells) {
    out << c.n << ',' << report.p.to_string() << ',' << c.multiplier << ',' << c.r << ',' << c.trials << ','
        << c.cycle_verified << ',' << c.connected << ',' << reasons_field(c) << ',' << c.median_ms << ','
        << c.p90_ms << '\n';
  }
  out.precision(old_precision);
}

nlohmann::json sweep_to_json(const SweepReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json reasons = nlohmann::json::object();
    for (int i = 0; i < kFailureReasonCount; ++i) {
      reasons[std::string(to_string(static_cast<FailureReason>(i)))] =
          c.failures_by_reason[static_cast<std::size_t>(i)];
    }
    reasons["VerifierRejected"] = c.verifier_rejected;
    rows.push_back({{"n", c.n},
                    {"p", report.p.to_string()},
                    {"multiplier", c.multiplier},
                    {"r", c.r},
                    {"k", c.k},
                    {"trials", c.trials},
                    {"cycle_verified", c.cycle_verified},
                    {"connected", c.connected},
                    {"failures_by_reason", reasons},
                    {"median_ms", c.median_ms},
                    {"p90_ms", c.p90_ms}});
  }
  return rows;
}

ScalingTable scaling_bench(const std::vector<std::size_t>& n_values, const LpExponent& p, double multiplier,
                           std::size_t trials, std::uint64_t seed, std::size_t workers) {
  if (n_values.empty()) throw std::invalid_argument("scaling bench needs at least one n");
  if (trials < 1) throw std::invalid_argument("scaling bench needs at least one trial");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1000) throw std::invalid_argument("scaling bench needs n >= 1000");
    if (i > 0 && n_values[i] <= n_values[i - 1]) throw std::invalid_argument("n values must be ascending");
  }
  const int k = shared_k(n_values, p, multiplier);
  std::vector<TrialResult> results(n_values.size() * trials);
  // Execution interleaves the n values so drift in machine speed spreads
  // evenly over them; result slot and seed stay n-major.
  run_jobs(results.size(), workers, [&](std::size_t job) {
    const std::size_t i = (job % n_values.size()) * trials + job / n_values.size();
    const std::size_t n = n_values[i / trials];
    results[i] = run_trial(n, p, multiplier * threshold_radius(n, p), seed + i, k);
  });

  ScalingTable table;
  for (std::size_t j = 0; j < n_values.size(); ++j) {
    ScalingRow row;
    row.n = n_values[j];
    row.trials = trials;
    std::vector<double> times;
    for (std::size_t t = 0; t < trials; ++t) {
      const TrialResult& tr = results[j * trials + t];
      times.push_back(tr.wall_ms);
      if (tr.success()) ++row.successes;
    }
    row.median_ms = quantile(times, 0.5);
    table.rows.push_back(row);
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    table.ratios.push_back(table.rows[i].median_ms / table.rows[i - 1].median_ms);
  }
  return table;
}

nlohmann::json scaling_to_json(const ScalingTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"n", r.n}, {"median_ms", r.median_ms}, {"successes", r.successes}, {"trials", r.trials}});
  }
  return {{"rows", rows}, {"ratios", table.ratios}};
}

}  // namespace rggham
