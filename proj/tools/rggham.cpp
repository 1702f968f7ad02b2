// rggham - command-line front end.
//
// Exit codes:
//   0   success (verify: cycle valid)
//   1   verify: cycle invalid
//   2   invalid flags or malformed input
//   3   I/O failure
//   10+ ham: construction failure, 10 + FailureReason value
//       (10 Disconnected, 11 HookMissing, 12 LedgerExhausted, 13 EdgeTooLong,
//        14 RadiusDegenerate)
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rggham/aux_graphs.hpp"
#include "rggham/experiments.hpp"
#include "rggham/hamiltonian.hpp"
#include "rggham/io.hpp"
#include "rggham/lp_geometry.hpp"
#include "rggham/pipeline.hpp"
#include "rggham/rgg_instance.hpp"

namespace {

using namespace rggham;

constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitFailureBase = 10;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

LpExponent parse_p(const std::string& text) {
  try {
    return LpExponent::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) throw IoError("write to '" + path + "' failed");
}

VertexSet load_points(const std::string& path) {
  auto in = open_in(path);
  try {
    return read_points_csv(in);
  } catch (const FormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string fmt(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::size_t n = 0;
  std::string p = "2";
  std::optional<double> r, eps_above, eps_below, mult;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a, bool json) {
  InstanceConfig cfg;
  cfg.n = a.n;
  cfg.p = parse_p(a.p);
  cfg.seed = a.seed;
  const int given = a.r.has_value() + a.eps_above.has_value() + a.eps_below.has_value() + a.mult.has_value();
  if (given != 1) throw UsageError("give exactly one of --r, --eps-above, --eps-below, --mult");
  if (a.r) cfg.radius = radius::Explicit{*a.r};
  if (a.eps_above) cfg.radius = radius::EpsilonAbove{*a.eps_above};
  if (a.eps_below) cfg.radius = radius::EpsilonBelow{*a.eps_below};
  if (a.mult) cfg.radius = radius::MultipleOfThreshold{*a.mult};

  double r = 0.0;
  try {
    cfg.validate();
    r = resolve_radius(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const VertexSet vs = sample_points(cfg);
  if (a.out.empty()) {
    write_points_csv(std::cout, vs);
  } else {
    auto out = open_out(a.out);
    write_points_csv(out, vs);
    finish(out, a.out);
  }

  const double thr = threshold_radius(cfg.n, cfg.p);
  if (json) {
    std::cerr << nlohmann::json{{"n", cfg.n}, {"p", cfg.p.to_string()}, {"seed", cfg.seed},
                                {"r", r}, {"threshold_radius", thr}}.dump()
              << '\n';
  } else {
    std::cerr << "r = " << fmt(r) << "\nthreshold_radius = " << fmt(thr) << '\n';
  }
  return 0;
}

// --- ham -------------------------------------------------------------------

struct HamArgs {
  std::string points;
  std::string p = "2";
  double r = 0.0;
  int k = 0;
  std::string out;
  std::string dump_graph;
};

int report_failure(const ConstructionFailure& f) {
  std::cout << to_json(f).dump() << '\n';
  return kExitFailureBase + static_cast<int>(f.reason);
}

int cmd_ham(const HamArgs& a, bool json) {
  const LpExponent p = parse_p(a.p);
  if (!(a.r > 0.0)) throw UsageError("-r must be positive");
  if (a.k < 0) throw UsageError("-k must be non-negative");
  const VertexSet vs = load_points(a.points);
  if (vs.size() < 3) throw UsageError("a Hamiltonian cycle needs at least 3 points");
  std::ofstream cycle_out;
  std::ofstream graph_out;
  if (!a.out.empty()) cycle_out = open_out(a.out);
  if (!a.dump_graph.empty()) graph_out = open_out(a.dump_graph);

  // A disconnected graph has no Hamiltonian cycle; name that directly rather
  // than through whichever structural step happens to trip first.
  if (!is_connected(vs, a.r, p)) {
    return report_failure({FailureReason::Disconnected, "G(n, r) is not connected"});
  }

  SolveOptions opts;
  opts.k = a.k;
  const SolveResult res = solve(vs, a.r, p, opts);

  if (!a.dump_graph.empty()) {
    if (res.artifacts.g_double_prime) {
      write_edge_list(graph_out, *res.artifacts.g_prime, *res.artifacts.g_double_prime);
    } else if (res.artifacts.g_prime) {
      write_edge_list(graph_out, *res.artifacts.g_prime);
    }
    finish(graph_out, a.dump_graph);
  }

  if (!res.cycle) return report_failure(*res.failure);

  if (a.out.empty()) {
    write_cycle(std::cout, *res.cycle);
  } else {
    write_cycle(cycle_out, *res.cycle);
    finish(cycle_out, a.out);
  }
  if (json) {
    std::cerr << nlohmann::json{{"n", vs.size()}, {"k", res.k}, {"degenerate", res.degenerate},
                                {"bridged", res.artifacts.ledger.bridged},
                                {"max_dense_withdrawals", res.artifacts.ledger.max_dense_withdrawals}}
                     .dump()
              << '\n';
  } else {
    std::cerr << "cycle through " << vs.size() << " vertices, k = " << res.k << '\n';
  }
  return 0;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string points;
  std::string cycle;
  std::string p = "2";
  double r = 0.0;
  double tol = 0.0;
};

int cmd_verify(const VerifyArgs& a) {
  const LpExponent p = parse_p(a.p);
  if (!(a.r > 0.0)) throw UsageError("-r must be positive");
  if (!(a.tol >= 0.0)) throw UsageError("--tol must be non-negative");
  const VertexSet vs = load_points(a.points);
  std::vector<VertexId> order;
  {
    auto in = open_in(a.cycle);
    try {
      order = read_cycle(in);
    } catch (const FormatError& e) {
      throw UsageError(a.cycle + ": " + e.what());
    }
  }
  // A file of the wrong length is a truncated or mismatched input, not a cycle
  // that visits some vertex twice.
  if (order.size() != vs.size()) {
    throw UsageError("cycle file has " + std::to_string(order.size()) + " entries for " +
                     std::to_string(vs.size()) + " points");
  }
  const VerificationReport rep = verify_cycle(vs, a.r, p, order, a.tol);
  std::cout << to_json(rep).dump() << '\n';
  return rep.valid ? 0 : kExitInvalid;
}

// --- sweep / bench ---------------------------------------------------------

struct SweepArgs {
  std::vector<std::size_t> n;
  std::string p = "2";
  std::vector<double> mult;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out;
};

int cmd_sweep(const SweepArgs& a, bool json) {
  SweepConfig cfg;
  cfg.n_values = a.n;
  cfg.p = parse_p(a.p);
  cfg.multipliers = a.mult;
  cfg.trials = a.trials;
  cfg.base_seed = a.seed;
  cfg.workers = a.workers;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const SweepReport rep = sweep(cfg);
  std::ostringstream text;
  if (json) {
    text << sweep_to_json(rep).dump(2) << '\n';
  } else {
    write_sweep_csv(text, rep);
  }
  if (a.out.empty()) {
    std::cout << text.str();
  } else {
    auto out = open_out(a.out);
    out << text.str();
    finish(out, a.out);
  }
  return 0;
}

struct BenchArgs {
  std::vector<std::size_t> n;
  std::string p = "2";
  double mult = 2.0;
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

int cmd_bench(const BenchArgs& a, bool json) {
  const LpExponent p = parse_p(a.p);
  if (!(a.mult > 0.0)) throw UsageError("--mult must be positive");
  ScalingTable table;
  try {
    table = scaling_bench(a.n, p, a.mult, a.trials, a.seed, a.workers);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (json) {
    std::cout << scaling_to_json(table).dump(2) << '\n';
    return 0;
  }
  std::cout << "n,median_ms,successes,trials\n";
  for (const auto& row : table.rows) {
    std::cout << row.n << ',' << fmt(row.median_ms, 6) << ',' << row.successes << ',' << row.trials << '\n';
  }
  for (std::size_t i = 0; i < table.ratios.size(); ++i) {
    std::cout << "# T(" << table.rows[i + 1].n << ")/T(" << table.rows[i].n << ") = " << fmt(table.ratios[i], 4)
              << '\n';
  }
  return 0;
}

// --- alpha -----------------------------------------------------------------

int cmd_alpha(const std::string& text, bool json) {
  const LpExponent p = parse_p(text);
  const double a = alpha_p(p);
  if (json) {
    std::cout << nlohmann::json{{"p", p.to_string()}, {"alpha", a}}.dump() << '\n';
  } else {
    std::cout << fmt(a, 15) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian cycles in random geometric graphs under l_p norms"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "JSON output");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "sample a uniform point set");
  g->add_option("-n", gen.n, "number of points")->required();
  g->add_option("-p", gen.p, "l_p exponent, >= 1 or inf");
  g->add_option("--r", gen.r, "explicit radius");
  g->add_option("--eps-above", gen.eps_above, "radius with margin eps above the threshold");
  g->add_option("--eps-below", gen.eps_below, "radius with margin eps below the threshold");
  g->add_option("--mult", gen.mult, "radius as a multiple of the threshold");
  g->add_option("--seed", gen.seed, "PRNG seed");
  g->add_option("-o,--out", gen.out, "output CSV (default stdout)");

  HamArgs ham;
  auto* h = app.add_subcommand("ham", "build a Hamiltonian cycle on a point set");
  h->add_option("points", ham.points, "points CSV")->required();
  h->add_option("-p", ham.p, "l_p exponent, >= 1 or inf");
  h->add_option("-r", ham.r, "connection radius")->required();
  h->add_option("-k", ham.k, "cells per square side (default: derived)");
  h->add_option("-o,--out", ham.out, "cycle file (default stdout)");
  h->add_option("--dump-graph", ham.dump_graph, "write the square graph edge list here");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "check a cycle against a point set");
  v->add_option("points", ver.points, "points CSV")->required();
  v->add_option("cycle", ver.cycle, "cycle file")->required();
  v->add_option("-p", ver.p, "l_p exponent, >= 1 or inf");
  v->add_option("-r", ver.r, "connection radius")->required();
  v->add_option("--tol", ver.tol, "relative tolerance on edge lengths");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Monte-Carlo success rates over n and radius multipliers");
  s->add_option("--n", sw.n, "vertex counts")->required()->delimiter(',');
  s->add_option("-p", sw.p, "l_p exponent, >= 1 or inf");
  s->add_option("--mult", sw.mult, "threshold multipliers")->delimiter(',');
  s->add_option("--trials", sw.trials, "trials per (n, multiplier)");
  s->add_option("--seed", sw.seed, "base seed; trial t uses seed + t");
  s->add_option("--workers", sw.workers, "worker threads");
  s->add_option("-o,--out", sw.out, "output file (default stdout)");

  BenchArgs be;
  auto* b = app.add_subcommand("bench", "median construction time against n");
  b->add_option("--n", be.n, "ascending vertex counts, each >= 1000")->required()->delimiter(',');
  b->add_option("-p", be.p, "l_p exponent, >= 1 or inf");
  b->add_option("--mult", be.mult, "threshold multiplier");
  b->add_option("--trials", be.trials, "trials per n");
  b->add_option("--seed", be.seed, "base seed");
  b->add_option("--workers", be.workers, "worker threads (timings contend above 1)");

  std::string alpha_p_text;
  auto* al = app.add_subcommand("alpha", "area of the l_p unit ball");
  al->add_option("p", alpha_p_text, "l_p exponent, >= 1 or inf")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*g) return cmd_gen(gen, json);
    if (*h) return cmd_ham(ham, json);
    if (*v) return cmd_verify(ver);
    if (*s) return cmd_sweep(sw, json);
    if (*b) return cmd_bench(be, json);
    if (*al) return cmd_alpha(alpha_p_text, json);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
