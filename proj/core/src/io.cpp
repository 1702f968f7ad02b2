#include "rggham/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

namespace rggham {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_coordinate(std::string_view s, std::size_t line) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("malformed coordinate '" + std::string(s) + "'", line);
  }
  if (!(v >= 0.0 && v <= 1.0)) throw FormatError("coordinate outside [0, 1]", line);
  return v;
}

constexpr std::array<std::string_view, kFailureReasonCount> kReasonNames{
    "Disconnected", "HookMissing", "LedgerExhausted", "EdgeTooLong", "RadiusDegenerate"};

}  // namespace

std::string_view to_string(FailureReason reason) noexcept {
  return kReasonNames[static_cast<std::size_t>(reason)];
}

std::optional<FailureReason> parse_failure_reason(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kReasonNames.size(); ++i) {
    if (kReasonNames[i] == name) return static_cast<FailureReason>(i);
  }
  return std::nullopt;
}

void write_points_csv(std::ostream& out, const VertexSet& vs) {
  out << "x,y\n";
  char buf[64];
  for (const auto& pt : vs.points) {
    const int len = std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", pt.x, pt.y);
    out.write(buf, len);
  }
}

VertexSet read_points_csv(std::istream& in) {
  VertexSet vs;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (!header) {
      if (view != "x,y") throw FormatError("expected header 'x,y'", lineno);
      header = true;
      continue;
    }
    const auto comma = view.find(',');
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
      throw FormatError("expected exactly two fields", lineno);
    }
    vs.points.push_back({parse_coordinate(view.substr(0, comma), lineno),
                         parse_coordinate(view.substr(comma + 1), lineno)});
  }
  if (!header) throw FormatError("empty points file", 0);
  return vs;
}

void write_cycle(std::ostream& out, const HamCycle& cycle) {
  for (VertexId v : cycle.order) out << v << '\n';
}

std::vector<VertexId> read_cycle(std::istream& in) {
  std::vector<VertexId> order;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    VertexId v = 0;
    auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), v);
    if (ec != std::errc() || ptr != view.data() + view.size()) {
      throw FormatError("malformed vertex index '" + std::string(view) + "'", lineno);
    }
    order.push_back(v);
  }
  return order;
}

nlohmann::json to_json(const ConstructionFailure& failure) {
  return {{"reason", std::string(to_string(failure.reason))}, {"context", failure.context}};
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j{{"valid", report.valid}};
  if (report.first_violation) {
    const Violation& v = *report.first_violation;
    nlohmann::json jv{{"position", v.position}, {"kind", std::string(to_string(v.kind))}};
    if (v.distance) jv["distance"] = *v.distance;
    j["violation"] = jv;
  }
  return j;
}

nlohmann::json to_json(const DiagnosticsReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"kind", std::string(to_string(v.kind))}, {"cell", {v.cell.col, v.cell.row}}});
  }
  return {{"m", report.m},
          {"k", report.k},
          {"y", report.y},
          {"r", report.r},
          {"dense_threshold", kDenseThreshold},
          {"cells", {{"dense", report.dense_cells}, {"sparse", report.sparse_cells}, {"empty", report.empty_cells}}},
          {"squares",
           {{"dense", report.dense_squares}, {"sparse", report.sparse_squares}, {"empty", report.empty_squares}}},
          {"K", report.K ? nlohmann::json(*report.K) : nlohmann::json(nullptr)},
          {"corner_violations", report.corner_violations},
          {"hook_violations", report.hook_violations},
          {"violations", violations}};
}

}  // namespace rggham
