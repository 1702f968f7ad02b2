// io.hpp - points / cycle text formats and JSON views of reports.
//
// Points file: header "x,y", then one "x,y" line per vertex in vertex order,
// 17 significant digits. Cycle file: one vertex index per line in cycle order.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rggham/failure.hpp"
#include "rggham/hamiltonian.hpp"
#include "rggham/rgg_instance.hpp"
#include "rggham/tessellation.hpp"

namespace rggham {

/// Malformed input file; carries the 1-based line number when known.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : std::runtime_error(what + (line ? " (line " + std::to_string(line) + ")" : "")), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

void write_points_csv(std::ostream& out, const VertexSet& vs);
/// Throws FormatError on a missing header, a malformed line, or a coordinate
/// outside [0, 1].
VertexSet read_points_csv(std::istream& in);

void write_cycle(std::ostream& out, const HamCycle& cycle);
/// Throws FormatError unless every non-blank line is a non-negative integer.
std::vector<VertexId> read_cycle(std::istream& in);

nlohmann::json to_json(const ConstructionFailure& failure);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const DiagnosticsReport& report);

}  // namespace rggham
