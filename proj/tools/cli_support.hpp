#pragma once

// Argument parsing and run metadata shared by the cvwerner subcommands.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cvwerner/certificate_io.hpp"
#include "cvwerner/linalg.hpp"

namespace cvwerner::cli {

enum class Format { Text, Csv, Json };

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  // Equally spaced, both ends included; a single step yields {start}.
  std::vector<double> values() const;
  std::string to_string() const;
};

// "start:stop:steps"; throws ParamOutOfRange.
Grid parse_grid(const std::string& text);
// "lo:hi"; throws ParamOutOfRange.
std::pair<double, double> parse_bracket(const std::string& text);
Format parse_format(const std::string& text);

// Numerical slack plus the pass thresholds of the scan commands.
struct RunTolerances {
  Tolerances numeric;
  double ppt = 1e-7;        // |analytic - bisected| PPT threshold
  double converge = 1e-9;   // |numeric - closed form| trace norm
  double reconstruct = 1e-10;
};

// Applies "name=value" with name one of hermitian, clamp, trace, ppt,
// converge, reconstruct. Throws ParamOutOfRange.
void apply_tolerance(RunTolerances& tol, const std::string& assignment);
Metadata tolerance_metadata(const RunTolerances& tol);

// Header entries common to every command: tool, library and Eigen versions, command name.
Metadata base_metadata(const std::string& command);

}  // namespace cvwerner::cli
