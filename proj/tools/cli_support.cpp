#include "cli_support.hpp"

#include <Eigen/Core>
#include <charconv>
#include <string_view>

#include "cvwerner/error.hpp"
#include "cvwerner/version.hpp"

namespace cvwerner::cli {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  for (;;) {
    const auto pos = text.find(sep, begin);
    out.push_back(text.substr(begin, pos - begin));
    if (pos == std::string_view::npos) return out;
    begin = pos + 1;
  }
}

double to_double(std::string_view text, const std::string& what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorCode::ParamOutOfRange, "cannot parse " + what + " '" + std::string(text) + "'");
  }
  return v;
}

int to_int(std::string_view text, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorCode::ParamOutOfRange, "cannot parse " + what + " '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::vector<double> Grid::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out.push_back(start);
    return out;
  }
  for (int i = 0; i < steps; ++i) {
    out.push_back(i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1));
  }
  return out;
}

std::string Grid::to_string() const {
  return format_double(start) + ":" + format_double(stop) + ":" + std::to_string(steps);
}

Grid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) fail(ErrorCode::ParamOutOfRange, "grid must be start:stop:steps, got '" + text + "'");
  Grid g{to_double(parts[0], "grid start"), to_double(parts[1], "grid stop"), to_int(parts[2], "grid steps")};
  if (g.steps < 1) fail(ErrorCode::ParamOutOfRange, "grid steps must be >= 1");
  if (g.steps > 1 && !(g.start < g.stop)) fail(ErrorCode::ParamOutOfRange, "grid needs start < stop");
  return g;
}

std::pair<double, double> parse_bracket(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) fail(ErrorCode::ParamOutOfRange, "bracket must be lo:hi, got '" + text + "'");
  const double lo = to_double(parts[0], "bracket lo"), hi = to_double(parts[1], "bracket hi");
  if (!(lo < hi)) fail(ErrorCode::ParamOutOfRange, "bracket needs lo < hi");
  return {lo, hi};
}

Format parse_format(const std::string& text) {
  if (text == "text") return Format::Text;
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  fail(ErrorCode::ParamOutOfRange, "format must be text, csv or json, got '" + text + "'");
}

void apply_tolerance(RunTolerances& tol, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) fail(ErrorCode::ParamOutOfRange, "--tol expects NAME=VALUE, got '" + assignment + "'");
  const std::string name = assignment.substr(0, eq);
  const double value = to_double(std::string_view(assignment).substr(eq + 1), "tolerance " + name);
  if (!(value >= 0.0)) fail(ErrorCode::ParamOutOfRange, "tolerance " + name + " must be >= 0");
  if (name == "hermitian") tol.numeric.hermitian = value;
  else if (name == "clamp") tol.numeric.clamp = value;
  else if (name == "trace") tol.numeric.trace = value;
  else if (name == "ppt") tol.ppt = value;
  else if (name == "converge") tol.converge = value;
  else if (name == "reconstruct") tol.reconstruct = value;
  else fail(ErrorCode::ParamOutOfRange, "unknown tolerance '" + name + "'");
}

Metadata tolerance_metadata(const RunTolerances& tol) {
  return {{"tol.hermitian", format_double(tol.numeric.hermitian)},
          {"tol.clamp", format_double(tol.numeric.clamp)},
          {"tol.trace", format_double(tol.numeric.trace)},
          {"tol.ppt", format_double(tol.ppt)},
          {"tol.converge", format_double(tol.converge)},
          {"tol.reconstruct", format_double(tol.reconstruct)}};
}

Metadata base_metadata(const std::string& command) {
  return {{"tool", "cvwerner"},
          {"version", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"command", command}};
}

}  // namespace cvwerner::cli
