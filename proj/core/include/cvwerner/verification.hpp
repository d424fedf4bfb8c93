#pragma once

// Self-check suite: decomposition identities, PPT thresholds, convergence
// law, POVM completeness and discord cross-checks, each reported with its
// measured residual.

#include <string>
#include <vector>

#include "cvwerner/certificate_io.hpp"
#include "cvwerner/linalg.hpp"

namespace cvwerner {

// Deliberate errors for exercising the failure path.
enum class Fault {
  None,
  WrongKn,          // K_N scaled by 1 + 1e-6 in the decomposition identity
  DropTerm,         // one product term removed from each general-p certificate
  ShiftThreshold,   // analytic PPT threshold shifted by 1e-4
  WrongEntropy,     // closed-form global entropy off by 1e-6
};

Fault parse_fault(const std::string& name);  // throws ParamOutOfRange
std::string to_string(Fault fault);
std::vector<std::string> fault_names();

struct VerifyOptions {
  Tolerances tol;
  Fault fault = Fault::None;
  int entropy_cutoff = 300;
  int photon_cutoff = 300;
  int discord_cutoff = 500;
  int discord_levels = 30;
  int series_terms = 500;
  bool include_threshold = true;  // discord crossover bisection, the slowest check
};

std::vector<CheckResult> run_verification(const VerifyOptions& options = {});

}  // namespace cvwerner
