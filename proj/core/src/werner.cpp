#include "cvwerner/werner.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cvwerner/error.hpp"

namespace cvwerner {

namespace {

void require_lambda(double lambda, const char* name) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    fail(ErrorCode::ParamOutOfRange, std::string(name) + " must lie in [0,1), got " + std::to_string(lambda));
  }
}

void require_levels(int n, int min, const char* name) {
  if (n < min) {
    fail(ErrorCode::ParamOutOfRange,
         std::string(name) + " must be >= " + std::to_string(min) + ", got " + std::to_string(n));
  }
}

// lambda^k for k = 0 .. count-1, with 0^0 = 1.
std::vector<double> powers(double lambda, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  double v = 1.0;
  for (int k = 0; k < count; ++k) {
    out[k] = v;
    v *= lambda;
  }
  return out;
}

// factor * sum_{m,n<levels} lambda^{m+n} (|n,m><m,n| + |m,n><m,n|)
//   - diag_factor * sum_{n<levels} lambda^{2n} |n,n><n,n|
// on a dim x dim space.
TwoModeOperator symmetric_pt_family(double lambda, int levels, int dim, double factor, double diag_factor) {
  const auto pw = powers(lambda, 2 * levels);
  TwoModeBuilder builder(dim, dim);
  builder.reserve(static_cast<std::size_t>(3) * levels * levels);
  for (int m = 0; m < levels; ++m) {
    for (int n = 0; n < levels; ++n) {
      const double v = factor * pw[m + n];
      builder.add(n, m, m, n, v);
      builder.add(m, n, m, n, v);
    }
  }
  if (diag_factor != 0.0) {
    for (int n = 0; n < levels; ++n) builder.add(n, n, n, n, -diag_factor * pw[2 * n]);
  }
  return builder.build();
}

}  // namespace

void WernerParams::validate() const {
  require_lambda(lambda1, "lambda1");
  require_lambda(lambda2, "lambda2");
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorCode::ParamOutOfRange, "p must lie in [0,1], got " + std::to_string(p));
  }
  require_levels(n_trunc, 2, "n_trunc");
}

WernerParams BoundaryParams::werner(int n_trunc) const {
  return WernerParams{lambda, std::sqrt(lambda), q(), n_trunc};
}

double werner_normalization(const WernerParams& params) {
  params.validate();
  const int n = params.n_trunc;
  const double s = 1.0 - std::pow(params.lambda1, 2 * n);
  const double t = 1.0 - std::pow(params.lambda2, 2 * n);
  return 1.0 / (params.p * s + (1.0 - params.p) * t * t);
}

double boundary_normalization(double lambda, int n) {
  require_lambda(lambda, "lambda");
  require_levels(n, 1, "n");
  return (1.0 - lambda * lambda) * (1.0 - lambda) /
         (2.0 * (1.0 - std::pow(lambda, n)) * (1.0 - std::pow(lambda, n + 1)));
}

double infinite_boundary_normalization(double lambda) {
  require_lambda(lambda, "lambda");
  return (1.0 - lambda * lambda) * (1.0 - lambda) / 2.0;
}

double bar_normalization(double lambda) {
  require_lambda(lambda, "lambda");
  return (1.0 - lambda) * (1.0 - lambda);
}

double bar_normalization_truncated(double lambda, int n) {
  require_lambda(lambda, "lambda");
  require_levels(n, 1, "n");
  const double r = (1.0 - lambda) / (1.0 - std::pow(lambda, n));
  return r * r;
}

TwoModeOperator build_tmsv_truncated(double lambda1, int n) {
  require_lambda(lambda1, "lambda1");
  require_levels(n, 1, "n");
  const auto pw = powers(lambda1, 2 * n);
  const double c = 1.0 - lambda1 * lambda1;
  TwoModeBuilder builder(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) builder.add(m, m, k, k, c * pw[m + k]);
  }
  return builder.build();
}

SingleModeOperator build_thermal_truncated(double lambda2, int n) {
  require_lambda(lambda2, "lambda2");
  require_levels(n, 1, "n");
  const auto pw = powers(lambda2 * lambda2, n);
  SingleModeOperator out(n);
  for (int m = 0; m < n; ++m) out(m, m) = (1.0 - lambda2 * lambda2) * pw[m];
  return out;
}

TwoModeOperator build_thermal_product_truncated(double lambda2, int n) {
  require_lambda(lambda2, "lambda2");
  require_levels(n, 1, "n");
  const auto pw = powers(lambda2 * lambda2, 2 * n);
  const double c = (1.0 - lambda2 * lambda2) * (1.0 - lambda2 * lambda2);
  TwoModeBuilder builder(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) builder.add(m, k, m, k, c * pw[m + k]);
  }
  return builder.build();
}

TwoModeOperator build_werner_truncated(const WernerParams& params) {
  params.validate();
  const double norm = werner_normalization(params);
  const int n = params.n_trunc;
  return (norm * params.p) * build_tmsv_truncated(params.lambda1, n) +
         (norm * (1.0 - params.p)) * build_thermal_product_truncated(params.lambda2, n);
}

double ppt_threshold(double lambda1, double lambda2, int n) {
  require_lambda(lambda1, "lambda1");
  require_lambda(lambda2, "lambda2");
  require_levels(n, 2, "n");
  if (lambda1 == 0.0) return 1.0;
  if (lambda2 == 0.0) return 0.0;
  const double l2sq = lambda2 * lambda2;
  const int exponent = lambda1 > l2sq ? 2 * n - 3 : 1;
  const double coef = (1.0 - lambda1 * lambda1) / ((1.0 - l2sq) * (1.0 - l2sq));
  const double value = 1.0 / (1.0 + coef * std::pow(lambda1 / l2sq, exponent));
  if (std::isnan(value)) {
    fail(ErrorCode::DegenerateRatio, "PPT threshold undefined for lambda1=" + std::to_string(lambda1) +
                                         ", lambda2=" + std::to_string(lambda2));
  }
  return value;
}

TwoModeOperator build_boundary_pt(double lambda, int n) {
  require_lambda(lambda, "lambda");
  require_levels(n, 2, "n");
  return symmetric_pt_family(lambda, n, n, boundary_normalization(lambda, n), 0.0);
}

TwoModeOperator build_rho_q_pt_cutoff(double lambda, int cutoff) {
  require_lambda(lambda, "lambda");
  require_levels(cutoff, 2, "cutoff");
  return symmetric_pt_family(lambda, cutoff, cutoff, infinite_boundary_normalization(lambda), 0.0);
}

TwoModeOperator build_rho_bar_q_pt_cutoff(double lambda, int cutoff) {
  require_lambda(lambda, "lambda");
  require_levels(cutoff, 2, "cutoff");
  const double j = bar_normalization(lambda);
  return symmetric_pt_family(lambda, cutoff, cutoff, j, j);
}

TwoModeOperator build_rho_bar_q_n_pt(double lambda, int n, int cutoff) {
  require_lambda(lambda, "lambda");
  require_levels(n, 2, "n");
  if (cutoff < n) {
    fail(ErrorCode::CutoffTooSmall, "cutoff " + std::to_string(cutoff) + " below n " + std::to_string(n));
  }
  const double jn = bar_normalization_truncated(lambda, n);
  return symmetric_pt_family(lambda, n, cutoff, jn, jn);
}

}  // namespace cvwerner
