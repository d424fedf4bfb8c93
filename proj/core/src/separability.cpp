#include "cvwerner/separability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "cvwerner/error.hpp"

namespace cvwerner {

namespace {

// Columns accumulated before each rank-k update.
constexpr Eigen::Index kBatchColumns = 2048;

// Relative slack when comparing the two sides of the family (ii) condition;
// only rounding in the threshold formula itself is absorbed.
constexpr double kThresholdRelativeSlack = 1e-12;

void require_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    fail(ErrorCode::ParamOutOfRange, "lambda must lie in [0,1), got " + std::to_string(lambda));
  }
}

void require_levels(int n) {
  if (n < 2) fail(ErrorCode::ParamOutOfRange, "n must be >= 2, got " + std::to_string(n));
}

// Flat two-mode amplitudes of |a> (x) |b>.
void write_product(const SingleModeVector& a, const SingleModeVector& b, Eigen::Ref<DenseVector> out) {
  const int db = b.dim();
  for (int m = 0; m < a.dim(); ++m) {
    for (int mu = 0; mu < db; ++mu) out(m * db + mu) = a[m] * b[mu];
  }
}

// Accumulates sum_k w_k |v_k><v_k| in batches.
class RankUpdateAccumulator {
 public:
  explicit RankUpdateAccumulator(Eigen::Index dim)
      : acc_(DenseMatrix::Zero(dim, dim)), batch_(dim, kBatchColumns), weights_(kBatchColumns) {}

  Eigen::Ref<DenseVector> next_column(double weight) {
    if (used_ == kBatchColumns) flush();
    weights_(used_) = weight;
    return batch_.col(used_++);
  }

  DenseMatrix finish() {
    flush();
    return std::move(acc_);
  }

 private:
  void flush() {
    if (used_ == 0) return;
    const auto cols = batch_.leftCols(used_);
    acc_.noalias() += (cols * weights_.head(used_).asDiagonal()) * cols.adjoint();
    used_ = 0;
  }

  DenseMatrix acc_;
  DenseMatrix batch_;
  Eigen::VectorXd weights_;
  Eigen::Index used_ = 0;
};

DenseMatrix enumerated_d(double lambda, int n) {
  if (n > kMaxEnumerationLevels) {
    fail(ErrorCode::ResourceLimit, "explicit phase-vector enumeration refused for N = " + std::to_string(n) +
                                       " (limit " + std::to_string(kMaxEnumerationLevels) + ")");
  }
  // Unit weights, divided once at the end so that equal terms sum exactly.
  RankUpdateAccumulator acc(static_cast<Eigen::Index>(n) * n);
  for_each_phase_index(n, [&](const PhaseIndex& idx) {
    const auto q = q_vector(lambda, n, idx);
    write_product(q, q, acc.next_column(1.0));
  });
  DenseMatrix d = acc.finish() / static_cast<double>(phase_index_count(n));
  double diag = 1.0;
  for (int k = 0; k < n; ++k) {
    const int flat = k * n + k;
    d(flat, flat) += diag;
    diag *= lambda * lambda;
  }
  return d;
}

TwoModeOperator closed_form_d(double lambda, int n) {
  std::vector<double> pw(static_cast<std::size_t>(2 * n));
  pw[0] = 1.0;
  for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = pw[k - 1] * lambda;
  TwoModeBuilder builder(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      builder.add(j, k, j, k, pw[j + k]);
      builder.add(j, k, k, j, pw[j + k]);
    }
  }
  return builder.build();
}

}  // namespace

double SeparableDecomposition::total_trace() const {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.weight * t.ket_a.norm_squared() * t.ket_b.norm_squared();
  return sum;
}

double SeparableDecomposition::min_weight() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& t : terms) best = std::min(best, t.weight);
  return best;
}

TwoModeOperator SeparableDecomposition::reconstruct() const {
  RankUpdateAccumulator acc(static_cast<Eigen::Index>(dim_a) * dim_b);
  for (const auto& t : terms) {
    if (t.ket_a.dim() != dim_a || t.ket_b.dim() != dim_b) {
      fail(ErrorCode::DimensionMismatch, "product term does not match decomposition dimensions");
    }
    write_product(t.ket_a, t.ket_b, acc.next_column(t.weight));
  }
  return TwoModeOperator::from_dense(dim_a, dim_b, acc.finish());
}

double reconstruction_error(const SeparableDecomposition& decomposition, const TwoModeOperator& target) {
  return trace_norm(decomposition.reconstruct() - target);
}

DOperator build_d_operator(double lambda, int n, DOperatorPath path) {
  require_lambda(lambda);
  require_levels(n);
  if (path == DOperatorPath::Auto) {
    path = n <= kDefaultEnumerationLevels ? DOperatorPath::Enumerated : DOperatorPath::ClosedForm;
  }
  if (path == DOperatorPath::Enumerated) {
    return DOperator{TwoModeOperator::from_dense(n, n, enumerated_d(lambda, n)), path};
  }
  return DOperator{closed_form_d(lambda, n), path};
}

double verify_boundary_decomposition(double lambda, int n, DOperatorPath path) {
  const auto d = build_d_operator(lambda, n, path);
  return max_abs_difference(build_boundary_pt(lambda, n), boundary_normalization(lambda, n) * d.op);
}

SeparableDecomposition decompose_general_ppt(const WernerParams& params) {
  params.validate();
  const int n = params.n_trunc;
  if (n > kMaxCertificateLevels) {
    fail(ErrorCode::ResourceLimit, "certificate with N^{N-1} product terms refused for N = " + std::to_string(n));
  }
  const double norm = werner_normalization(params);
  const double l1 = params.lambda1;
  const double l2sq = params.lambda2 * params.lambda2;
  const double alpha = params.p * (1.0 - l1 * l1) * norm;
  const double beta = (1.0 - params.p) * (1.0 - l2sq) * (1.0 - l2sq) * norm;

  std::vector<double> pw1(static_cast<std::size_t>(2 * n)), pw2(static_cast<std::size_t>(2 * n));
  pw1[0] = pw2[0] = 1.0;
  for (std::size_t k = 1; k < pw1.size(); ++k) {
    pw1[k] = pw1[k - 1] * l1;
    pw2[k] = pw2[k - 1] * l2sq;
  }

  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      if (m == k) continue;
      const double coherent = alpha * pw1[m + k];
      const double thermal = beta * pw2[m + k];
      if (coherent > thermal * (1.0 + kThresholdRelativeSlack)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "family (ii) weight at (m,n)=(" << m << "," << k << ") is " << thermal - coherent
            << " < 0; separability needs p <= 1/(1 + (1-l1^2)/(1-l2^2)^2 (l1/l2^2)^(m+n)), threshold "
            << ppt_threshold(params.lambda1, params.lambda2, n) << ", p = " << params.p;
        fail(ErrorCode::NotProvablySeparable, msg.str());
      }
    }
  }

  SeparableDecomposition cert;
  cert.dim_a = n;
  cert.dim_b = n;
  cert.target_trace = 1.0;
  const auto count = phase_index_count(n);
  cert.terms.reserve(static_cast<std::size_t>(count) + static_cast<std::size_t>(n * n));

  const double phase_weight = alpha / static_cast<double>(count);
  for_each_phase_index(n, [&](const PhaseIndex& idx) {
    const auto q = q_vector(l1, n, idx);
    cert.terms.push_back(ProductTerm{phase_weight, q.conjugated(), q});
  });
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      if (m == k) continue;
      cert.terms.push_back(ProductTerm{beta * pw2[m + k] - alpha * pw1[m + k], SingleModeVector::basis(n, m),
                                       SingleModeVector::basis(n, k)});
    }
  }
  for (int k = 0; k < n; ++k) {
    cert.terms.push_back(ProductTerm{beta * pw2[2 * k], SingleModeVector::basis(n, k), SingleModeVector::basis(n, k)});
  }

  cert.reconstruction_error = reconstruction_error(cert, build_werner_truncated(params));
  return cert;
}

double min_pt_eigenvalue(const WernerParams& params, const Tolerances& tol) {
  return eigenvalues_hermitian(partial_transpose_a(build_werner_truncated(params)), tol).min();
}

double ppt_threshold_bisected(double lambda1, double lambda2, int n, double ptol, const Tolerances& tol) {
  auto is_ppt = [&](double p) { return min_pt_eigenvalue(WernerParams{lambda1, lambda2, p, n}, tol) >= 0.0; };
  if (!(ptol > 0.0)) fail(ErrorCode::ParamOutOfRange, "ptol must be positive");
  if (is_ppt(1.0)) return 1.0;
  if (!is_ppt(0.0)) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > ptol) {
    const double mid = 0.5 * (lo + hi);
    (is_ppt(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double block_eigenvalue_offdiag(double lambda, int n, int j, int k) {
  require_lambda(lambda);
  require_levels(n);
  if (!(j > k && k >= 0)) {
    fail(ErrorCode::ParamOutOfRange, "need j > k >= 0, got j=" + std::to_string(j) + ", k=" + std::to_string(k));
  }
  const double jinf = bar_normalization(lambda);
  const double scale = std::pow(lambda, j + k);
  if (j < n && k < n) return 2.0 * (jinf - bar_normalization_truncated(lambda, n)) * scale;
  return 2.0 * jinf * scale;
}

double block_eigenvalue_diag(double lambda, int n, int l) {
  require_lambda(lambda);
  require_levels(n);
  if (l < 0) fail(ErrorCode::ParamOutOfRange, "need l >= 0, got " + std::to_string(l));
  const double jinf = bar_normalization(lambda);
  const double scale = std::pow(lambda, 2 * l);
  if (l < n) return (jinf - bar_normalization_truncated(lambda, n)) * scale;
  return jinf * scale;
}

ConvergenceResult trace_norm_convergence(double lambda, int n, int cutoff, const Tolerances& tol) {
  require_lambda(lambda);
  require_levels(n);
  if (cutoff < n) {
    fail(ErrorCode::CutoffTooSmall, "cutoff " + std::to_string(cutoff) + " below n " + std::to_string(n));
  }
  const auto diff = build_rho_bar_q_pt_cutoff(lambda, cutoff) - build_rho_bar_q_n_pt(lambda, n, cutoff);
  ConvergenceResult out;
  out.numeric = trace_norm(diff, tol);
  out.closed_form = 4.0 * std::pow(lambda, n) - 2.0 * std::pow(lambda, 2 * n);
  out.tail_bound = 2.0 * std::pow(lambda, cutoff);
  return out;
}

}  // namespace cvwerner
