#include "cvwerner/kraus.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvwerner/error.hpp"
#include "cvwerner/werner.hpp"

namespace cvwerner {

namespace {

using Matrix4 = Eigen::Matrix4cd;
using Row2 = Eigen::RowVector2cd;

// Relative size below which an eigenvalue counts as zero.
constexpr double kRankTolerance = 1e-10;

Matrix4 dense4(const TwoModeOperator& x) { return Matrix4(x.to_dense()); }

Eigen::Vector4cd single_kernel_vector(const Matrix4& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(0.5 * (m + m.adjoint()));
  const auto& ev = solver.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  int zeros = 0;
  Eigen::Index first = -1;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k)) <= kRankTolerance * scale) {
      ++zeros;
      if (first < 0) first = k;
    }
  }
  if (zeros != 1) {
    fail(ErrorCode::DegenerateKernel, "kernel dimension " + std::to_string(zeros) + ", expected 1");
  }
  Eigen::Vector4cd v = solver.eigenvectors().col(first);
  // Fix the global phase so the largest component is real and positive.
  Eigen::Index at = 0;
  v.cwiseAbs().maxCoeff(&at);
  return v * std::polar(1.0, -std::arg(v(at)));
}

// <psi|i> as a row vector over the B index: entries conj(psi_{i l}).
Row2 kernel_row(const Eigen::Vector4cd& psi, int i) {
  return Row2(std::conj(psi(2 * i)), std::conj(psi(2 * i + 1)));
}

Complex cross(const Row2& u, const Row2& v) { return u(0) * v(1) - u(1) * v(0); }

Eigen::Vector2cd null_vector(const Eigen::Matrix2cd& m) {
  const Eigen::Index row = m.row(0).norm() >= m.row(1).norm() ? 0 : 1;
  return Eigen::Vector2cd(-m(row, 1), m(row, 0));
}

SingleModeVector mode2(Complex c0, Complex c1) {
  DenseVector v(2);
  v << c0, c1;
  return SingleModeVector(std::move(v));
}

}  // namespace

int numerical_rank(const TwoModeOperator& x, double rel_tol) {
  const auto spectrum = eigenvalues_hermitian(x);
  double scale = 0.0;
  for (double v : spectrum.values) scale = std::max(scale, std::abs(v));
  int rank = 0;
  for (double v : spectrum.values) {
    if (std::abs(v) > rel_tol * scale) ++rank;
  }
  return rank;
}

KrausN2Trace kraus_n2_decompose(double lambda, const Tolerances& tol) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    fail(ErrorCode::ParamOutOfRange, "lambda must lie in (0,1), got " + std::to_string(lambda));
  }
  KrausN2Trace out;
  out.lambda = lambda;

  const double k2 = boundary_normalization(lambda, 2);
  const TwoModeOperator state = (1.0 / k2) * build_werner_truncated(BoundaryParams{lambda}.werner(2));
  const TwoModeOperator state_pt = partial_transpose_a(state);
  out.rank_state_before = numerical_rank(state);
  out.rank_pt_before = numerical_rank(state_pt);

  out.subtracted_vector = {1.0, 0.0, 0.0, lambda};
  out.subtracted_terms.push_back(ProductTerm{1.0, SingleModeVector::basis(2, 0), SingleModeVector::basis(2, 0)});
  out.subtracted_terms.push_back(
      ProductTerm{lambda * lambda, SingleModeVector::basis(2, 1), SingleModeVector::basis(2, 1)});
  TwoModeBuilder removed(2, 2);
  for (const auto& t : out.subtracted_terms) removed.add_product(t.weight, t.ket_a, t.ket_b);
  const TwoModeOperator subtracted = removed.build();

  // Invariant under T_A, so the same operator comes off both sides.
  const TwoModeOperator rest = state - subtracted;
  const TwoModeOperator rest_pt = state_pt - subtracted;
  out.rank_state_after = numerical_rank(rest);
  out.rank_pt_after = numerical_rank(rest_pt);

  const Matrix4 rest_dense = dense4(rest);
  const Matrix4 rest_pt_dense = dense4(rest_pt);
  out.kernel_psi1 = single_kernel_vector(rest_dense);
  out.kernel_psi2 = single_kernel_vector(rest_pt_dense);

  // M(alpha) rows: alpha <psi1|0> + <psi1|1> and alpha* <psi2|0> + <psi2|1>.
  const Row2 a0 = kernel_row(out.kernel_psi1, 0), a1 = kernel_row(out.kernel_psi1, 1);
  const Row2 b0 = kernel_row(out.kernel_psi2, 0), b1 = kernel_row(out.kernel_psi2, 1);
  out.det_modulus_coeff = cross(a0, b0);
  out.det_linear_coeff = cross(a0, b1);
  out.det_conj_linear_coeff = cross(a1, b0);
  out.det_constant = cross(a1, b1);

  const double scale = std::max(std::abs(out.det_modulus_coeff), std::abs(out.det_constant));
  if (std::abs(out.det_linear_coeff) > 1e-10 * scale || std::abs(out.det_conj_linear_coeff) > 1e-10 * scale) {
    fail(ErrorCode::DegenerateKernel, "det M(alpha) depends on the phase of alpha");
  }
  const Complex ratio = -out.det_constant / out.det_modulus_coeff;
  if (!(ratio.real() > 0.0) || std::abs(ratio.imag()) > 1e-10 * std::abs(ratio)) {
    fail(ErrorCode::DegenerateKernel, "det M(alpha) = 0 has no solution with |alpha| > 0");
  }
  out.root_modulus = std::sqrt(ratio.real());

  // |alpha| is fixed; four equally spaced phases reproduce the phase vectors.
  std::vector<SingleModeVector> e_kets, f_kets;
  for (int n = 0; n < 4; ++n) {
    const Complex alpha = std::polar(out.root_modulus, std::numbers::pi * n / 2.0);
    out.roots[n] = alpha;
    Eigen::Matrix2cd m;
    m.row(0) = alpha * a0 + a1;
    m.row(1) = std::conj(alpha) * b0 + b1;
    const Eigen::Vector2cd f = null_vector(m);
    e_kets.push_back(mode2(alpha, 1.0));
    f_kets.push_back(mode2(f(0), f(1)));
  }

  // Fit weights w_n with sum_n w_n |e_n f_n><e_n f_n| = rest (real least squares).
  Eigen::MatrixXd system(32, 4);
  Eigen::VectorXd rhs(32);
  for (int n = 0; n < 4; ++n) {
    DenseVector v(4);
    for (int m = 0; m < 2; ++m) {
      for (int mu = 0; mu < 2; ++mu) v(2 * m + mu) = e_kets[n][m] * f_kets[n][mu];
    }
    const Matrix4 proj = v * v.adjoint();
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        system(4 * r + c, n) = proj(r, c).real();
        system(16 + 4 * r + c, n) = proj(r, c).imag();
      }
    }
  }
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      rhs(4 * r + c) = rest_dense(r, c).real();
      rhs(16 + 4 * r + c) = rest_dense(r, c).imag();
    }
  }
  const Eigen::VectorXd weights = system.colPivHouseholderQr().solve(rhs);
  for (int n = 0; n < 4; ++n) out.product_vectors.push_back(ProductTerm{weights(n), e_kets[n], f_kets[n]});

  out.decomposition.dim_a = 2;
  out.decomposition.dim_b = 2;
  out.decomposition.target_trace = state_pt.trace().real();
  out.decomposition.terms = out.subtracted_terms;
  for (const auto& t : out.product_vectors) {
    out.decomposition.terms.push_back(ProductTerm{t.weight, t.ket_a.conjugated(), t.ket_b});
  }
  const TwoModeOperator target = (1.0 / k2) * build_boundary_pt(lambda, 2);
  const TwoModeOperator rebuilt = out.decomposition.reconstruct();
  out.reconstruction_max_error = max_abs_difference(rebuilt, target);
  out.decomposition.reconstruction_error = trace_norm(rebuilt - target, tol);
  return out;
}

}  // namespace cvwerner
