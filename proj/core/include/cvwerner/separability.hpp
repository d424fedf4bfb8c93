#pragma once

// Explicit product-state decompositions of truncated CV Werner states and
// the trace-norm convergence of their truncations.

#include <vector>

#include "cvwerner/fock_operator.hpp"
#include "cvwerner/linalg.hpp"
#include "cvwerner/phase_vectors.hpp"
#include "cvwerner/werner.hpp"

namespace cvwerner {

// weight * |ket_a><ket_a| (x) |ket_b><ket_b|; kets are unnormalised and the
// weight absorbs every scalar.
struct ProductTerm {
  double weight = 0.0;
  SingleModeVector ket_a;
  SingleModeVector ket_b;
};

struct SeparableDecomposition {
  int dim_a = 0;
  int dim_b = 0;
  std::vector<ProductTerm> terms;
  double target_trace = 1.0;
  // Filled by the producer: trace norm of (reconstruction - target).
  double reconstruction_error = 0.0;

  // sum weight * |a|^2 |b|^2
  double total_trace() const;
  double min_weight() const;
  TwoModeOperator reconstruct() const;
};

// Trace norm of decomposition.reconstruct() - target.
double reconstruction_error(const SeparableDecomposition& decomposition, const TwoModeOperator& target);

enum class DOperatorPath {
  Auto,        // enumerate for N <= kDefaultEnumerationLevels, closed form otherwise
  Enumerated,  // explicit sum over every phase vector (refused for N > kMaxEnumerationLevels)
  ClosedForm,  // D_{jk,lm} = lambda^{j+k} (delta_jl delta_km + delta_jm delta_kl)
};

inline constexpr int kDefaultEnumerationLevels = 5;
inline constexpr int kMaxEnumerationLevels = 8;

struct DOperator {
  TwoModeOperator op;
  DOperatorPath path;  // never Auto
};

// D = sum_{n<N} lambda^{2n} |n,n><n,n| + (1/count) sum_idx |q_idx,q_idx><q_idx,q_idx|
DOperator build_d_operator(double lambda, int n, DOperatorPath path = DOperatorPath::Auto);

// max |rho_{q,N}^{T_A} - K_N D| over entries.
double verify_boundary_decomposition(double lambda, int n, DOperatorPath path = DOperatorPath::Auto);

// Certificate for rho_{p,N} built from three families of product terms:
//   (i)   alpha/count on (conj q_idx, q_idx)
//   (ii)  beta lambda2^{2(m+n)} - alpha lambda1^{m+n} on (|m>, |n>), m != n
//   (iii) beta lambda2^{4n} on (|n>, |n>)
// with alpha = p (1 - lambda1^2) N_{p,N} and beta = (1 - p)(1 - lambda2^2)^2 N_{p,N}.
// Throws NotProvablySeparable when some family (ii) weight is negative,
// i.e. p lies above the PPT threshold.
inline constexpr int kMaxCertificateLevels = 7;
SeparableDecomposition decompose_general_ppt(const WernerParams& params);

// Smallest eigenvalue of rho_{p,N}^{T_A}.
double min_pt_eigenvalue(const WernerParams& params, const Tolerances& tol = {});

// Largest p with min_pt_eigenvalue >= 0, by bisection on [0,1] until the
// bracket is narrower than ptol. Independent of the closed-form threshold.
double ppt_threshold_bisected(double lambda1, double lambda2, int n, double ptol = 1e-12,
                              const Tolerances& tol = {});

// Nonzero eigenvalue of the 2x2 block on {|j,k>, |k,j>}, j > k, of
// rho_bar_q^{T_A} - rho_bar_{q,N}^{T_A}.
double block_eigenvalue_offdiag(double lambda, int n, int j, int k);
// Eigenvalue on the 1x1 block |l,l>.
double block_eigenvalue_diag(double lambda, int n, int l);

struct ConvergenceResult {
  double numeric = 0.0;      // trace norm at the cutoff
  double closed_form = 0.0;  // 4 lambda^N - 2 lambda^{2N}
  double tail_bound = 0.0;   // trace-norm mass beyond the cutoff, <= 2 lambda^cutoff
};

ConvergenceResult trace_norm_convergence(double lambda, int n, int cutoff, const Tolerances& tol = {});

}  // namespace cvwerner
