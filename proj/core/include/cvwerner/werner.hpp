#pragma once

// Truncated and cutoff-represented continuous-variable Werner states.
//
// lambda1 = tanh r is the squeezing of the two-mode squeezed vacuum sigma,
// lambda2 = tanh s the thermal parameter of tau, and
// rho_p = p sigma + (1 - p) tau.

#include "cvwerner/fock_operator.hpp"

namespace cvwerner {

struct WernerParams {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double p = 0.0;
  int n_trunc = 2;

  // Throws ParamOutOfRange unless lambda1, lambda2 in [0,1), p in [0,1], n_trunc >= 2.
  void validate() const;
};

// The PPT boundary family: lambda1 = lambda, lambda2^2 = lambda, p = q.
struct BoundaryParams {
  double lambda = 0.0;

  double q() const noexcept { return (1.0 - lambda) / 2.0; }
  WernerParams werner(int n_trunc) const;
};

// Normalisation constants.
double werner_normalization(const WernerParams& params);      // N_{p,N}
double boundary_normalization(double lambda, int n);           // K_N
double infinite_boundary_normalization(double lambda);         // K
double bar_normalization(double lambda);                       // J
double bar_normalization_truncated(double lambda, int n);      // J_N

// (1 - lambda^2) sum_{m,n<N} lambda^{m+n} |m,m><n,n|; trace 1 - lambda^{2N}.
TwoModeOperator build_tmsv_truncated(double lambda1, int n);
// (1 - lambda^2) sum_{m<N} lambda^{2m} |m><m| on one mode.
SingleModeOperator build_thermal_truncated(double lambda2, int n);
// build_thermal_truncated (x) build_thermal_truncated; trace (1 - lambda^{2N})^2.
TwoModeOperator build_thermal_product_truncated(double lambda2, int n);
// N_{p,N} [p sigma_N + (1 - p) tau_N]; unit trace.
TwoModeOperator build_werner_truncated(const WernerParams& params);

// Largest p for which the N-truncated state is PPT. Returns 1 when
// lambda1 = 0 (sigma_N is the vacuum) and 0 when lambda2 = 0 < lambda1.
double ppt_threshold(double lambda1, double lambda2, int n);

// rho_{q,N}^{T_A} = K_N sum_{m,n<N} lambda^{m+n} (|n,m><m,n| + |m,n><m,n|).
TwoModeOperator build_boundary_pt(double lambda, int n);

// rho_q^{T_A} restricted to Fock indices < cutoff; not renormalised.
TwoModeOperator build_rho_q_pt_cutoff(double lambda, int cutoff);

// J (rho_q^{T_A} / K - sum_n lambda^{2n} |n,n><n,n|) at the cutoff.
TwoModeOperator build_rho_bar_q_pt_cutoff(double lambda, int cutoff);

// J_N (rho_{q,N}^{T_A} / K_N - sum_{n<N} lambda^{2n} |n,n><n,n|), embedded
// in the cutoff-sized space.
TwoModeOperator build_rho_bar_q_n_pt(double lambda, int n, int cutoff);

}  // namespace cvwerner
