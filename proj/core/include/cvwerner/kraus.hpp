#pragma once

// Product-vector construction for the 2x2 boundary state, following the
// 2xN subtraction method: remove product terms until
// rank(rho) + rank(rho^{T_A}) <= 6, then find the remaining product vectors
// from the roots of det M(alpha).

#include <array>
#include <vector>

#include "cvwerner/linalg.hpp"
#include "cvwerner/separability.hpp"

namespace cvwerner {

struct KrausN2Trace {
  double lambda = 0.0;

  // Flat amplitudes of |0,0> + lambda |1,1>; the two product kets |0>|0>
  // and lambda |1>|1> are removed as an incoherent mixture.
  std::array<Complex, 4> subtracted_vector{};
  std::vector<ProductTerm> subtracted_terms;

  int rank_state_before = 0;  // rank of rho~_{q,2}
  int rank_pt_before = 0;     // rank of rho~_{q,2}^{T_A}
  int rank_state_after = 0;
  int rank_pt_after = 0;

  Eigen::Vector4cd kernel_psi1;  // spans ker(rho~_{q,2} - subtracted)
  Eigen::Vector4cd kernel_psi2;  // spans ker(rho~_{q,2}^{T_A} - subtracted)

  // det M(alpha) = modulus |alpha|^2 + linear alpha + conj_linear alpha* + constant
  Complex det_modulus_coeff{};
  Complex det_linear_coeff{};
  Complex det_conj_linear_coeff{};
  Complex det_constant{};

  double root_modulus = 0.0;
  std::array<Complex, 4> roots{};

  // (alpha|0> + |1>) (x) |f> with M(alpha) f = 0, weights fitted so they sum
  // to rho~_{q,2} minus the subtracted terms.
  std::vector<ProductTerm> product_vectors;

  // Certificate for rho~_{q,2}^{T_A}: subtracted terms plus the A-conjugated
  // product vectors.
  SeparableDecomposition decomposition;
  double reconstruction_max_error = 0.0;
};

// lambda in (0,1). Throws DegenerateKernel if a kernel is not one-dimensional
// or det M is not a function of |alpha| alone.
KrausN2Trace kraus_n2_decompose(double lambda, const Tolerances& tol = {});

// Numerical rank: eigenvalues above rel_tol * max |eigenvalue|.
int numerical_rank(const TwoModeOperator& x, double rel_tol = 1e-10);

}  // namespace cvwerner
