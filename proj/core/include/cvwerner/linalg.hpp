#pragma once

#include <span>
#include <vector>

#include "cvwerner/fock_operator.hpp"

namespace cvwerner {

// Numerical slack. Closed forms in this library are exact, so these only
// absorb floating-point error.
struct Tolerances {
  double hermitian = 1e-10;   // max |x - x^dagger| entry
  double clamp = 1e-10;       // eigenvalues in (-clamp, 0] are treated as 0
  double trace = 1e-10;       // |tr(rho) - 1| allowed for a state
};

enum class Subsystem { A, B };

enum class EigenMethod {
  Blocked,  // dense solve per connected component of the nonzero pattern
  Dense,    // one dense solve over the full matrix
};

struct Spectrum {
  std::vector<double> values;  // ascending

  std::size_t size() const noexcept { return values.size(); }
  double sum() const;
  double min() const;
  double max() const;
};

// One diagonal block of a Hermitian operator after permuting it to
// block-diagonal form. vectors.col(k) is the eigenvector of values(k)
// expressed on `indices`.
struct HermitianBlock {
  std::vector<int> indices;
  Eigen::VectorXd values;
  DenseMatrix vectors;
};

TwoModeOperator tensor(const SingleModeOperator& a, const SingleModeOperator& b);

// <m,mu| out |n,nu> = <n,mu| x |m,nu>
TwoModeOperator partial_transpose_a(const TwoModeOperator& x);

SingleModeOperator partial_trace(const TwoModeOperator& x, Subsystem keep);

// Tr_B[x (1 (x) effect)], the unnormalised conditional operator on A.
SingleModeOperator conditional_on_b(const TwoModeOperator& x, const SingleModeOperator& effect);
// Same for the Fock projector |k><k| on B.
SingleModeOperator conditional_on_b_fock(const TwoModeOperator& x, int k);

double hermiticity_defect(const SingleModeOperator& x);
double hermiticity_defect(const TwoModeOperator& x);

Spectrum eigenvalues_hermitian(const SingleModeOperator& x, const Tolerances& tol = {},
                               EigenMethod method = EigenMethod::Blocked);
Spectrum eigenvalues_hermitian(const TwoModeOperator& x, const Tolerances& tol = {},
                               EigenMethod method = EigenMethod::Blocked);

std::vector<HermitianBlock> hermitian_blocks(const SingleModeOperator& x, const Tolerances& tol = {});
std::vector<HermitianBlock> hermitian_blocks(const TwoModeOperator& x, const Tolerances& tol = {});

double trace_norm(const SingleModeOperator& x, const Tolerances& tol = {});
double trace_norm(const TwoModeOperator& x, const Tolerances& tol = {});

// -sum f ln f (natural log), 0 ln 0 = 0. Throws NotAState unless x is a
// unit-trace PSD operator within tolerance.
double von_neumann_entropy(const SingleModeOperator& x, const Tolerances& tol = {});
double von_neumann_entropy(const TwoModeOperator& x, const Tolerances& tol = {});

// Entropy of an explicit probability list, same clamping rules.
double entropy_of_spectrum(std::span<const double> values, const Tolerances& tol = {});

}  // namespace cvwerner
