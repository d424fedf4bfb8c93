#pragma once

// Phase vectors |q_n> = |0> + sum_{j=1}^{N-1} e^{i theta_j} lambda^{j/2} |j>.
//
// For N > 2 the index is n = (n_1, ..., n_{N-1}) with n_j in {0..N-1} and
// theta_j = 2 pi n_j / N, giving N^{N-1} vectors. For N = 2 the index is a
// single n in {0..3} with theta_1 = pi n / 2 (four vectors).

#include <cstdint>
#include <functional>
#include <vector>

#include "cvwerner/fock_operator.hpp"

namespace cvwerner {

class PhaseIndex {
 public:
  // Throws BadPhaseIndex if the digits do not fit n_levels.
  PhaseIndex(int n_levels, std::vector<int> digits);

  static PhaseIndex zero(int n_levels);

  int n_levels() const noexcept { return n_levels_; }
  const std::vector<int>& digits() const noexcept { return digits_; }

  // Phase angle attached to Fock level j; level 0 always has angle 0.
  double angle(int level) const;

 private:
  int n_levels_;
  std::vector<int> digits_;
};

// Number of phase indices for n_levels: 4 for N = 2, N^{N-1} otherwise
// (saturates at UINT64_MAX).
std::uint64_t phase_index_count(int n_levels);

// Visits every phase index in lexicographic order (n_1 slowest).
void for_each_phase_index(int n_levels, const std::function<void(const PhaseIndex&)>& visit);

// Unnormalised |q_n> on an n_levels-dimensional mode.
SingleModeVector q_vector(double lambda, int n_levels, const PhaseIndex& idx);

// lambda = 1 version, embedded in a `dim`-level mode (dim >= n_levels).
SingleModeVector q_tilde_vector(int n_levels, const PhaseIndex& idx, int dim);

// Brute-force sum over all phase indices of e^{i (theta_j - theta_k)},
// using theta_0 = 0. Equals N^{N-1} delta_jk for N > 2.
Complex phase_sum(int n_levels, int j, int k);

// Same sum for e^{i (theta_j + theta_k - theta_l - theta_m)}.
Complex phase_sum4(int n_levels, int j, int k, int l, int m);

}  // namespace cvwerner
