#pragma once

// Measurement-dependent discord of rho_q^{T_A} for two measurements on mode
// B: photon counting {|m><m|} and the phase-vector POVM {Pi_n, Pi_0} with
//   Pi_n = |q~_n><q~_n| / count,  |q~_n> = sum_{j<N} e^{i theta_j} |j>,
//   count = N^{N-1} (4 for N = 2),
//   Pi_0 = 1_M - 1_N.
// All entropies use the natural logarithm.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cvwerner/linalg.hpp"
#include "cvwerner/phase_vectors.hpp"

namespace cvwerner {

inline constexpr int kDefaultCutoff = 500;
inline constexpr int kDefaultSeriesTerms = 500;
// Below this probability an outcome contributes nothing to the average entropy.
inline constexpr double kNegligibleOutcome = 1e-300;

class PhasePovm {
 public:
  // Throws CutoffTooSmall unless cutoff >= n_levels >= 2.
  PhasePovm(int n_levels, int cutoff);

  int n_levels() const noexcept { return n_levels_; }
  int cutoff() const noexcept { return cutoff_; }
  std::uint64_t outcome_count() const { return phase_index_count(n_levels_); }

  SingleModeOperator element(const PhaseIndex& idx) const;
  SingleModeOperator pi_zero() const;

  // sum_idx Pi_idx from the phase-sum identity sum_idx e^{i(theta_j - theta_k)} = count delta_jk.
  SingleModeOperator completeness_closed_form() const;
  // Explicit sum; refused (ResourceLimit) for N > kMaxEnumeratedPovmLevels.
  SingleModeOperator completeness_enumerated() const;

  // Every element followed by Pi_0; same size limit as completeness_enumerated.
  std::vector<SingleModeOperator> enumerate_effects() const;

 private:
  int n_levels_;
  int cutoff_;
};

inline constexpr int kMaxEnumeratedPovmLevels = 5;

struct DiscordReport {
  double lambda = 0.0;
  int n_levels = 0;
  int cutoff = 0;
  int series_terms = 0;
  double s_global = 0.0;      // S(rho_q^{T_A})
  double s_local_b = 0.0;     // S(Tr_A rho_q^{T_A})
  double s_cond_nvec = 0.0;   // S(rho_{A|n}), identical for every n
  double s_cond_zero = 0.0;   // S(rho_{q,A|0}^{T_A})
  double p_outcome = 0.0;     // p(n) for a single n
  double p_zero = 0.0;        // p_0
  double discord_povm = 0.0;
  double discord_photon = 0.0;
  double delta = 0.0;         // discord_povm - discord_photon
};

double photon_counting_discord(double lambda);

double global_entropy_closed(double lambda);
double local_entropy_closed(double lambda, int series_terms = kDefaultSeriesTerms);

// Normalised rho_{A|n} at the cutoff (the n-independent representative).
SingleModeOperator conditional_state_nvec(double lambda, int n_levels, int cutoff);

// p(n) for one outcome and N^{N-1} p(n) summed over all of them.
double outcome_probability(double lambda, int n_levels);
double outcome_probability_total(double lambda, int n_levels);
double pi0_probability(double lambda, int n_levels);

// f_l; throws DegenerateOutcome when p_0 = 0.
double pi0_conditional_eigenvalue(double lambda, int n_levels, int l);
std::vector<double> pi0_conditional_spectrum(double lambda, int n_levels, int terms);
// Diagonal Pi_0-conditional state of mode A at the cutoff, assembled from
// the reduced state minus the summed Pi_n conditionals term by term.
SingleModeOperator pi0_conditional_state(double lambda, int n_levels, int cutoff);

DiscordReport povm_discord(double lambda, int n_levels, int cutoff = kDefaultCutoff,
                           int series_terms = kDefaultSeriesTerms, const Tolerances& tol = {});

// povm_discord at every lambda, evaluated in parallel; rows keep the input order.
std::vector<DiscordReport> discord_sweep(std::span<const double> lambdas, int n_levels, int cutoff = kDefaultCutoff,
                                         int series_terms = kDefaultSeriesTerms, const Tolerances& tol = {});

// Root of lambda -> povm_discord(lambda).delta by bisection until the
// bracket is narrower than xtol. Throws NoSignChange.
double find_threshold(int n_levels, int cutoff, int series_terms, std::pair<double, double> bracket,
                      double xtol = 1e-4, const Tolerances& tol = {});

// Direct evaluation of S(rho_B) - S(rho) + sum_b p_b S(rho_{A|b}) for a
// measurement on mode B given by explicit effects.
double measurement_dependent_discord(const TwoModeOperator& rho, std::span<const SingleModeOperator> effects_b,
                                     const Tolerances& tol = {});
// Same with the Fock projectors on every level of mode B.
double photon_counting_discord_numeric(const TwoModeOperator& rho, const Tolerances& tol = {});

}  // namespace cvwerner
