#include "cvwerner/discord.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cvwerner/error.hpp"
#include "cvwerner/parallel.hpp"
#include "cvwerner/werner.hpp"

namespace cvwerner {

namespace {

void require_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    fail(ErrorCode::ParamOutOfRange, "lambda must lie in [0,1), got " + std::to_string(lambda));
  }
}

void require_open_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    fail(ErrorCode::ParamOutOfRange, "lambda must lie in (0,1), got " + std::to_string(lambda));
  }
}

void require_levels(int n) {
  if (n < 2) fail(ErrorCode::ParamOutOfRange, "n_levels must be >= 2, got " + std::to_string(n));
}

void require_cutoff(int n, int cutoff) {
  require_levels(n);
  if (cutoff < n) {
    fail(ErrorCode::CutoffTooSmall, "cutoff " + std::to_string(cutoff) + " below n_levels " + std::to_string(n));
  }
}

void require_terms(int terms) {
  if (terms < 1) fail(ErrorCode::ParamOutOfRange, "series_terms must be >= 1, got " + std::to_string(terms));
}

// Bracket [(1 - lambda^{2N})/(1 - lambda^2) + (1 - lambda^N)/(1 - lambda)^2] in p(n).
double outcome_bracket(double lambda, int n) {
  return (1.0 - std::pow(lambda, 2 * n)) / (1.0 - lambda * lambda) +
         (1.0 - std::pow(lambda, n)) / ((1.0 - lambda) * (1.0 - lambda));
}

// Number of POVM outcomes other than Pi_0 as a real (exceeds 2^64 for N >= 15).
double outcome_count_real(int n) { return n == 2 ? 4.0 : std::pow(static_cast<double>(n), n - 1); }

// p_0 / (K lambda^N) = 1/(1 - lambda)^2 + lambda^N/(1 - lambda^2); keeps f_l finite when lambda^N underflows.
double pi0_scaled_bracket(double lambda, int n) {
  return 1.0 / ((1.0 - lambda) * (1.0 - lambda)) + std::pow(lambda, n) / (1.0 - lambda * lambda);
}

}  // namespace

PhasePovm::PhasePovm(int n_levels, int cutoff) : n_levels_(n_levels), cutoff_(cutoff) {
  require_cutoff(n_levels, cutoff);
}

SingleModeOperator PhasePovm::element(const PhaseIndex& idx) const {
  SingleModeOperator out = SingleModeOperator::projector(q_tilde_vector(n_levels_, idx, cutoff_));
  out *= 1.0 / outcome_count_real(n_levels_);
  return out;
}

SingleModeOperator PhasePovm::pi_zero() const {
  std::vector<double> diag(static_cast<std::size_t>(cutoff_), 0.0);
  for (int k = n_levels_; k < cutoff_; ++k) diag[k] = 1.0;
  return SingleModeOperator::diagonal(diag);
}

SingleModeOperator PhasePovm::completeness_closed_form() const {
  // sum_idx e^{i(theta_j - theta_k)} = count delta_jk, so the weighted sum is 1_N.
  SingleModeOperator out(cutoff_);
  for (int j = 0; j < n_levels_; ++j) out(j, j) = 1.0;
  return out;
}

SingleModeOperator PhasePovm::completeness_enumerated() const {
  if (n_levels_ > kMaxEnumeratedPovmLevels) {
    fail(ErrorCode::ResourceLimit, "POVM enumeration refused for N = " + std::to_string(n_levels_));
  }
  SingleModeOperator out(cutoff_);
  for_each_phase_index(n_levels_, [&](const PhaseIndex& idx) { out += element(idx); });
  return out;
}

std::vector<SingleModeOperator> PhasePovm::enumerate_effects() const {
  if (n_levels_ > kMaxEnumeratedPovmLevels) {
    fail(ErrorCode::ResourceLimit, "POVM enumeration refused for N = " + std::to_string(n_levels_));
  }
  std::vector<SingleModeOperator> out;
  out.reserve(static_cast<std::size_t>(outcome_count()) + 1);
  for_each_phase_index(n_levels_, [&](const PhaseIndex& idx) { out.push_back(element(idx)); });
  out.push_back(pi_zero());
  return out;
}

double photon_counting_discord(double lambda) {
  require_lambda(lambda);
  return lambda * std::numbers::ln2;
}

double global_entropy_closed(double lambda) {
  require_lambda(lambda);
  if (lambda == 0.0) return 0.0;
  const double k = infinite_boundary_normalization(lambda);
  return -(std::log(2.0 * k) + lambda * (1.0 + 3.0 * lambda) / (1.0 - lambda * lambda) * std::log(lambda));
}

double local_entropy_closed(double lambda, int series_terms) {
  require_lambda(lambda);
  require_terms(series_terms);
  if (lambda == 0.0) return 0.0;
  const double k = infinite_boundary_normalization(lambda);
  const double inv = 1.0 / (1.0 - lambda);
  double sum = 0.0, pw = 1.0;
  for (int m = 0; m < series_terms; ++m) {
    sum += (pw * pw + pw * inv) * std::log(pw + inv);
    pw *= lambda;
  }
  return -(k * sum + std::log(k) + lambda * (1.0 + 3.0 * lambda) / (2.0 * (1.0 - lambda * lambda)) * std::log(lambda));
}

SingleModeOperator conditional_state_nvec(double lambda, int n_levels, int cutoff) {
  require_lambda(lambda);
  require_cutoff(n_levels, cutoff);
  const double scale = 1.0 / outcome_bracket(lambda, n_levels);
  const double diag_factor = (1.0 - std::pow(lambda, n_levels)) / (1.0 - lambda);
  DenseMatrix m = DenseMatrix::Zero(cutoff, cutoff);
  std::vector<double> pw(static_cast<std::size_t>(cutoff));
  pw[0] = 1.0;
  for (int k = 1; k < cutoff; ++k) pw[k] = pw[k - 1] * lambda;
  for (int r = 0; r < n_levels; ++r) {
    for (int c = 0; c < n_levels; ++c) m(r, c) = scale * pw[r] * pw[c];
  }
  for (int k = 0; k < cutoff; ++k) m(k, k) += scale * diag_factor * pw[k];
  return SingleModeOperator(std::move(m));
}

double outcome_probability(double lambda, int n_levels) {
  return outcome_probability_total(lambda, n_levels) / outcome_count_real(n_levels);
}

double outcome_probability_total(double lambda, int n_levels) {
  require_lambda(lambda);
  require_levels(n_levels);
  return infinite_boundary_normalization(lambda) * outcome_bracket(lambda, n_levels);
}

double pi0_probability(double lambda, int n_levels) {
  require_lambda(lambda);
  require_levels(n_levels);
  return infinite_boundary_normalization(lambda) * std::pow(lambda, n_levels) * pi0_scaled_bracket(lambda, n_levels);
}

double pi0_conditional_eigenvalue(double lambda, int n_levels, int l) {
  require_lambda(lambda);
  require_levels(n_levels);
  if (l < 0) fail(ErrorCode::ParamOutOfRange, "need l >= 0, got " + std::to_string(l));
  if (lambda == 0.0) fail(ErrorCode::DegenerateOutcome, "p_0 = 0 at lambda = 0; Pi_0 never fires");
  // Numerator and denominator both divided by lambda^N.
  const double denom = pi0_scaled_bracket(lambda, n_levels);
  const double coherent = std::pow(lambda, l) / (1.0 - lambda);
  if (l < n_levels) return coherent / denom;
  return (std::pow(lambda, 2 * l - n_levels) + coherent) / denom;
}

std::vector<double> pi0_conditional_spectrum(double lambda, int n_levels, int terms) {
  require_terms(terms);
  std::vector<double> out(static_cast<std::size_t>(terms));
  for (int l = 0; l < terms; ++l) out[l] = pi0_conditional_eigenvalue(lambda, n_levels, l);
  return out;
}

SingleModeOperator pi0_conditional_state(double lambda, int n_levels, int cutoff) {
  require_lambda(lambda);
  require_cutoff(n_levels, cutoff);
  const double p0 = pi0_probability(lambda, n_levels);
  if (!(p0 > 0.0)) fail(ErrorCode::DegenerateOutcome, "p_0 = 0; Pi_0 never fires");
  const double k = infinite_boundary_normalization(lambda);
  const double lam_n = std::pow(lambda, n_levels);
  std::vector<double> diag(static_cast<std::size_t>(cutoff));
  double pw = 1.0;
  for (int l = 0; l < cutoff; ++l) {
    // Reduced state K (lambda^{2l} + lambda^l/(1-lambda)) minus the summed
    // Pi_n conditionals K (lambda^{2l} [l<N] + lambda^l (1-lambda^N)/(1-lambda)).
    const double thermal = l < n_levels ? 0.0 : pw * pw;
    const double coherent = pw * lam_n / (1.0 - lambda);
    diag[l] = k * (thermal + coherent) / p0;
    pw *= lambda;
  }
  return SingleModeOperator::diagonal(diag);
}

DiscordReport povm_discord(double lambda, int n_levels, int cutoff, int series_terms, const Tolerances& tol) {
  require_open_lambda(lambda);
  require_cutoff(n_levels, cutoff);
  require_terms(series_terms);

  DiscordReport r;
  r.lambda = lambda;
  r.n_levels = n_levels;
  r.cutoff = cutoff;
  r.series_terms = series_terms;
  r.s_global = global_entropy_closed(lambda);
  r.s_local_b = local_entropy_closed(lambda, series_terms);

  const SingleModeOperator cond = conditional_state_nvec(lambda, n_levels, cutoff);
  r.s_cond_nvec = entropy_of_spectrum(eigenvalues_hermitian(cond, tol, EigenMethod::Dense).values, tol);

  r.p_outcome = outcome_probability(lambda, n_levels);
  r.p_zero = pi0_probability(lambda, n_levels);
  double zero_term = 0.0;
  if (r.p_zero >= kNegligibleOutcome) {
    const auto f = pi0_conditional_spectrum(lambda, n_levels, series_terms);
    r.s_cond_zero = entropy_of_spectrum(f, tol);
    zero_term = r.p_zero * r.s_cond_zero;
  }

  r.discord_povm = (1.0 - r.p_zero) * r.s_cond_nvec + zero_term + r.s_local_b - r.s_global;
  r.discord_photon = photon_counting_discord(lambda);
  r.delta = r.discord_povm - r.discord_photon;
  return r;
}

std::vector<DiscordReport> discord_sweep(std::span<const double> lambdas, int n_levels, int cutoff, int series_terms,
                                         const Tolerances& tol) {
  return parallel_map(lambdas.size(),
                      [&](std::size_t i) { return povm_discord(lambdas[i], n_levels, cutoff, series_terms, tol); });
}

double find_threshold(int n_levels, int cutoff, int series_terms, std::pair<double, double> bracket, double xtol,
                      const Tolerances& tol) {
  auto [lo, hi] = bracket;
  if (!(lo > 0.0 && hi < 1.0 && lo < hi)) {
    fail(ErrorCode::ParamOutOfRange,
         "bracket must satisfy 0 < lo < hi < 1, got (" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  }
  if (!(xtol > 0.0)) fail(ErrorCode::ParamOutOfRange, "xtol must be positive");
  auto delta = [&](double l) { return povm_discord(l, n_levels, cutoff, series_terms, tol).delta; };
  double f_lo = delta(lo);
  const double f_hi = delta(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    fail(ErrorCode::NoSignChange, "delta has the same sign at lambda = " + std::to_string(lo) + " (" +
                                      std::to_string(f_lo) + ") and " + std::to_string(hi) + " (" +
                                      std::to_string(f_hi) + ")");
  }
  while (hi - lo > xtol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = delta(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double measurement_dependent_discord(const TwoModeOperator& rho, std::span<const SingleModeOperator> effects_b,
                                     const Tolerances& tol) {
  const double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::B), tol);
  const double s_ab = von_neumann_entropy(rho, tol);
  double average = 0.0;
  for (const auto& e : effects_b) {
    SingleModeOperator cond = conditional_on_b(rho, e);
    const double p = cond.trace().real();
    if (p < kNegligibleOutcome) continue;
    cond *= 1.0 / p;
    average += p * von_neumann_entropy(cond, tol);
  }
  return s_b - s_ab + average;
}

double photon_counting_discord_numeric(const TwoModeOperator& rho, const Tolerances& tol) {
  const double s_b = von_neumann_entropy(partial_trace(rho, Subsystem::B), tol);
  const double s_ab = von_neumann_entropy(rho, tol);
  const auto outcomes = parallel_map(static_cast<std::size_t>(rho.dim_b()), [&](std::size_t k) {
    SingleModeOperator cond = conditional_on_b_fock(rho, static_cast<int>(k));
    const double p = cond.trace().real();
    if (p < kNegligibleOutcome) return 0.0;
    cond *= 1.0 / p;
    return p * von_neumann_entropy(cond, tol);
  });
  double average = 0.0;
  for (double v : outcomes) average += v;
  return s_b - s_ab + average;
}

}  // namespace cvwerner
