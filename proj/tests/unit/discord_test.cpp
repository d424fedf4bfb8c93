#include "cvwerner/discord.hpp"

#include <cmath>
#include <numbers>

#include "cvwerner/werner.hpp"
#include "test_support.hpp"

namespace cvwerner {
namespace {

constexpr double kLn2 = std::numbers::ln2;

double boundary_k(double l) { return (1.0 - l * l) * (1.0 - l) / 2.0; }

// (1/N^{N-1}) |q~><q~| with unit-modulus phases on the first N levels, built directly.
SingleModeOperator povm_element_oracle(int n, const std::vector<int>& digits, int cutoff) {
  DenseVector v = DenseVector::Zero(cutoff);
  v(0) = 1.0;
  const int radix = n == 2 ? 4 : n;
  for (int j = 1; j < n; ++j) v(j) = std::polar(1.0, 2.0 * std::numbers::pi * digits[j - 1] / radix);
  const double count = n == 2 ? 4.0 : std::pow(n, n - 1);
  return SingleModeOperator(DenseMatrix(v * v.adjoint() / count));
}

SingleModeOperator pi0_oracle(int n, int cutoff) {
  std::vector<double> d(static_cast<std::size_t>(cutoff), 0.0);
  for (int k = n; k < cutoff; ++k) d[k] = 1.0;
  return SingleModeOperator::diagonal(d);
}

TEST(PhasePovm, ConstructionGuards) {
  EXPECT_CVW_ERROR(PhasePovm(4, 3), CutoffTooSmall);
  EXPECT_CVW_ERROR(PhasePovm(1, 3), ParamOutOfRange);
  EXPECT_NO_THROW(PhasePovm(30, 30));
}

TEST(PhasePovm, ElementsMatchDirectConstruction) {
  const PhasePovm povm(3, 7);
  const auto e = povm.element(PhaseIndex(3, {1, 2}));
  EXPECT_LE(max_abs_difference(e, povm_element_oracle(3, {1, 2}, 7)), 1e-15);
  EXPECT_GE(eigenvalues_hermitian(e).min(), -1e-15);
  EXPECT_LE(max_abs_difference(povm.pi_zero(), pi0_oracle(3, 7)), 0.0);
}

TEST(PhasePovm, EnumeratedCompletenessForSmallN) {
  for (int n = 2; n <= kMaxEnumeratedPovmLevels; ++n) {
    const PhasePovm povm(n, n + 4);
    const auto sum = povm.completeness_enumerated();
    DenseMatrix expected = DenseMatrix::Zero(n + 4, n + 4);
    expected.topLeftCorner(n, n).setIdentity();
    EXPECT_LE((sum.matrix() - expected).cwiseAbs().maxCoeff(), 1e-10) << n;
    EXPECT_LE(max_abs_difference(povm.completeness_closed_form(), sum), 1e-10);
    const auto all = sum + povm.pi_zero();
    EXPECT_LE((all.matrix() - DenseMatrix::Identity(n + 4, n + 4)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(PhasePovm, ClosedFormCompletenessForLargeN) {
  const PhasePovm povm(30, 40);
  const auto sum = povm.completeness_closed_form() + povm.pi_zero();
  EXPECT_LE((sum.matrix() - DenseMatrix::Identity(40, 40)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_CVW_ERROR(PhasePovm(6, 6).completeness_enumerated(), ResourceLimit);
  EXPECT_CVW_ERROR(PhasePovm(6, 6).enumerate_effects(), ResourceLimit);
}

TEST(PhasePovm, EnumeratedEffectsEndWithPiZero) {
  const PhasePovm povm(3, 5);
  const auto effects = povm.enumerate_effects();
  ASSERT_EQ(effects.size(), 10u);
  EXPECT_LE(max_abs_difference(effects.back(), pi0_oracle(3, 5)), 0.0);
  EXPECT_LE(max_abs_difference(effects[5], povm_element_oracle(3, {1, 2}, 5)), 1e-15);
}

TEST(PhotonCounting, ClosedForm) {
  EXPECT_DOUBLE_EQ(photon_counting_discord(0.0), 0.0);
  EXPECT_NEAR(photon_counting_discord(0.5), 0.34657359, 1e-8);
  EXPECT_CVW_ERROR(photon_counting_discord(1.0), ParamOutOfRange);
}

TEST(PhotonCounting, NumericFockProjectorRoute) {
  const auto rho = build_rho_q_pt_cutoff(0.5, 200);
  EXPECT_NEAR(photon_counting_discord_numeric(rho), 0.5 * kLn2, 1e-4);
}

TEST(PhotonCounting, NumericRouteEqualsExplicitFockEffects) {
  const int cutoff = 20;
  const auto rho = build_rho_q_pt_cutoff(0.3, cutoff);
  std::vector<SingleModeOperator> effects;
  for (int k = 0; k < cutoff; ++k) effects.push_back(SingleModeOperator::projector(SingleModeVector::basis(cutoff, k)));
  EXPECT_NEAR(measurement_dependent_discord(rho, effects), photon_counting_discord_numeric(rho), 1e-12);
}

TEST(GlobalEntropy, ClosedFormAgainstEigendecomposition) {
  EXPECT_DOUBLE_EQ(global_entropy_closed(0.0), 0.0);
  for (double l : {0.2, 0.5, 0.8}) {
    EXPECT_NEAR(global_entropy_closed(l), von_neumann_entropy(build_rho_q_pt_cutoff(l, 300)), 1e-8) << l;
  }
  EXPECT_CVW_ERROR(global_entropy_closed(-0.1), ParamOutOfRange);
}

TEST(GlobalEntropy, StrictlyIncreasing) {
  double previous = global_entropy_closed(0.1);
  for (int k = 2; k <= 9; ++k) {
    const double now = global_entropy_closed(0.1 * k);
    EXPECT_GT(now, previous);
    previous = now;
  }
}

TEST(LocalEntropy, ClosedFormAgainstReducedState) {
  EXPECT_DOUBLE_EQ(local_entropy_closed(0.0), 0.0);
  for (double l : {0.2, 0.5, 0.8}) {
    const auto reduced = partial_trace(build_rho_q_pt_cutoff(l, 300), Subsystem::B);
    EXPECT_NEAR(local_entropy_closed(l), von_neumann_entropy(reduced), 1e-8) << l;
  }
  EXPECT_NEAR(local_entropy_closed(0.5, 500), local_entropy_closed(0.5, 1000), 1e-12);
  EXPECT_CVW_ERROR(local_entropy_closed(0.5, 0), ParamOutOfRange);
}

TEST(ConditionalState, VacuumLimitAndStructure) {
  const auto v = conditional_state_nvec(0.0, 3, 6);
  EXPECT_NEAR(v(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(v.trace().real(), 1.0, 1e-15);

  const double l = 0.4;
  const int n = 4, cutoff = 12;
  const auto c = conditional_state_nvec(l, n, cutoff);
  // Removing the diagonal leaves an off-diagonal part of the rank-one |v><v|, v_m = l^m for m < N.
  const double scale = c(0, 1).real() / l;
  for (int a = 0; a < cutoff; ++a)
    for (int b = 0; b < cutoff; ++b) {
      if (a == b) continue;
      const double expected = (a < n && b < n) ? scale * std::pow(l, a + b) : 0.0;
      EXPECT_NEAR(std::abs(c(a, b) - expected), 0.0, 1e-15);
    }
  EXPECT_CVW_ERROR(conditional_state_nvec(0.5, 5, 4), CutoffTooSmall);
}

TEST(ConditionalState, TraceAtSweepParameters) {
  const auto c = conditional_state_nvec(0.4, 30, 500);
  EXPECT_NEAR(c.trace().real(), 1.0, 1e-10);
  EXPECT_GE(eigenvalues_hermitian(c, {}, EigenMethod::Dense).min(), -1e-12);
}

TEST(ConditionalState, MatchesTraceOverEveryOutcome) {
  const double l = 0.45;
  const int n = 3, cutoff = 60;
  const auto rho = build_rho_q_pt_cutoff(l, cutoff);
  const auto rep = conditional_state_nvec(l, n, cutoff);
  const double s_rep = von_neumann_entropy(rep);
  for (const std::vector<int>& digits : {std::vector<int>{0, 0}, {1, 2}, {2, 1}}) {
    const auto unnorm = conditional_on_b(rho, povm_element_oracle(n, digits, cutoff));
    const double p = unnorm.trace().real();
    EXPECT_NEAR(p, outcome_probability(l, n), 1e-12);
    const SingleModeOperator normalised(unnorm.matrix() / p);
    EXPECT_NEAR(von_neumann_entropy(normalised), s_rep, 1e-10);
    if (digits == std::vector<int>{0, 0}) {
      EXPECT_LE(max_abs_difference(normalised, rep), 1e-12);
    }
  }
}

TEST(OutcomeProbability, KnownValues) {
  for (int n : {2, 3, 5}) {
    const double count = n == 2 ? 4.0 : std::pow(n, n - 1);
    EXPECT_NEAR(outcome_probability(0.0, n), 1.0 / count, 1e-16);
  }
  EXPECT_NEAR(outcome_probability_total(0.5, 4), 1.0 - pi0_probability(0.5, 4), 1e-12);
  EXPECT_NEAR(64.0 * outcome_probability(0.5, 4), 1.0 - pi0_probability(0.5, 4), 1e-12);
}

TEST(OutcomeProbability, BruteForceTrace) {
  const double l = 0.6;
  const auto rho = build_rho_q_pt_cutoff(l, 100);
  const auto c = conditional_on_b(rho, povm_element_oracle(3, {1, 2}, 100));
  EXPECT_NEAR(c.trace().real(), outcome_probability(l, 3), 1e-10);
  const double k = boundary_k(l);
  const double closed = k / 9.0 * ((1 - std::pow(l, 6)) / (1 - l * l) + (1 - std::pow(l, 3)) / std::pow(1 - l, 2));
  EXPECT_NEAR(outcome_probability(l, 3), closed, 1e-15);
}

TEST(OutcomeProbability, BookkeepingAcrossGrid) {
  for (double l = 0.05; l < 0.99; l += 0.1) {
    for (int n : {2, 3, 7, 15, 30, 60}) {
      EXPECT_NEAR(outcome_probability_total(l, n) + pi0_probability(l, n), 1.0, 1e-12) << l << " " << n;
    }
  }
}

TEST(Pi0Probability, KnownValues) {
  EXPECT_DOUBLE_EQ(pi0_probability(0.0, 3), 0.0);
  EXPECT_NEAR(pi0_probability(0.5, 2), 0.203125, 1e-15);
  double previous = pi0_probability(0.7, 2);
  for (int n = 3; n < 40; ++n) {
    const double now = pi0_probability(0.7, n);
    EXPECT_LT(now, previous);
    previous = now;
  }
  EXPECT_LT(previous, 1e-5);
}

TEST(Pi0Spectrum, SumsToOne) {
  for (double l : {0.2, 0.5, 0.8}) {
    const auto f = pi0_conditional_spectrum(l, 3, 2000);
    double total = 0.0;
    for (double v : f) total += v;
    EXPECT_NEAR(total, 1.0, 1e-12) << l;
  }
}

TEST(Pi0Spectrum, MatchesConditionalStateDiagonal) {
  const double l = 0.5;
  const int n = 3, cutoff = 300;
  const auto unnorm = conditional_on_b(build_rho_q_pt_cutoff(l, cutoff), pi0_oracle(n, cutoff));
  const double p0 = unnorm.trace().real();
  EXPECT_NEAR(p0, pi0_probability(l, n), 1e-12);
  for (int a = 0; a < 40; ++a) {
    EXPECT_NEAR(unnorm(a, a).real() / p0, pi0_conditional_eigenvalue(l, n, a), 1e-10) << a;
    for (int b = 0; b < 40; ++b) {
      if (a != b) {
        EXPECT_EQ(std::abs(unnorm(a, b)), 0.0);
      }
    }
  }
  const auto assembled = pi0_conditional_state(l, n, cutoff);
  for (int a = 0; a < cutoff; ++a) EXPECT_NEAR(assembled(a, a).real(), pi0_conditional_eigenvalue(l, n, a), 1e-12);
}

TEST(Pi0Spectrum, ClosedFormBranches) {
  const double l = 0.5;
  const int n = 3;
  const double scale = 1.0 / (pi0_probability(l, n) / boundary_k(l));
  EXPECT_NEAR(pi0_conditional_eigenvalue(l, n, 1), scale * std::pow(l, n) * l / (1 - l), 1e-15);
  EXPECT_NEAR(pi0_conditional_eigenvalue(l, n, 4), scale * (std::pow(l, 8) + std::pow(l, n) * std::pow(l, 4) / (1 - l)),
              1e-15);
  EXPECT_CVW_ERROR(pi0_conditional_eigenvalue(0.0, 3, 0), DegenerateOutcome);
  EXPECT_CVW_ERROR(pi0_conditional_eigenvalue(0.5, 3, -1), ParamOutOfRange);
}

TEST(PovmDiscord, ReportFields) {
  const auto r = povm_discord(0.3, 5, 100, 200);
  EXPECT_EQ(r.n_levels, 5);
  EXPECT_EQ(r.cutoff, 100);
  EXPECT_EQ(r.series_terms, 200);
  EXPECT_DOUBLE_EQ(r.discord_photon, 0.3 * kLn2);
  EXPECT_DOUBLE_EQ(r.delta, r.discord_povm - r.discord_photon);
  EXPECT_GE(r.p_zero, 0.0);
  EXPECT_LE(r.p_zero, 1.0);
  EXPECT_NEAR(r.p_outcome, outcome_probability(0.3, 5), 1e-16);
  EXPECT_NEAR(r.s_global, global_entropy_closed(0.3), 1e-16);
  EXPECT_TRUE(std::isfinite(r.discord_povm));
  EXPECT_CVW_ERROR(povm_discord(0.0, 3, 10), ParamOutOfRange);
  EXPECT_CVW_ERROR(povm_discord(0.5, 10, 5), CutoffTooSmall);
}

TEST(PovmDiscord, DeltaSignsAtSweepParameters) {
  EXPECT_LT(povm_discord(0.2, 30, 500, 500).delta, 0.0);
  EXPECT_GT(povm_discord(0.6, 30, 500, 500).delta, 0.0);
}

TEST(PovmDiscord, FastRouteEqualsFullEnumerationAtSmallN) {
  const int n = 3, cutoff = 100;
  const PhasePovm povm(n, cutoff);
  const auto effects = povm.enumerate_effects();
  for (double l : {0.2, 0.5, 0.7}) {
    const auto rho = build_rho_q_pt_cutoff(l, cutoff);
    EXPECT_NEAR(measurement_dependent_discord(rho, effects), povm_discord(l, n, cutoff).discord_povm, 1e-8) << l;
  }
}

TEST(PovmDiscord, SweepPreservesOrder) {
  const std::vector<double> grid{0.7, 0.1, 0.4, 0.25};
  const auto rows = discord_sweep(grid, 6, 80, 100);
  ASSERT_EQ(rows.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(rows[i].lambda, grid[i]);
    EXPECT_EQ(rows[i].delta, povm_discord(grid[i], 6, 80, 100).delta);
  }
}

TEST(Threshold, CrossoverValue) {
  const double th = find_threshold(30, 500, 500, {0.3, 0.5});
  EXPECT_NEAR(th, 0.389, 0.005);
}

TEST(Threshold, NoSignChangeAboveThreshold) {
  EXPECT_CVW_ERROR(find_threshold(30, 500, 500, {0.6, 0.9}), NoSignChange);
  EXPECT_CVW_ERROR(find_threshold(30, 500, 500, {0.5, 0.3}), ParamOutOfRange);
}

TEST(Threshold, StableUnderCutoffIncrease) {
  const double a = find_threshold(30, 500, 500, {0.3, 0.5});
  const double b = find_threshold(30, 800, 500, {0.3, 0.5});
  EXPECT_LT(std::abs(a - b), 1e-3);
}

}  // namespace
}  // namespace cvwerner
