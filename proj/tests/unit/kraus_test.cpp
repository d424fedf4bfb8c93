#include "cvwerner/kraus.hpp"

#include <cmath>

#include "cvwerner/separability.hpp"
#include "cvwerner/werner.hpp"
#include "test_support.hpp"

namespace cvwerner {
namespace {

// rho~_{q,2} = rho_{q,2} / K_2 written out entry by entry:
// sum_{m,n<2} l^{m+n} |m,m><n,n| + sum_{m,n<2} l^{m+n} |m,n><m,n|.
Eigen::Matrix4cd state_oracle(double l) {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      s(m * 2 + m, n * 2 + n) += std::pow(l, m + n);
      s(m * 2 + n, m * 2 + n) += std::pow(l, m + n);
    }
  return s;
}

Eigen::Matrix4cd subtracted_oracle(double l) {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(0, 0) = 1.0;
  s(3, 3) = l * l;
  return s;
}

class KrausN2 : public ::testing::TestWithParam<double> {};

TEST_P(KrausN2, RankBookkeeping) {
  const auto trace = kraus_n2_decompose(GetParam());
  EXPECT_EQ(trace.rank_state_before, 4);
  EXPECT_EQ(trace.rank_pt_before, 3);
  EXPECT_EQ(trace.rank_state_before + trace.rank_pt_before, 7);
  EXPECT_EQ(trace.rank_state_after, 3);
  EXPECT_EQ(trace.rank_pt_after, 3);
  EXPECT_LE(trace.rank_state_after + trace.rank_pt_after, 6);
}

TEST_P(KrausN2, KernelsAnnihilateTheReducedOperators) {
  const double l = GetParam();
  const auto trace = kraus_n2_decompose(l);
  const Eigen::Matrix4cd rest = state_oracle(l) - subtracted_oracle(l);
  const Eigen::Matrix4cd rest_pt = testing::dense_partial_transpose_a(rest, 2, 2);
  EXPECT_NEAR(trace.kernel_psi1.norm(), 1.0, 1e-12);
  EXPECT_NEAR(trace.kernel_psi2.norm(), 1.0, 1e-12);
  EXPECT_LE((rest * trace.kernel_psi1).norm(), 1e-12);
  EXPECT_LE((rest_pt * trace.kernel_psi2).norm(), 1e-12);
}

TEST_P(KrausN2, RootsSatisfyModulusCondition) {
  const double l = GetParam();
  const auto trace = kraus_n2_decompose(l);
  EXPECT_NEAR(trace.root_modulus * trace.root_modulus * l, 1.0, 1e-10);
  const auto& p1 = trace.kernel_psi1;
  const auto& p2 = trace.kernel_psi2;
  for (const Complex alpha : trace.roots) {
    EXPECT_NEAR(std::norm(alpha) * l, 1.0, 1e-10);
    // M(alpha) rebuilt from the kernels: rows alpha <psi1|0,.> + <psi1|1,.> and alpha* <psi2|0,.> + <psi2|1,.>.
    Eigen::Matrix2cd m;
    m(0, 0) = alpha * std::conj(p1(0)) + std::conj(p1(2));
    m(0, 1) = alpha * std::conj(p1(1)) + std::conj(p1(3));
    m(1, 0) = std::conj(alpha) * std::conj(p2(0)) + std::conj(p2(2));
    m(1, 1) = std::conj(alpha) * std::conj(p2(1)) + std::conj(p2(3));
    EXPECT_NEAR(std::abs(m.determinant()), 0.0, 1e-10);
  }
  EXPECT_NEAR(std::abs(trace.det_linear_coeff), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(trace.det_conj_linear_coeff), 0.0, 1e-12);
}

TEST_P(KrausN2, ProductVectorsAreQuarterTurnPhaseVectors) {
  const double l = GetParam();
  const auto trace = kraus_n2_decompose(l);
  ASSERT_EQ(trace.product_vectors.size(), 4u);
  for (const auto& t : trace.product_vectors) {
    EXPECT_GT(t.weight, 0.0);
    // (alpha|0> + |1>) is proportional to |0> + sqrt(l) e^{-i phi} |1>.
    const Complex ratio_a = t.ket_a[1] / t.ket_a[0];
    const Complex ratio_b = t.ket_b[1] / t.ket_b[0];
    EXPECT_NEAR(std::abs(ratio_a), std::sqrt(l), 1e-10);
    EXPECT_NEAR(std::abs(ratio_b), std::sqrt(l), 1e-10);
    // |f> carries the conjugate phase of the A factor's ratio after conj on A.
    EXPECT_NEAR(std::abs(std::conj(ratio_a) - ratio_b), 0.0, 1e-10);
  }
}

TEST_P(KrausN2, CertificateReproducesBoundaryPartialTranspose) {
  const double l = GetParam();
  const auto trace = kraus_n2_decompose(l);
  EXPECT_LE(trace.reconstruction_max_error, 1e-10);
  EXPECT_LE(trace.decomposition.reconstruction_error, 1e-10);
  const auto target = (1.0 / boundary_normalization(l, 2)) * build_boundary_pt(l, 2);
  EXPECT_LE(max_abs_difference(trace.decomposition.reconstruct(), target), 1e-10);
  EXPECT_GE(trace.decomposition.min_weight(), -1e-12);
  // Regrouped, the same operator is D^(2).
  EXPECT_LE(max_abs_difference(trace.decomposition.reconstruct(),
                               build_d_operator(l, 2, DOperatorPath::Enumerated).op),
            1e-10);
}

INSTANTIATE_TEST_SUITE_P(Lambdas, KrausN2, ::testing::Values(0.1, 0.25, 0.5, 0.8));

TEST(KrausN2Example, QuarterLambdaModulus) {
  // |alpha|^2 lambda = 1 gives |alpha| = 2 at lambda = 0.25.
  EXPECT_NEAR(kraus_n2_decompose(0.25).root_modulus, 2.0, 1e-10);
}

TEST(KrausN2Example, RejectsEndpoints) {
  EXPECT_CVW_ERROR(kraus_n2_decompose(0.0), ParamOutOfRange);
  EXPECT_CVW_ERROR(kraus_n2_decompose(1.0), ParamOutOfRange);
}

TEST(NumericalRank, CountsNonzeroEigenvalues) {
  const std::vector<double> d{1.0, 1e-14, 0.5, 0.0};
  const auto x = tensor(SingleModeOperator::diagonal(d), SingleModeOperator::identity(1));
  EXPECT_EQ(numerical_rank(x), 2);
  EXPECT_EQ(numerical_rank(x, 1e-15), 3);
}

}  // namespace
}  // namespace cvwerner
