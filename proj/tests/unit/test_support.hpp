#pragma once

// Seeded random operators and brute-force dense oracles shared by the unit tests.

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cvwerner/error.hpp"
#include "cvwerner/fock_operator.hpp"

namespace cvwerner::testing {

inline std::mt19937& rng() {
  static std::mt19937 gen(12345);
  return gen;
}

inline DenseMatrix random_matrix(int n, std::mt19937& gen = rng()) {
  std::normal_distribution<double> g(0.0, 1.0);
  DenseMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = Complex(g(gen), g(gen));
  }
  return m;
}

inline DenseMatrix random_hermitian(int n, std::mt19937& gen = rng()) {
  const DenseMatrix m = random_matrix(n, gen);
  return 0.5 * (m + m.adjoint());
}

// Unit-trace positive matrix G G^dagger / tr.
inline DenseMatrix random_density(int n, std::mt19937& gen = rng()) {
  const DenseMatrix g = random_matrix(n, gen);
  DenseMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// <m,mu| out |n,nu> = <n,mu| x |m,nu>, by explicit loops on dense storage.
inline DenseMatrix dense_partial_transpose_a(const DenseMatrix& x, int da, int db) {
  DenseMatrix out(x.rows(), x.cols());
  for (int m = 0; m < da; ++m)
    for (int mu = 0; mu < db; ++mu)
      for (int n = 0; n < da; ++n)
        for (int nu = 0; nu < db; ++nu) out(m * db + mu, n * db + nu) = x(n * db + mu, m * db + nu);
  return out;
}

inline double dense_entropy(const DenseMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double f = solver.eigenvalues()(k);
    if (f > 0.0) s -= f * std::log(f);
  }
  return s;
}

inline double dense_min_eigenvalue(const DenseMatrix& x) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(x, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace cvwerner::testing

// Asserts that `stmt` throws cvwerner::Error with the given code.
#define EXPECT_CVW_ERROR(stmt, expected_code)                                 \
  do {                                                                        \
    try {                                                                     \
      stmt;                                                                   \
      ADD_FAILURE() << "expected " #expected_code " from " #stmt;             \
    } catch (const ::cvwerner::Error& e) {                                    \
      EXPECT_EQ(e.code(), ::cvwerner::ErrorCode::expected_code) << e.what();  \
    }                                                                         \
  } while (0)
