#pragma once

// Operators and vectors on truncated Fock spaces.
//
// A single mode truncated at `dim` levels is C^dim with |k> <-> index k.
// A two-mode space |m>_A (x) |mu>_B uses the A-major flat index
// m * dim_b + mu, so partial transposition on A is a block-index swap.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace cvwerner {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor, int>;

class SingleModeVector {
 public:
  explicit SingleModeVector(int dim);
  explicit SingleModeVector(DenseVector amplitudes);

  static SingleModeVector basis(int dim, int k);

  int dim() const noexcept { return static_cast<int>(amp_.size()); }
  Complex operator[](int k) const { return amp_(k); }
  Complex& operator[](int k) { return amp_(k); }

  double norm_squared() const { return amp_.squaredNorm(); }
  SingleModeVector conjugated() const { return SingleModeVector(amp_.conjugate()); }
  const DenseVector& amplitudes() const noexcept { return amp_; }

 private:
  DenseVector amp_;
};

class SingleModeOperator {
 public:
  explicit SingleModeOperator(int dim);
  explicit SingleModeOperator(DenseMatrix entries);

  static SingleModeOperator identity(int dim);
  static SingleModeOperator diagonal(std::span<const double> values);
  // |v><v|
  static SingleModeOperator projector(const SingleModeVector& v);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  Complex operator()(int row, int col) const { return m_(row, col); }
  Complex& operator()(int row, int col) { return m_(row, col); }

  Complex trace() const { return m_.trace(); }
  SingleModeOperator adjoint() const { return SingleModeOperator(DenseMatrix(m_.adjoint())); }
  const DenseMatrix& matrix() const noexcept { return m_; }

  SingleModeOperator& operator+=(const SingleModeOperator& other);
  SingleModeOperator& operator-=(const SingleModeOperator& other);
  SingleModeOperator& operator*=(Complex s);

 private:
  DenseMatrix m_;
};

SingleModeOperator operator+(SingleModeOperator a, const SingleModeOperator& b);
SingleModeOperator operator-(SingleModeOperator a, const SingleModeOperator& b);
SingleModeOperator operator*(Complex s, SingleModeOperator a);

class TwoModeOperator {
 public:
  TwoModeOperator(int dim_a, int dim_b);
  TwoModeOperator(int dim_a, int dim_b, SparseMatrix entries);

  static TwoModeOperator from_dense(int dim_a, int dim_b, const DenseMatrix& entries);

  int dim_a() const noexcept { return dim_a_; }
  int dim_b() const noexcept { return dim_b_; }
  int side() const noexcept { return dim_a_ * dim_b_; }
  int index(int m, int mu) const noexcept { return m * dim_b_ + mu; }

  // <m, mu| X |n, nu>
  Complex at(int m, int mu, int n, int nu) const;
  Complex trace() const;
  std::size_t nonzeros() const { return static_cast<std::size_t>(m_.nonZeros()); }
  double max_abs_entry() const;

  TwoModeOperator adjoint() const;
  const SparseMatrix& matrix() const noexcept { return m_; }
  DenseMatrix to_dense() const { return DenseMatrix(m_); }

  TwoModeOperator& operator+=(const TwoModeOperator& other);
  TwoModeOperator& operator-=(const TwoModeOperator& other);
  TwoModeOperator& operator*=(Complex s);

 private:
  void drop_exact_zeros();

  int dim_a_;
  int dim_b_;
  SparseMatrix m_;
};

TwoModeOperator operator+(TwoModeOperator a, const TwoModeOperator& b);
TwoModeOperator operator-(TwoModeOperator a, const TwoModeOperator& b);
TwoModeOperator operator*(Complex s, TwoModeOperator a);

// max over entries of |a - b|; dimensions must match.
double max_abs_difference(const TwoModeOperator& a, const TwoModeOperator& b);
double max_abs_difference(const SingleModeOperator& a, const SingleModeOperator& b);

// Accumulates entries (duplicates are summed) and emits a TwoModeOperator.
class TwoModeBuilder {
 public:
  TwoModeBuilder(int dim_a, int dim_b);

  void add(int m, int mu, int n, int nu, Complex value);
  // weight * |a><a| (x) |b><b|
  void add_product(double weight, const SingleModeVector& ket_a, const SingleModeVector& ket_b);
  void reserve(std::size_t entries) { triplets_.reserve(entries); }

  TwoModeOperator build() const;

 private:
  int dim_a_;
  int dim_b_;
  std::vector<Eigen::Triplet<Complex, int>> triplets_;
};

}  // namespace cvwerner
