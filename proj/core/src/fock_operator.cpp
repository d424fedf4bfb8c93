#include "cvwerner/fock_operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvwerner/error.hpp"

namespace cvwerner {

namespace {

void require_positive_dim(int dim, const char* what) {
  if (dim < 1) {
    fail(ErrorCode::ParamOutOfRange, std::string(what) + " must be >= 1, got " + std::to_string(dim));
  }
}

void require_same_shape(const TwoModeOperator& a, const TwoModeOperator& b) {
  if (a.dim_a() != b.dim_a() || a.dim_b() != b.dim_b()) {
    fail(ErrorCode::DimensionMismatch,
         "two-mode operators " + std::to_string(a.dim_a()) + "x" + std::to_string(a.dim_b()) + " and " +
             std::to_string(b.dim_a()) + "x" + std::to_string(b.dim_b()));
  }
}

void require_same_shape(const SingleModeOperator& a, const SingleModeOperator& b) {
  if (a.dim() != b.dim()) {
    fail(ErrorCode::DimensionMismatch,
         "single-mode operators of dim " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SingleModeVector

SingleModeVector::SingleModeVector(int dim) {
  require_positive_dim(dim, "vector dim");
  amp_ = DenseVector::Zero(dim);
}

SingleModeVector::SingleModeVector(DenseVector amplitudes) : amp_(std::move(amplitudes)) {
  require_positive_dim(static_cast<int>(amp_.size()), "vector dim");
}

SingleModeVector SingleModeVector::basis(int dim, int k) {
  SingleModeVector v(dim);
  if (k < 0 || k >= dim) {
    fail(ErrorCode::ParamOutOfRange, "basis index " + std::to_string(k) + " outside dim " + std::to_string(dim));
  }
  v[k] = 1.0;
  return v;
}

// ---------------------------------------------------------------------------
// SingleModeOperator

SingleModeOperator::SingleModeOperator(int dim) {
  require_positive_dim(dim, "operator dim");
  m_ = DenseMatrix::Zero(dim, dim);
}

SingleModeOperator::SingleModeOperator(DenseMatrix entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols()) {
    fail(ErrorCode::DimensionMismatch, "single-mode operator must be square");
  }
  require_positive_dim(static_cast<int>(m_.rows()), "operator dim");
}

SingleModeOperator SingleModeOperator::identity(int dim) {
  require_positive_dim(dim, "operator dim");
  return SingleModeOperator(DenseMatrix(DenseMatrix::Identity(dim, dim)));
}

SingleModeOperator SingleModeOperator::diagonal(std::span<const double> values) {
  SingleModeOperator out(static_cast<int>(values.size()));
  for (std::size_t k = 0; k < values.size(); ++k) out.m_(k, k) = values[k];
  return out;
}

SingleModeOperator SingleModeOperator::projector(const SingleModeVector& v) {
  return SingleModeOperator(DenseMatrix(v.amplitudes() * v.amplitudes().adjoint()));
}

SingleModeOperator& SingleModeOperator::operator+=(const SingleModeOperator& other) {
  require_same_shape(*this, other);
  m_ += other.m_;
  return *this;
}

SingleModeOperator& SingleModeOperator::operator-=(const SingleModeOperator& other) {
  require_same_shape(*this, other);
  m_ -= other.m_;
  return *this;
}

SingleModeOperator& SingleModeOperator::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

SingleModeOperator operator+(SingleModeOperator a, const SingleModeOperator& b) { return a += b; }
SingleModeOperator operator-(SingleModeOperator a, const SingleModeOperator& b) { return a -= b; }
SingleModeOperator operator*(Complex s, SingleModeOperator a) { return a *= s; }

// ---------------------------------------------------------------------------
// TwoModeOperator

TwoModeOperator::TwoModeOperator(int dim_a, int dim_b) : dim_a_(dim_a), dim_b_(dim_b) {
  require_positive_dim(dim_a, "dim_a");
  require_positive_dim(dim_b, "dim_b");
  m_.resize(side(), side());
}

TwoModeOperator::TwoModeOperator(int dim_a, int dim_b, SparseMatrix entries)
    : dim_a_(dim_a), dim_b_(dim_b), m_(std::move(entries)) {
  require_positive_dim(dim_a, "dim_a");
  require_positive_dim(dim_b, "dim_b");
  if (m_.rows() != side() || m_.cols() != side()) {
    fail(ErrorCode::DimensionMismatch, "sparse matrix side " + std::to_string(m_.rows()) + " does not match " +
                                           std::to_string(dim_a) + "*" + std::to_string(dim_b));
  }
  drop_exact_zeros();
}

TwoModeOperator TwoModeOperator::from_dense(int dim_a, int dim_b, const DenseMatrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    fail(ErrorCode::DimensionMismatch, "dense matrix does not match two-mode dimensions");
  }
  SparseMatrix sparse = entries.sparseView(0.0, 0.0);
  return TwoModeOperator(dim_a, dim_b, std::move(sparse));
}

Complex TwoModeOperator::at(int m, int mu, int n, int nu) const {
  return m_.coeff(index(m, mu), index(n, nu));
}

Complex TwoModeOperator::trace() const {
  Complex sum = 0.0;
  for (int i = 0; i < side(); ++i) sum += m_.coeff(i, i);
  return sum;
}

double TwoModeOperator::max_abs_entry() const {
  double best = 0.0;
  for (int k = 0; k < m_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m_, k); it; ++it) best = std::max(best, std::abs(it.value()));
  }
  return best;
}

TwoModeOperator TwoModeOperator::adjoint() const {
  SparseMatrix adj = m_.adjoint();
  return TwoModeOperator(dim_a_, dim_b_, std::move(adj));
}

TwoModeOperator& TwoModeOperator::operator+=(const TwoModeOperator& other) {
  require_same_shape(*this, other);
  m_ += other.m_;
  drop_exact_zeros();
  return *this;
}

TwoModeOperator& TwoModeOperator::operator-=(const TwoModeOperator& other) {
  require_same_shape(*this, other);
  m_ -= other.m_;
  drop_exact_zeros();
  return *this;
}

TwoModeOperator& TwoModeOperator::operator*=(Complex s) {
  m_ *= s;
  drop_exact_zeros();
  return *this;
}

void TwoModeOperator::drop_exact_zeros() {
  m_.prune([](int, int, const Complex& v) { return v != Complex(0.0, 0.0); });
  m_.makeCompressed();
}

TwoModeOperator operator+(TwoModeOperator a, const TwoModeOperator& b) { return a += b; }
TwoModeOperator operator-(TwoModeOperator a, const TwoModeOperator& b) { return a -= b; }
TwoModeOperator operator*(Complex s, TwoModeOperator a) { return a *= s; }

double max_abs_difference(const TwoModeOperator& a, const TwoModeOperator& b) {
  require_same_shape(a, b);
  return (a - b).max_abs_entry();
}

double max_abs_difference(const SingleModeOperator& a, const SingleModeOperator& b) {
  require_same_shape(a, b);
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// TwoModeBuilder

TwoModeBuilder::TwoModeBuilder(int dim_a, int dim_b) : dim_a_(dim_a), dim_b_(dim_b) {
  require_positive_dim(dim_a, "dim_a");
  require_positive_dim(dim_b, "dim_b");
}

void TwoModeBuilder::add(int m, int mu, int n, int nu, Complex value) {
  if (m < 0 || n < 0 || m >= dim_a_ || n >= dim_a_ || mu < 0 || nu < 0 || mu >= dim_b_ || nu >= dim_b_) {
    fail(ErrorCode::ParamOutOfRange, "Fock index outside the builder dimensions");
  }
  if (value == Complex(0.0, 0.0)) return;
  triplets_.emplace_back(m * dim_b_ + mu, n * dim_b_ + nu, value);
}

void TwoModeBuilder::add_product(double weight, const SingleModeVector& ket_a, const SingleModeVector& ket_b) {
  if (ket_a.dim() != dim_a_ || ket_b.dim() != dim_b_) {
    fail(ErrorCode::DimensionMismatch, "product term dimensions do not match the builder");
  }
  for (int m = 0; m < dim_a_; ++m) {
    for (int n = 0; n < dim_a_; ++n) {
      const Complex a = weight * ket_a[m] * std::conj(ket_a[n]);
      if (a == Complex(0.0, 0.0)) continue;
      for (int mu = 0; mu < dim_b_; ++mu) {
        for (int nu = 0; nu < dim_b_; ++nu) add(m, mu, n, nu, a * ket_b[mu] * std::conj(ket_b[nu]));
      }
    }
  }
}

TwoModeOperator TwoModeBuilder::build() const {
  SparseMatrix m(dim_a_ * dim_b_, dim_a_ * dim_b_);
  m.setFromTriplets(triplets_.begin(), triplets_.end());
  return TwoModeOperator(dim_a_, dim_b_, std::move(m));
}

}  // namespace cvwerner
