#include "cvwerner/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cvwerner/error.hpp"

namespace cvwerner {

namespace {

// Largest side for which EigenMethod::Dense is allowed on a two-mode operator.
constexpr int kMaxDenseSide = 4096;

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

// Groups indices into connected components; each group is sorted and the
// groups are ordered by their smallest index.
std::vector<std::vector<int>> collect_components(DisjointSets& sets, int n) {
  std::vector<int> slot(n, -1);
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < n; ++i) {
    const int root = sets.find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[root]].push_back(i);
  }
  return groups;
}

HermitianBlock solve_block(std::vector<int> indices, const DenseMatrix& block) {
  HermitianBlock out;
  out.indices = std::move(indices);
  const auto n = block.rows();
  if (n == 1) {
    out.values = Eigen::VectorXd::Constant(1, block(0, 0).real());
    out.vectors = DenseMatrix::Identity(1, 1);
    return out;
  }
  if (block.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block.real());
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors().cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(block);
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
  }
  return out;
}

void require_hermitian(double defect, const Tolerances& tol) {
  if (defect > tol.hermitian) {
    fail(ErrorCode::NonHermitianInput,
         "max |x - x^dagger| = " + std::to_string(defect) + " exceeds " + std::to_string(tol.hermitian));
  }
}

Spectrum flatten(const std::vector<HermitianBlock>& blocks) {
  Spectrum s;
  for (const auto& b : blocks) s.values.insert(s.values.end(), b.values.data(), b.values.data() + b.values.size());
  std::sort(s.values.begin(), s.values.end());
  return s;
}

Spectrum dense_spectrum(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m, Eigen::EigenvaluesOnly);
  Spectrum s;
  s.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  return s;
}

double entropy_checked(const Spectrum& spectrum, double trace, const Tolerances& tol) {
  if (std::abs(trace - 1.0) > tol.trace) {
    fail(ErrorCode::NotAState, "trace " + std::to_string(trace) + " differs from 1 by more than " +
                                   std::to_string(tol.trace));
  }
  return entropy_of_spectrum(spectrum.values, tol);
}

}  // namespace

double Spectrum::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

double Spectrum::min() const {
  return values.empty() ? std::numeric_limits<double>::quiet_NaN() : values.front();
}

double Spectrum::max() const {
  return values.empty() ? std::numeric_limits<double>::quiet_NaN() : values.back();
}

TwoModeOperator tensor(const SingleModeOperator& a, const SingleModeOperator& b) {
  TwoModeBuilder builder(a.dim(), b.dim());
  for (int m = 0; m < a.dim(); ++m) {
    for (int n = 0; n < a.dim(); ++n) {
      const Complex av = a(m, n);
      if (av == Complex(0.0, 0.0)) continue;
      for (int mu = 0; mu < b.dim(); ++mu) {
        for (int nu = 0; nu < b.dim(); ++nu) builder.add(m, mu, n, nu, av * b(mu, nu));
      }
    }
  }
  return builder.build();
}

TwoModeOperator partial_transpose_a(const TwoModeOperator& x) {
  const int db = x.dim_b();
  std::vector<Eigen::Triplet<Complex, int>> triplets;
  triplets.reserve(x.nonzeros());
  const auto& m = x.matrix();
  for (int row = 0; row < m.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(m, row); it; ++it) {
      const int a_row = row / db, b_row = row % db;
      const int a_col = it.col() / db, b_col = it.col() % db;
      triplets.emplace_back(a_col * db + b_row, a_row * db + b_col, it.value());
    }
  }
  SparseMatrix out(x.side(), x.side());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return TwoModeOperator(x.dim_a(), x.dim_b(), std::move(out));
}

SingleModeOperator partial_trace(const TwoModeOperator& x, Subsystem keep) {
  const int db = x.dim_b();
  SingleModeOperator out(keep == Subsystem::A ? x.dim_a() : x.dim_b());
  const auto& m = x.matrix();
  for (int row = 0; row < m.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(m, row); it; ++it) {
      const int a_row = row / db, b_row = row % db;
      const int a_col = it.col() / db, b_col = it.col() % db;
      if (keep == Subsystem::A) {
        if (b_row == b_col) out(a_row, a_col) += it.value();
      } else if (a_row == a_col) {
        out(b_row, b_col) += it.value();
      }
    }
  }
  return out;
}

SingleModeOperator conditional_on_b(const TwoModeOperator& x, const SingleModeOperator& effect) {
  if (effect.dim() != x.dim_b()) {
    fail(ErrorCode::DimensionMismatch, "effect dim " + std::to_string(effect.dim()) + " vs dim_b " +
                                           std::to_string(x.dim_b()));
  }
  const int db = x.dim_b();
  SingleModeOperator out(x.dim_a());
  const auto& m = x.matrix();
  for (int row = 0; row < m.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(m, row); it; ++it) {
      const int a_row = row / db, b_row = row % db;
      const int a_col = it.col() / db, b_col = it.col() % db;
      out(a_row, a_col) += it.value() * effect(b_col, b_row);
    }
  }
  return out;
}

SingleModeOperator conditional_on_b_fock(const TwoModeOperator& x, int k) {
  if (k < 0 || k >= x.dim_b()) {
    fail(ErrorCode::ParamOutOfRange, "Fock index " + std::to_string(k) + " outside dim_b");
  }
  const int db = x.dim_b();
  SingleModeOperator out(x.dim_a());
  const auto& m = x.matrix();
  for (int a_row = 0; a_row < x.dim_a(); ++a_row) {
    const int row = a_row * db + k;
    for (SparseMatrix::InnerIterator it(m, row); it; ++it) {
      if (it.col() % db == k) out(a_row, it.col() / db) += it.value();
    }
  }
  return out;
}

double hermiticity_defect(const SingleModeOperator& x) {
  return (x.matrix() - x.matrix().adjoint()).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const TwoModeOperator& x) {
  double worst = 0.0;
  const auto& m = x.matrix();
  for (int row = 0; row < m.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(m, row); it; ++it) {
      worst = std::max(worst, std::abs(it.value() - std::conj(m.coeff(it.col(), row))));
    }
  }
  return worst;
}

std::vector<HermitianBlock> hermitian_blocks(const SingleModeOperator& x, const Tolerances& tol) {
  require_hermitian(hermiticity_defect(x), tol);
  const int n = x.dim();
  DisjointSets sets(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (x(i, j) != Complex(0.0, 0.0) || x(j, i) != Complex(0.0, 0.0)) sets.join(i, j);
    }
  }
  std::vector<HermitianBlock> blocks;
  for (auto& group : collect_components(sets, n)) {
    const auto k = static_cast<Eigen::Index>(group.size());
    DenseMatrix block(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      for (Eigen::Index c = 0; c < k; ++c) block(r, c) = x(group[r], group[c]);
    }
    // Average with the adjoint so the solver sees an exactly Hermitian input.
    block = 0.5 * (block + DenseMatrix(block.adjoint()));
    blocks.push_back(solve_block(std::move(group), block));
  }
  return blocks;
}

std::vector<HermitianBlock> hermitian_blocks(const TwoModeOperator& x, const Tolerances& tol) {
  require_hermitian(hermiticity_defect(x), tol);
  const auto& m = x.matrix();
  const int n = x.side();
  DisjointSets sets(n);
  for (int row = 0; row < m.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(m, row); it; ++it) sets.join(row, it.col());
  }
  std::vector<int> local(n, -1);
  std::vector<HermitianBlock> blocks;
  for (auto& group : collect_components(sets, n)) {
    const auto k = static_cast<Eigen::Index>(group.size());
    for (Eigen::Index r = 0; r < k; ++r) local[group[r]] = static_cast<int>(r);
    DenseMatrix block = DenseMatrix::Zero(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      for (SparseMatrix::InnerIterator it(m, group[r]); it; ++it) block(r, local[it.col()]) = it.value();
    }
    block = 0.5 * (block + DenseMatrix(block.adjoint()));
    blocks.push_back(solve_block(std::move(group), block));
  }
  return blocks;
}

Spectrum eigenvalues_hermitian(const SingleModeOperator& x, const Tolerances& tol, EigenMethod method) {
  if (method == EigenMethod::Dense) {
    require_hermitian(hermiticity_defect(x), tol);
    return dense_spectrum(0.5 * (x.matrix() + DenseMatrix(x.matrix().adjoint())));
  }
  return flatten(hermitian_blocks(x, tol));
}

Spectrum eigenvalues_hermitian(const TwoModeOperator& x, const Tolerances& tol, EigenMethod method) {
  if (method == EigenMethod::Dense) {
    if (x.side() > kMaxDenseSide) {
      fail(ErrorCode::ResourceLimit, "dense eigensolve refused for side " + std::to_string(x.side()));
    }
    require_hermitian(hermiticity_defect(x), tol);
    const DenseMatrix d = x.to_dense();
    return dense_spectrum(0.5 * (d + DenseMatrix(d.adjoint())));
  }
  return flatten(hermitian_blocks(x, tol));
}

double trace_norm(const SingleModeOperator& x, const Tolerances& tol) {
  double sum = 0.0;
  for (double v : eigenvalues_hermitian(x, tol).values) sum += std::abs(v);
  return sum;
}

double trace_norm(const TwoModeOperator& x, const Tolerances& tol) {
  double sum = 0.0;
  for (double v : eigenvalues_hermitian(x, tol).values) sum += std::abs(v);
  return sum;
}

double entropy_of_spectrum(std::span<const double> values, const Tolerances& tol) {
  double s = 0.0;
  for (double f : values) {
    if (f < -tol.clamp) {
      fail(ErrorCode::NotAState, "eigenvalue " + std::to_string(f) + " below -" + std::to_string(tol.clamp));
    }
    if (f > 0.0) s -= f * std::log(f);
  }
  return s;
}

double von_neumann_entropy(const SingleModeOperator& x, const Tolerances& tol) {
  return entropy_checked(eigenvalues_hermitian(x, tol), x.trace().real(), tol);
}

double von_neumann_entropy(const TwoModeOperator& x, const Tolerances& tol) {
  return entropy_checked(eigenvalues_hermitian(x, tol), x.trace().real(), tol);
}

}  // namespace cvwerner
