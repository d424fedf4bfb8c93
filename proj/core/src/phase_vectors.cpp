#include "cvwerner/phase_vectors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cvwerner/error.hpp"

namespace cvwerner {

namespace {

// Explicit enumeration beyond this many indices is refused.
constexpr std::uint64_t kMaxEnumeration = std::uint64_t{1} << 24;

void require_levels(int n_levels) {
  if (n_levels < 2) fail(ErrorCode::BadPhaseIndex, "n_levels must be >= 2, got " + std::to_string(n_levels));
}

int digit_radix(int n_levels) { return n_levels == 2 ? 4 : n_levels; }

}  // namespace

PhaseIndex::PhaseIndex(int n_levels, std::vector<int> digits) : n_levels_(n_levels), digits_(std::move(digits)) {
  require_levels(n_levels);
  if (static_cast<int>(digits_.size()) != n_levels - 1) {
    fail(ErrorCode::BadPhaseIndex, "expected " + std::to_string(n_levels - 1) + " digits, got " +
                                       std::to_string(digits_.size()));
  }
  const int radix = digit_radix(n_levels);
  for (int d : digits_) {
    if (d < 0 || d >= radix) {
      fail(ErrorCode::BadPhaseIndex, "digit " + std::to_string(d) + " outside {0.." + std::to_string(radix - 1) + "}");
    }
  }
}

PhaseIndex PhaseIndex::zero(int n_levels) {
  require_levels(n_levels);
  return PhaseIndex(n_levels, std::vector<int>(static_cast<std::size_t>(n_levels - 1), 0));
}

double PhaseIndex::angle(int level) const {
  if (level < 0 || level >= n_levels_) {
    fail(ErrorCode::BadPhaseIndex, "level " + std::to_string(level) + " outside the index range");
  }
  if (level == 0) return 0.0;
  return 2.0 * std::numbers::pi * digits_[level - 1] / digit_radix(n_levels_);
}

std::uint64_t phase_index_count(int n_levels) {
  require_levels(n_levels);
  if (n_levels == 2) return 4;
  std::uint64_t count = 1;
  for (int k = 0; k < n_levels - 1; ++k) {
    const auto radix = static_cast<std::uint64_t>(n_levels);
    if (count > std::numeric_limits<std::uint64_t>::max() / radix) return std::numeric_limits<std::uint64_t>::max();
    count *= radix;
  }
  return count;
}

void for_each_phase_index(int n_levels, const std::function<void(const PhaseIndex&)>& visit) {
  const std::uint64_t count = phase_index_count(n_levels);
  if (count > kMaxEnumeration) {
    fail(ErrorCode::ResourceLimit, "refusing to enumerate " + std::to_string(count) + " phase indices");
  }
  const int radix = digit_radix(n_levels);
  std::vector<int> digits(static_cast<std::size_t>(n_levels - 1), 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    visit(PhaseIndex(n_levels, digits));
    for (int pos = n_levels - 2; pos >= 0; --pos) {
      if (++digits[pos] < radix) break;
      digits[pos] = 0;
    }
  }
}

SingleModeVector q_vector(double lambda, int n_levels, const PhaseIndex& idx) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    fail(ErrorCode::ParamOutOfRange, "lambda must lie in [0,1), got " + std::to_string(lambda));
  }
  if (idx.n_levels() != n_levels) {
    fail(ErrorCode::BadPhaseIndex, "index built for " + std::to_string(idx.n_levels()) + " levels, need " +
                                       std::to_string(n_levels));
  }
  SingleModeVector v(n_levels);
  v[0] = 1.0;
  const double root = std::sqrt(lambda);
  double amp = 1.0;
  for (int j = 1; j < n_levels; ++j) {
    amp *= root;
    v[j] = std::polar(amp, idx.angle(j));
  }
  return v;
}

SingleModeVector q_tilde_vector(int n_levels, const PhaseIndex& idx, int dim) {
  if (idx.n_levels() != n_levels) {
    fail(ErrorCode::BadPhaseIndex, "index built for " + std::to_string(idx.n_levels()) + " levels");
  }
  if (dim < n_levels) {
    fail(ErrorCode::CutoffTooSmall, "dim " + std::to_string(dim) + " below n_levels " + std::to_string(n_levels));
  }
  SingleModeVector v(dim);
  for (int j = 0; j < n_levels; ++j) v[j] = std::polar(1.0, idx.angle(j));
  return v;
}

Complex phase_sum(int n_levels, int j, int k) {
  return phase_sum4(n_levels, j, 0, k, 0);
}

Complex phase_sum4(int n_levels, int j, int k, int l, int m) {
  for (int level : {j, k, l, m}) {
    if (level < 0 || level >= n_levels) {
      fail(ErrorCode::BadPhaseIndex, "level " + std::to_string(level) + " outside {0.." +
                                         std::to_string(n_levels - 1) + "}");
    }
  }
  Complex sum = 0.0;
  for_each_phase_index(n_levels, [&](const PhaseIndex& idx) {
    sum += std::polar(1.0, idx.angle(j) + idx.angle(k) - idx.angle(l) - idx.angle(m));
  });
  return sum;
}

}  // namespace cvwerner
