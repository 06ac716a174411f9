#include "coneproj/constraint.hpp"

#include <utility>

namespace coneproj {

AbscissaeCheck validate_abscissae(std::span<const double> x) {
  AbscissaeCheck c;
  if (x.size() < 3) {
    c.ok = false;
    c.failure = AbscissaeCheck::Failure::TooShort;
    c.value = x.size();
    return c;
  }
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      c.ok = false;
      c.failure = AbscissaeCheck::Failure::NotIncreasing;
      c.value = i + 1;  // 1-based index of the offending entry
      return c;
    }
  }
  return c;
}

void require_valid_abscissae(std::span<const double> x) {
  const AbscissaeCheck c = validate_abscissae(x);
  if (c.ok) return;
  if (c.failure == AbscissaeCheck::Failure::TooShort) throw TooShortError(c.value);
  throw NotIncreasingError(c.value);
}

ConstraintMatrix ConstraintMatrix::general(std::span<const double> x) {
  require_valid_abscissae(x);
  const std::size_t n = x.size();
  std::vector<std::array<double, 3>> bands(n - 2);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    bands[i] = {x[i + 2] - x[i + 1], x[i] - x[i + 2], x[i + 1] - x[i]};
  }
  return ConstraintMatrix(n, SpacingKind::General, std::move(bands));
}

ConstraintMatrix ConstraintMatrix::equispaced(std::size_t n) {
  if (n < 3) throw TooShortError(n);
  std::vector<std::array<double, 3>> bands(n - 2, {1.0, -2.0, 1.0});
  return ConstraintMatrix(n, SpacingKind::Equispaced, std::move(bands));
}

ConstraintMatrix ConstraintMatrix::negated() const {
  std::vector<std::array<double, 3>> bands(bands_.size());
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    bands[i] = {-bands_[i][0], -bands_[i][1], -bands_[i][2]};
  }
  return ConstraintMatrix(n_, kind_, std::move(bands));
}

double ConstraintMatrix::entry(std::size_t i, std::size_t j) const {
  if (j < i || j > i + 2) return 0.0;
  return bands_[i - 1][j - i];
}

std::vector<double> ConstraintMatrix::row_dense(std::size_t i) const {
  std::vector<double> row(n_, 0.0);
  const auto& b = bands_[i - 1];
  row[i - 1] = b[0];
  row[i] = b[1];
  row[i + 1] = b[2];
  return row;
}

std::vector<std::vector<double>> ConstraintMatrix::dense() const {
  std::vector<std::vector<double>> out;
  out.reserve(rows());
  for (std::size_t i = 1; i <= rows(); ++i) out.push_back(row_dense(i));
  return out;
}

void ConstraintMatrix::apply(std::span<const double> y,
                             std::vector<double>& out) const {
  if (y.size() != n_)
    throw DimensionMismatchError("matrix has " + std::to_string(n_) +
                                 " columns, vector has " +
                                 std::to_string(y.size()) + " entries");
  out.resize(rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    const auto& b = bands_[i];
    out[i] = b[0] * y[i] + b[1] * y[i + 1] + b[2] * y[i + 2];
  }
}

std::vector<double> ConstraintMatrix::apply(std::span<const double> y) const {
  std::vector<double> out;
  apply(y, out);
  return out;
}

double ConstraintMatrix::row_dot(std::size_t i, std::span<const double> y) const {
  const auto& b = bands_[i - 1];
  return b[0] * y[i - 1] + b[1] * y[i] + b[2] * y[i + 1];
}

}  // namespace coneproj
