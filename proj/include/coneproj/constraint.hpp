#ifndef CONEPROJ_CONSTRAINT_HPP
#define CONEPROJ_CONSTRAINT_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coneproj/errors.hpp"

namespace coneproj {

// Input data: strictly increasing abscissae x and ordinates phi, n >= 3.
struct DataSet {
  std::vector<double> x;
  std::vector<double> phi;

  std::size_t n() const { return x.size(); }
};

struct AbscissaeCheck {
  bool ok = true;
  // Set when !ok: either the count (too short) or the 1-based index of the
  // first ordering violation.
  enum class Failure { None, TooShort, NotIncreasing } failure = Failure::None;
  std::size_t value = 0;
};

// Succeeds iff x has length >= 3 and is strictly increasing.
AbscissaeCheck validate_abscissae(std::span<const double> x);

// Throws TooShortError / NotIncreasingError on failure.
void require_valid_abscissae(std::span<const double> x);

enum class SpacingKind { General, Equispaced };

// The (n-2) x n convexity constraint matrix: row i (1-based) has exactly 3
// contiguous nonzeros at columns i, i+1, i+2.  Stored banded; row products
// cost O(n).  Entries follow the second-difference pattern
//   (x_{i+2}-x_{i+1},  x_i-x_{i+2},  x_{i+1}-x_i)
// for general spacing, or (1, -2, 1) when equispaced.
class ConstraintMatrix {
 public:
  // General-spacing matrix built from strictly increasing abscissae.
  static ConstraintMatrix general(std::span<const double> x);

  // Equal-spacing matrix with rows (1, -2, 1); requires n >= 3.
  static ConstraintMatrix equispaced(std::size_t n);

  // Entrywise negation (R = -A).  Involution.
  ConstraintMatrix negated() const;

  std::size_t rows() const { return bands_.size(); }  // m = n - 2
  std::size_t cols() const { return n_; }
  SpacingKind spacing_kind() const { return kind_; }

  // Nonzeros of 1-based row i; they sit at columns i, i+1, i+2 (1-based).
  const std::array<double, 3>& band(std::size_t i) const {
    return bands_[i - 1];
  }

  // Dense entry (1-based row and column); zero outside the band.
  double entry(std::size_t i, std::size_t j) const;

  // Dense copy of 1-based row i, length n.
  std::vector<double> row_dense(std::size_t i) const;

  // Dense m x n copy, row-major.
  std::vector<std::vector<double>> dense() const;

  // out = M * y, O(n).
  void apply(std::span<const double> y, std::vector<double>& out) const;
  std::vector<double> apply(std::span<const double> y) const;

  // <row_i, y> for 1-based i, O(1).
  double row_dot(std::size_t i, std::span<const double> y) const;

 private:
  ConstraintMatrix(std::size_t n, SpacingKind kind,
                   std::vector<std::array<double, 3>> bands)
      : n_(n), kind_(kind), bands_(std::move(bands)) {}

  std::size_t n_ = 0;
  SpacingKind kind_ = SpacingKind::Equispaced;
  std::vector<std::array<double, 3>> bands_;
};

}  // namespace coneproj

#endif  // CONEPROJ_CONSTRAINT_HPP
