#ifndef CONEPROJ_GRAM_SCHMIDT_HPP
#define CONEPROJ_GRAM_SCHMIDT_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "coneproj/constraint.hpp"
#include "coneproj/errors.hpp"

namespace coneproj {

inline constexpr double kDefaultRankTol = 1e-10;

// Orthonormal columns spanning (a subset of) the source columns they were
// built from.  Built by modified Gram-Schmidt with one full
// reorthogonalization pass, so the orthogonality bound holds even for
// nearly dependent sources.
//
// `mix` records, for every retained source column, its coefficients over
// cols[0..j]:  source_j = sum_l mix[j][l] * cols[l]  (upper triangular, the
// diagonal mix[j][j] > 0 is the residual norm).  This is what lets a caller
// recover coefficients in the original columns by back-substitution without
// ever forming a pseudo-inverse.
struct OrthonormalBasis {
  std::size_t dim = 0;                      // length of each column (n)
  std::vector<std::vector<double>> cols;    // retained, orthonormal
  std::vector<std::size_t> source_indices;  // labels of retained sources
  std::vector<std::size_t> dropped;         // labels of dropped sources
  std::vector<std::vector<double>> mix;     // per retained source, length j+1

  std::size_t size() const { return cols.size(); }
  bool empty() const { return cols.empty(); }
};

// mu = V^T phi (diagnostic), rho = V mu (component in span V),
// y = phi - rho (the orthogonal residual).
struct ProjectionSplit {
  std::vector<double> mu;
  std::vector<double> rho;
  std::vector<double> y;
};

// Appends one source column to the basis.  Returns true when retained,
// false when dropped as dependent (residual norm below rank_tol times the
// column's original norm).
bool extend(OrthonormalBasis& basis, std::span<const double> col,
            std::size_t label, double rank_tol = kDefaultRankTol);

// Orthonormalizes the given columns in order.  Labels default to 1..k.
// Throws EmptyBasisError when every column is dropped.
OrthonormalBasis orthonormalize(const std::vector<std::vector<double>>& columns,
                                double rank_tol = kDefaultRankTol);
OrthonormalBasis orthonormalize(const std::vector<std::vector<double>>& columns,
                                const std::vector<std::size_t>& labels,
                                double rank_tol = kDefaultRankTol);

// Basis over the rows of M (given 1-based row indices) taken as columns.
OrthonormalBasis orthonormalize_rows(const ConstraintMatrix& M,
                                     const std::vector<std::size_t>& row_indices,
                                     double rank_tol = kDefaultRankTol);

// Orthogonal projection of phi onto span(V), split as phi = y + rho.
ProjectionSplit project(const OrthonormalBasis& basis,
                        std::span<const double> phi);

}  // namespace coneproj

#endif  // CONEPROJ_GRAM_SCHMIDT_HPP
