#include "coneproj/gram_schmidt.hpp"

#include <cmath>

#include "coneproj/vecops.hpp"

namespace coneproj {

bool extend(OrthonormalBasis& basis, std::span<const double> col,
            std::size_t label, double rank_tol) {
  if (basis.dim == 0) basis.dim = col.size();
  if (col.size() != basis.dim)
    throw DimensionMismatchError("basis columns have length " +
                                 std::to_string(basis.dim) + ", new column " +
                                 std::to_string(col.size()));

  const double orig_norm = norm2(col);
  std::vector<double> w(col.begin(), col.end());
  std::vector<double> coeff(basis.size(), 0.0);

  // Modified Gram-Schmidt, then one full reorthogonalization pass.  The
  // second sweep restores orthogonality lost to cancellation when the new
  // column is nearly inside the current span.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double c = dot(w, basis.cols[j]);
      axpy(-c, basis.cols[j], w);
      coeff[j] += c;
    }
  }

  const double res_norm = norm2(w);
  if (res_norm <= rank_tol * orig_norm) {
    basis.dropped.push_back(label);
    return false;
  }

  for (double& v : w) v /= res_norm;
  basis.cols.push_back(std::move(w));
  basis.source_indices.push_back(label);
  coeff.push_back(res_norm);
  basis.mix.push_back(std::move(coeff));
  return true;
}

OrthonormalBasis orthonormalize(const std::vector<std::vector<double>>& columns,
                                const std::vector<std::size_t>& labels,
                                double rank_tol) {
  OrthonormalBasis basis;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    extend(basis, columns[j], labels[j], rank_tol);
  }
  if (basis.empty()) throw EmptyBasisError();
  return basis;
}

OrthonormalBasis orthonormalize(const std::vector<std::vector<double>>& columns,
                                double rank_tol) {
  std::vector<std::size_t> labels(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) labels[j] = j + 1;
  return orthonormalize(columns, labels, rank_tol);
}

OrthonormalBasis orthonormalize_rows(const ConstraintMatrix& M,
                                     const std::vector<std::size_t>& row_indices,
                                     double rank_tol) {
  std::vector<std::vector<double>> cols;
  cols.reserve(row_indices.size());
  for (std::size_t i : row_indices) cols.push_back(M.row_dense(i));
  return orthonormalize(cols, row_indices, rank_tol);
}

ProjectionSplit project(const OrthonormalBasis& basis,
                        std::span<const double> phi) {
  if (basis.empty()) throw EmptyBasisError();
  if (phi.size() != basis.dim)
    throw DimensionMismatchError("basis dimension " +
                                 std::to_string(basis.dim) + ", vector " +
                                 std::to_string(phi.size()));

  ProjectionSplit split;
  split.mu.resize(basis.size());
  split.rho.assign(basis.dim, 0.0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    split.mu[j] = dot(phi, basis.cols[j]);
    axpy(split.mu[j], basis.cols[j], split.rho);
  }
  split.y.resize(basis.dim);
  for (std::size_t i = 0; i < basis.dim; ++i) split.y[i] = phi[i] - split.rho[i];
  return split;
}

}  // namespace coneproj
