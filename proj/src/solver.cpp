#include "coneproj/solver.hpp"

#include <algorithm>
#include <cmath>

#include "coneproj/vecops.hpp"

namespace coneproj {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::AlreadyConvex: return "AlreadyConvex";
    case SolveStatus::ViolationCleared: return "ViolationCleared";
    case SolveStatus::Stagnated: return "Stagnated";
    case SolveStatus::IndexRepeated: return "IndexRepeated";
    case SolveStatus::AdditionCapReached: return "AdditionCapReached";
  }
  return "Unknown";
}

SolveStatus status_from_string(const std::string& s) {
  if (s == "AlreadyConvex") return SolveStatus::AlreadyConvex;
  if (s == "ViolationCleared") return SolveStatus::ViolationCleared;
  if (s == "Stagnated") return SolveStatus::Stagnated;
  if (s == "IndexRepeated") return SolveStatus::IndexRepeated;
  if (s == "AdditionCapReached") return SolveStatus::AdditionCapReached;
  throw Error("unknown solve status: " + s);
}

bool check_convex(std::span<const double> phi, const ConstraintMatrix& R,
                  double eps1) {
  if (phi.size() != R.cols())
    throw DimensionMismatchError("R has " + std::to_string(R.cols()) +
                                 " columns, phi has " +
                                 std::to_string(phi.size()));
  for (std::size_t i = 1; i <= R.rows(); ++i) {
    if (R.row_dot(i, phi) > eps1) return false;
  }
  return true;
}

std::pair<double, std::size_t> select_max_violation(std::span<const double> b) {
  double s = b[0];
  std::size_t i = 0;
  for (std::size_t j = 1; j < b.size(); ++j) {
    if (b[j] > s) {
      s = b[j];
      i = j;
    }
  }
  return {s, i + 1};
}

double tolerance_scale(std::span<const double> phi, const SolverConfig& cfg) {
  if (!cfg.scale_tolerances) return 1.0;
  return std::max(1.0, norm_inf(phi));
}

namespace {

void validate_config(const SolverConfig& cfg, std::size_t m) {
  if (!(cfg.eps1 > 0.0)) throw InvalidConfigError("eps1 must be positive");
  if (!(cfg.eps2 > 0.0)) throw InvalidConfigError("eps2 must be positive");
  if (cfg.max_additions && (*cfg.max_additions < 1 || *cfg.max_additions > m))
    throw InvalidConfigError("max_additions must be in [1, n-2]");
}

void fill_diagnostics(ProjectionResult& res, const ConstraintMatrix& A,
                      double eps1_eff) {
  std::vector<double> ay = A.apply(res.y);
  res.diagnostics.min_feasibility = min_elem(ay);
  res.diagnostics.orthogonality = dot(res.y, res.rho);
  res.diagnostics.solution_check_passed =
      std::abs(res.diagnostics.orthogonality) <= eps1_eff;
}

}  // namespace

ProjectionResult solve(std::span<const double> phi, const ConstraintMatrix& A,
                       const SolverConfig& cfg) {
  const std::size_t n = A.cols();
  const std::size_t m = A.rows();
  if (phi.size() != n)
    throw DimensionMismatchError("A has " + std::to_string(n) +
                                 " columns, phi has " +
                                 std::to_string(phi.size()));
  validate_config(cfg, m);

  const double scale = tolerance_scale(phi, cfg);
  const double eps2 = cfg.eps2 * scale;
  const std::size_t cap = cfg.max_additions.value_or(m);

  // The eps1 acceptance gate scales with the candidate vector it accepts,
  // so that re-solving a returned y is always AlreadyConvex: the re-run
  // recomputes the same R y against the same threshold.
  auto eps1_for = [&](std::span<const double> candidate) {
    return cfg.eps1 * (cfg.scale_tolerances
                           ? std::max(1.0, norm_inf(candidate))
                           : 1.0);
  };

  const ConstraintMatrix R = A.negated();

  ProjectionResult res;
  std::vector<double> b = R.apply(phi);

  auto [s, i] = select_max_violation(b);
  if (s <= eps1_for(phi)) {
    // Convex fast path: rho = 0 and y = phi exactly.
    res.status = SolveStatus::AlreadyConvex;
    res.y.assign(phi.begin(), phi.end());
    res.rho.assign(n, 0.0);
    res.diagnostics.max_violation = s;
    fill_diagnostics(res, A, eps1_for(phi));
    return res;
  }

  // First projection: onto the single most violated row.
  res.J = {i};
  OrthonormalBasis basis;
  extend(basis, R.row_dense(i), i);
  ProjectionSplit split = project(basis, phi);
  res.iterations = 1;
  if (cfg.trace)
    res.trace.push_back({b, s, i, true, res.J, split.rho, split.y});

  // b_old starts shifted so the first stagnation test cannot fire.
  std::vector<double> b_old = b;
  for (double& v : b_old) v += eps2 + 1.0;

  while (true) {
    R.apply(split.y, b);
    std::tie(s, i) = select_max_violation(b);

    const bool repeated =
        std::binary_search(res.J.begin(), res.J.end(), i);
    if (s <= eps1_for(split.y)) {
      res.status = SolveStatus::ViolationCleared;
    } else if (repeated) {
      res.status = SolveStatus::IndexRepeated;
    } else {
      double diff1 = 0.0;
      for (std::size_t j = 0; j < b.size(); ++j)
        diff1 += std::abs(b[j] - b_old[j]);
      if (diff1 < eps2) {
        res.status = SolveStatus::Stagnated;
      } else if (res.J.size() >= cap) {
        res.status = SolveStatus::AdditionCapReached;
      } else {
        // Insert and re-project.
        res.J.insert(std::upper_bound(res.J.begin(), res.J.end(), i), i);
        if (cfg.rebuild_basis) {
          basis = orthonormalize_rows(R, res.J);
        } else {
          extend(basis, R.row_dense(i), i);
        }
        split = project(basis, phi);
        ++res.iterations;
        if (cfg.trace)
          res.trace.push_back({b, s, i, true, res.J, split.rho, split.y});
        b_old = b;
        continue;
      }
    }
    if (cfg.trace) res.trace.push_back({b, s, i, false, res.J, {}, {}});
    break;
  }

  res.y = std::move(split.y);
  res.rho = std::move(split.rho);
  res.diagnostics.max_violation = s;
  fill_diagnostics(res, A, eps1_for(res.y));
  return res;
}

KktDiagnostics kkt_diagnostics(std::span<const double> phi,
                               std::span<const double> y,
                               std::span<const double> rho,
                               const ConstraintMatrix& A) {
  if (y.size() != A.cols() || rho.size() != A.cols() || phi.size() != A.cols())
    throw DimensionMismatchError("kkt_diagnostics vector lengths");
  KktDiagnostics d;
  std::vector<double> ay = A.apply(y);
  d.min_feasibility = min_elem(ay);
  d.orthogonality = dot(y, rho);
  double rec = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k)
    rec = std::max(rec, std::abs((y[k] + rho[k]) - phi[k]));
  d.reconstruction = rec;
  return d;
}

}  // namespace coneproj
