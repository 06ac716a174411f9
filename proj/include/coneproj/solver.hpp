#ifndef CONEPROJ_SOLVER_HPP
#define CONEPROJ_SOLVER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coneproj/constraint.hpp"
#include "coneproj/gram_schmidt.hpp"

namespace coneproj {

struct SolverConfig {
  double eps1 = 1e-9;   // violation tolerance: exit when max(R y) <= eps1
  double eps2 = 1e-12;  // stagnation tolerance on ||b - b_old||_1
  // Cap on |J|; defaults to n-2 (all constraints) when unset.
  std::optional<std::size_t> max_additions;
  bool trace = false;
  // Multiply both tolerances by max(1, ||phi||_inf) so the solver is
  // scale-equivariant; switch off for the absolute tolerances.
  bool scale_tolerances = true;
  // Debug mode: rebuild the basis from the sorted index set every iteration
  // instead of extending it by the newly added row.  Same span, different
  // column order; projections agree to rounding.
  bool rebuild_basis = false;
};

enum class SolveStatus {
  AlreadyConvex,
  ViolationCleared,
  Stagnated,
  IndexRepeated,
  AdditionCapReached,
};

std::string to_string(SolveStatus s);
SolveStatus status_from_string(const std::string& s);

// One record per selection event: the b = R y vector examined, the selected
// maximum s at 1-based index i, whether that index was inserted into J, the
// index set after the event, and the projection split that followed an
// insertion (empty vectors for terminating events).
struct TraceRecord {
  std::vector<double> b;
  double s = 0.0;
  std::size_t i = 0;
  bool inserted = false;
  std::vector<std::size_t> J;
  std::vector<double> rho;
  std::vector<double> y;
};

struct SolveDiagnostics {
  double max_violation = 0.0;      // s at exit
  double min_feasibility = 0.0;    // min(A y)
  double orthogonality = 0.0;      // <y, rho>
  bool solution_check_passed = false;  // |<y, rho>| <= eps1 * scale
};

struct ProjectionResult {
  std::vector<double> y;
  std::vector<double> rho;
  std::vector<std::size_t> J;  // sorted ascending, 1-based
  SolveStatus status = SolveStatus::AlreadyConvex;
  std::size_t iterations = 0;  // projection steps performed
  SolveDiagnostics diagnostics;
  std::vector<TraceRecord> trace;  // populated when cfg.trace
};

// True iff every entry of R phi is <= eps1, i.e. A phi >= -eps1.
bool check_convex(std::span<const double> phi, const ConstraintMatrix& R,
                  double eps1);

// Maximum entry of b and its 1-based index; ties break to the smallest index.
std::pair<double, std::size_t> select_max_violation(std::span<const double> b);

// Projects phi onto {y : A y >= 0} by iteratively inserting the most
// violated constraint row and re-projecting onto the orthogonal complement
// of the selected rows' span.  Indices are only ever added.
ProjectionResult solve(std::span<const double> phi, const ConstraintMatrix& A,
                       const SolverConfig& cfg = {});

struct KktDiagnostics {
  double min_feasibility = 0.0;  // min(A y)
  double orthogonality = 0.0;    // <y, rho>
  double reconstruction = 0.0;   // ||(y + rho) - phi||_inf
};

KktDiagnostics kkt_diagnostics(std::span<const double> phi,
                               std::span<const double> y,
                               std::span<const double> rho,
                               const ConstraintMatrix& A);

// Effective tolerance scale: max(1, ||phi||_inf) when scaling is on, else 1.
double tolerance_scale(std::span<const double> phi, const SolverConfig& cfg);

}  // namespace coneproj

#endif  // CONEPROJ_SOLVER_HPP
