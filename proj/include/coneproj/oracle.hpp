#ifndef CONEPROJ_ORACLE_HPP
#define CONEPROJ_ORACLE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coneproj/constraint.hpp"

namespace coneproj {

// Enumeration guard: 2^m candidate subsets, kept instant at desk scale.
inline constexpr std::size_t kOracleMaxConstraints = 12;

// Shared tolerances (relative to max(1, ||phi||_inf) unless noted).
inline constexpr double kOracleActiveTol = 1e-8;   // active-set detection
inline constexpr double kOracleFeasTol = 1e-9;     // feasibility margin
inline constexpr double kOracleLambdaTol = 1e-10;  // multiplier sign (absolute)
inline constexpr double kOracleResidTol = 1e-9;    // representation, rel ||phi||_inf

// KKT certificate for a candidate projection y of phi onto {y : A y >= 0}.
// lambda_hat holds the coefficients of rho = phi - y over the negative rows
// of A indexed by J_star (half the Lagrange multipliers of the primal).
struct KktCertificate {
  std::vector<std::size_t> J_star;  // 1-based, sorted
  std::vector<double> lambda_hat;   // aligned with J_star, all >= 0
  double feasibility_margin = 0.0;  // min(A y)
  double representation_residual = 0.0;  // ||rho - (-A_J)^T lambda_hat||_inf
};

enum class RejectReason { Infeasible, NegativeMultiplier, BadRepresentation };

std::string to_string(RejectReason r);

struct VerifyOutcome {
  std::optional<KktCertificate> certificate;
  RejectReason reason = RejectReason::Infeasible;  // valid when rejected

  bool accepted() const { return certificate.has_value(); }
};

// phi minus its orthogonal projection onto span{rows of A indexed by J},
// i.e. the projection of phi onto the face {y : A_J y = 0}.  J is 1-based;
// the empty set returns phi unchanged.
std::vector<double> equality_project(std::span<const double> phi,
                                     const ConstraintMatrix& A,
                                     const std::vector<std::size_t>& J);

// Checks the KKT conditions for y as the projection of phi: feasibility,
// nonnegative multipliers over the detected active set, and representation
// of rho in the negative active rows.
VerifyOutcome verify_kkt(std::span<const double> phi, std::span<const double> y,
                         const ConstraintMatrix& A);

struct OracleResult {
  std::vector<double> y;
  KktCertificate certificate;
};

// Ground-truth projection by exhaustive enumeration of candidate active
// sets in order of increasing size; the first KKT-accepted candidate is the
// unique projection.  Throws TooLargeError when m > 12 and
// NoCertificateError if nothing is accepted (a tolerance bug by definition).
OracleResult oracle_project(std::span<const double> phi,
                            const ConstraintMatrix& A);

}  // namespace coneproj

#endif  // CONEPROJ_ORACLE_HPP
