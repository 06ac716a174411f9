#ifndef CONEPROJ_RUN_RECORD_HPP
#define CONEPROJ_RUN_RECORD_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "coneproj/oracle.hpp"
#include "coneproj/simulate.hpp"
#include "coneproj/solver.hpp"

namespace coneproj {

inline constexpr int kRecordSchemaVersion = 1;

enum class OutputFormat { Json, Csv };

OutputFormat output_format_from_string(const std::string& s);

// Oracle cross-check attached to a run when --oracle is given.
struct CertificateEcho {
  KktCertificate certificate;
  double max_dev_from_solver = 0.0;  // ||y_solver - y_oracle||_inf
};

// Everything one projection run produced, ready for serialization.  All
// doubles are emitted with 17 significant digits, so emit -> parse is
// lossless for every numeric field.
struct RunRecord {
  std::string version;
  double eps1 = 0.0;
  double eps2 = 0.0;
  bool scale_tolerances = true;
  std::vector<double> x;
  std::vector<double> phi;
  std::string status;
  std::vector<double> y;
  std::vector<double> rho;
  std::vector<std::size_t> J;
  double s = 0.0;
  std::size_t iterations = 0;
  double min_feasibility = 0.0;
  double orthogonality = 0.0;
  double reconstruction = 0.0;
  bool solution_check_passed = false;
  bool has_trace = false;
  std::vector<TraceRecord> trace;
  std::optional<CertificateEcho> certificate;
  std::uint64_t wall_us = 0;
};

bool operator==(const RunRecord& a, const RunRecord& b);

std::string emit_record(const RunRecord& r, OutputFormat format);
RunRecord parse_record(const std::string& text, OutputFormat format);

// Simulation output.  Deliberately carries no worker count or timing:
// identical (plan, seed) must produce identical bytes at any parallelism.
struct SimulationRecord {
  std::string version;
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string engine;
  WeightEstimate estimate;
  std::optional<EngineComparison> comparison;  // engine "both" only
};

std::string emit_simulation(const SimulationRecord& r, OutputFormat format);

// Plot table: header "x,phi,y,rho" and one row per data point.
void write_plot_csv(std::ostream& out, const std::vector<double>& x,
                    const std::vector<double>& phi,
                    const std::vector<double>& y,
                    const std::vector<double>& rho);

// Shortest lossless decimal form used across all emitters.
std::string format_double(double v);

}  // namespace coneproj

#endif  // CONEPROJ_RUN_RECORD_HPP
