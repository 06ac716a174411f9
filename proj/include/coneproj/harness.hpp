#ifndef CONEPROJ_HARNESS_HPP
#define CONEPROJ_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "coneproj/run_record.hpp"
#include "coneproj/simulate.hpp"

namespace coneproj {

// Exit codes of the batch interface.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitWeakSolution = 2;  // weak exit, solution check failed

struct ProjectOptions {
  std::string input_path;  // empty: read stdin
  bool equispaced = false;
  std::optional<double> eps1;
  std::optional<double> eps2;
  bool oracle = false;
  bool trace = false;
  OutputFormat format = OutputFormat::Json;
  std::string output_path;     // empty: write to `out`
  std::string plot_data_path;  // empty: no plot data
};

struct SimulateOptions {
  std::size_t n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  SimEngine engine = SimEngine::Solver;
  unsigned workers = 1;
  OutputFormat format = OutputFormat::Json;
  std::string output_path;  // empty: write to `out`
};

// Runs one projection: parse, solve, optional oracle cross-check, emit.
// Returns the process exit code; failures are reported on `err`.
int run_project(const ProjectOptions& opts, std::ostream& out,
                std::ostream& err);

// Runs a weight simulation and emits the estimate (plus a disagreement
// report when engine is "both").
int run_simulate(const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err);

// Diagnostic verbosity from the CONE_PROJ_LOG environment variable.
enum class LogLevel { Off = 0, Info = 1, Debug = 2 };
LogLevel log_level_from_env();

}  // namespace coneproj

#endif  // CONEPROJ_HARNESS_HPP
