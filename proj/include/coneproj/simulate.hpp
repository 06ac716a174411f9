#ifndef CONEPROJ_SIMULATE_HPP
#define CONEPROJ_SIMULATE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coneproj/constraint.hpp"

namespace coneproj {

enum class SimEngine { Solver, Oracle, Both };

std::string to_string(SimEngine e);
SimEngine sim_engine_from_string(const std::string& s);

struct SimulationPlan {
  std::size_t n = 0;
  // General-spacing abscissae; empty means equispaced (1, -2, 1) rows.
  std::vector<double> x;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  SimEngine engine = SimEngine::Solver;
  unsigned workers = 1;  // 0 is treated as 1
};

// Histogram of the number of active constraints k = |J| when projecting
// standard Gaussian draws onto the convexity cone: the chi-bar-squared
// mixing weights of the associated convexity test.
struct WeightEstimate {
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> counts;  // index k = 0..n-2
  std::vector<double> weights;        // counts / trials
  std::vector<double> std_errors;     // sqrt(w (1-w) / trials)
  std::uint64_t disagreements = 0;    // engine Both only
};

struct DisagreementRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;        // plan seed; (seed, trial) reproduces the draw
  std::uint64_t stream_key = 0;  // derived per-trial key
  double dy_inf = 0.0;           // ||y_solver - y_oracle||_inf
  std::vector<std::size_t> J_solver;
  std::vector<std::size_t> J_oracle;
};

struct EngineComparison {
  double max_weight_gap = 0.0;
  std::vector<DisagreementRecord> disagreements;
};

// Deterministic for fixed (seed, trials, n, x, engine) regardless of the
// worker count: per-trial streams are keyed by trial index and the
// reduction runs in trial order.
WeightEstimate simulate_weights(const SimulationPlan& plan);

// Runs both engines on identical draws and reports every per-trial
// active-set or y mismatch (||dy||_inf > 1e-7 * scale).
EngineComparison compare_engines(const SimulationPlan& plan);

// One pass over shared draws yielding both the weight estimate (solver
// tally, disagreements counted) and the detailed comparison.
std::pair<WeightEstimate, EngineComparison> simulate_and_compare(
    const SimulationPlan& plan);

}  // namespace coneproj

#endif  // CONEPROJ_SIMULATE_HPP
