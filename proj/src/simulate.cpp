#include "coneproj/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "coneproj/oracle.hpp"
#include "coneproj/rng.hpp"
#include "coneproj/solver.hpp"
#include "coneproj/vecops.hpp"

namespace coneproj {

std::string to_string(SimEngine e) {
  switch (e) {
    case SimEngine::Solver: return "solver";
    case SimEngine::Oracle: return "oracle";
    case SimEngine::Both: return "both";
  }
  return "unknown";
}

SimEngine sim_engine_from_string(const std::string& s) {
  if (s == "solver") return SimEngine::Solver;
  if (s == "oracle") return SimEngine::Oracle;
  if (s == "both") return SimEngine::Both;
  throw Error("unknown engine: " + s);
}

namespace {

constexpr double kEngineAgreementTol = 1e-7;

ConstraintMatrix plan_matrix(const SimulationPlan& plan) {
  if (!plan.x.empty()) {
    if (plan.x.size() != plan.n)
      throw DimensionMismatchError("plan.n = " + std::to_string(plan.n) +
                                   " but x has " +
                                   std::to_string(plan.x.size()) + " entries");
    return ConstraintMatrix::general(plan.x);
  }
  return ConstraintMatrix::equispaced(plan.n);
}

void validate_plan(const SimulationPlan& plan) {
  if (plan.trials < 1) throw InvalidConfigError("trials must be >= 1");
  if (plan.n < 3) throw TooShortError(plan.n);
  if (plan.engine != SimEngine::Solver && plan.n - 2 > kOracleMaxConstraints)
    throw EngineUnavailableError(
        "oracle engine requires n-2 <= 12 constraints, got " +
        std::to_string(plan.n - 2));
}

struct TrialResult {
  std::uint32_t k = 0;
  bool disagreed = false;
  double dy_inf = 0.0;
  std::vector<std::size_t> J_solver;
  std::vector<std::size_t> J_oracle;
};

// Runs every trial through `body`, splitting the trial range across
// workers.  Results land in a per-trial slot, so the outcome is independent
// of the thread schedule.
template <typename Body>
std::vector<TrialResult> run_trials(const SimulationPlan& plan,
                                    const Body& body) {
  const std::uint64_t trials = plan.trials;
  std::vector<TrialResult> results(trials);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(plan.workers == 0 ? 1 : plan.workers,
                                      static_cast<unsigned>(trials)));

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<double> phi(plan.n);
    for (std::uint64_t t = lo; t < hi; ++t) {
      GaussianStream stream(plan.seed, t);
      stream.fill(phi.data(), phi.size());
      results[t] = body(t, phi);
    }
  };

  if (workers == 1) {
    run_range(0, trials);
    return results;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t chunk = (trials + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
    const std::uint64_t hi = std::min(trials, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi, w] {
      try {
        run_range(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

WeightEstimate tally(const SimulationPlan& plan,
                     const std::vector<TrialResult>& results) {
  WeightEstimate est;
  est.trials = plan.trials;
  est.counts.assign(plan.n - 1, 0);
  for (const TrialResult& r : results) {
    ++est.counts[r.k];
    if (r.disagreed) ++est.disagreements;
  }
  est.weights.resize(est.counts.size());
  est.std_errors.resize(est.counts.size());
  const double t = static_cast<double>(plan.trials);
  for (std::size_t k = 0; k < est.counts.size(); ++k) {
    const double w = static_cast<double>(est.counts[k]) / t;
    est.weights[k] = w;
    est.std_errors[k] = std::sqrt(w * (1.0 - w) / t);
  }
  return est;
}

TrialResult solver_trial(const ConstraintMatrix& A,
                         const std::vector<double>& phi) {
  TrialResult r;
  const ProjectionResult res = solve(phi, A);
  r.k = static_cast<std::uint32_t>(res.J.size());
  r.J_solver = res.J;
  return r;
}

TrialResult oracle_trial(const ConstraintMatrix& A,
                         const std::vector<double>& phi) {
  TrialResult r;
  const OracleResult res = oracle_project(phi, A);
  r.k = static_cast<std::uint32_t>(res.certificate.J_star.size());
  r.J_oracle = res.certificate.J_star;
  return r;
}

TrialResult both_trial(const ConstraintMatrix& A,
                       const std::vector<double>& phi) {
  TrialResult r;
  const ProjectionResult sres = solve(phi, A);
  const OracleResult ores = oracle_project(phi, A);
  r.k = static_cast<std::uint32_t>(sres.J.size());  // solver is the subject
  r.J_solver = sres.J;
  r.J_oracle = ores.certificate.J_star;
  double dy = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i)
    dy = std::max(dy, std::abs(sres.y[i] - ores.y[i]));
  r.dy_inf = dy;
  const double scale = std::max(1.0, norm_inf(phi));
  r.disagreed =
      (r.J_solver != r.J_oracle) || (dy > kEngineAgreementTol * scale);
  return r;
}

}  // namespace

WeightEstimate simulate_weights(const SimulationPlan& plan) {
  validate_plan(plan);
  const ConstraintMatrix A = plan_matrix(plan);

  std::vector<TrialResult> results;
  switch (plan.engine) {
    case SimEngine::Solver:
      results = run_trials(
          plan, [&](std::uint64_t, const std::vector<double>& phi) {
            return solver_trial(A, phi);
          });
      break;
    case SimEngine::Oracle:
      results = run_trials(
          plan, [&](std::uint64_t, const std::vector<double>& phi) {
            return oracle_trial(A, phi);
          });
      break;
    case SimEngine::Both:
      results = run_trials(
          plan, [&](std::uint64_t, const std::vector<double>& phi) {
            return both_trial(A, phi);
          });
      break;
  }
  return tally(plan, results);
}

std::pair<WeightEstimate, EngineComparison> simulate_and_compare(
    const SimulationPlan& plan) {
  SimulationPlan p = plan;
  p.engine = SimEngine::Both;
  validate_plan(p);
  const ConstraintMatrix A = plan_matrix(p);

  const std::vector<TrialResult> results = run_trials(
      p, [&](std::uint64_t, const std::vector<double>& phi) {
        return both_trial(A, phi);
      });

  EngineComparison cmp;
  std::vector<std::uint64_t> solver_counts(p.n - 1, 0);
  std::vector<std::uint64_t> oracle_counts(p.n - 1, 0);
  for (std::uint64_t t = 0; t < p.trials; ++t) {
    const TrialResult& r = results[t];
    ++solver_counts[r.J_solver.size()];
    ++oracle_counts[r.J_oracle.size()];
    if (r.disagreed) {
      cmp.disagreements.push_back({t, p.seed, stream_key(p.seed, t), r.dy_inf,
                                   r.J_solver, r.J_oracle});
    }
  }
  const double t = static_cast<double>(p.trials);
  for (std::size_t k = 0; k < solver_counts.size(); ++k) {
    const double gap = std::abs(static_cast<double>(solver_counts[k]) -
                                static_cast<double>(oracle_counts[k])) /
                       t;
    cmp.max_weight_gap = std::max(cmp.max_weight_gap, gap);
  }
  return {tally(p, results), std::move(cmp)};
}

EngineComparison compare_engines(const SimulationPlan& plan) {
  return simulate_and_compare(plan).second;
}

}  // namespace coneproj
