#include "coneproj/harness.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "coneproj/dataset_io.hpp"
#include "coneproj/oracle.hpp"
#include "coneproj/solver.hpp"
#include "coneproj/vecops.hpp"
#include "coneproj/version.hpp"

namespace coneproj {

LogLevel log_level_from_env() {
  const char* v = std::getenv("CONE_PROJ_LOG");
  if (!v) return LogLevel::Off;
  const std::string s(v);
  if (s == "info") return LogLevel::Info;
  if (s == "debug") return LogLevel::Debug;
  return LogLevel::Off;
}

namespace {

void write_output(const std::string& text, const std::string& path,
                  std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + path);
  f << text;
}

RunRecord build_record(const DataSet& ds, const SolverConfig& cfg,
                       const ProjectionResult& res, bool with_trace) {
  RunRecord r;
  r.version = kVersion;
  r.eps1 = cfg.eps1;
  r.eps2 = cfg.eps2;
  r.scale_tolerances = cfg.scale_tolerances;
  r.x = ds.x;
  r.phi = ds.phi;
  r.status = to_string(res.status);
  r.y = res.y;
  r.rho = res.rho;
  r.J = res.J;
  r.s = res.diagnostics.max_violation;
  r.iterations = res.iterations;
  r.min_feasibility = res.diagnostics.min_feasibility;
  r.orthogonality = res.diagnostics.orthogonality;
  r.solution_check_passed = res.diagnostics.solution_check_passed;
  double rec = 0.0;
  for (std::size_t i = 0; i < ds.phi.size(); ++i)
    rec = std::max(rec, std::abs((res.y[i] + res.rho[i]) - ds.phi[i]));
  r.reconstruction = rec;
  r.has_trace = with_trace;
  if (with_trace) r.trace = res.trace;
  return r;
}

}  // namespace

int run_project(const ProjectOptions& opts, std::ostream& out,
                std::ostream& err) {
  const LogLevel log = log_level_from_env();
  try {
    DataSet ds;
    if (opts.input_path.empty()) {
      ds = parse_dataset(std::cin, opts.equispaced);
    } else {
      ds = parse_dataset_file(opts.input_path, opts.equispaced);
    }

    const ConstraintMatrix A = opts.equispaced
                                   ? ConstraintMatrix::equispaced(ds.n())
                                   : ConstraintMatrix::general(ds.x);
    SolverConfig cfg;
    if (opts.eps1) cfg.eps1 = *opts.eps1;
    if (opts.eps2) cfg.eps2 = *opts.eps2;
    cfg.trace = opts.trace;

    const auto t0 = std::chrono::steady_clock::now();
    const ProjectionResult res = solve(ds.phi, A, cfg);
    const auto t1 = std::chrono::steady_clock::now();

    RunRecord record = build_record(ds, cfg, res, opts.trace);
    record.wall_us = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0)
            .count());

    if (log >= LogLevel::Info) {
      err << "coneproj: status=" << record.status << " |J|=" << record.J.size()
          << " iterations=" << record.iterations << " s="
          << format_double(record.s) << "\n";
    }
    if (log >= LogLevel::Debug) {
      for (const TraceRecord& tr : res.trace) {
        err << "coneproj: trace i=" << tr.i << " s=" << format_double(tr.s)
            << " inserted=" << tr.inserted << "\n";
      }
    }

    if (opts.oracle) {
      const OracleResult ores = oracle_project(ds.phi, A);
      CertificateEcho echo;
      echo.certificate = ores.certificate;
      double dev = 0.0;
      for (std::size_t i = 0; i < res.y.size(); ++i)
        dev = std::max(dev, std::abs(res.y[i] - ores.y[i]));
      echo.max_dev_from_solver = dev;
      record.certificate = std::move(echo);
      if (log >= LogLevel::Info)
        err << "coneproj: oracle max|dy|=" << format_double(dev) << "\n";
    }

    write_output(emit_record(record, opts.format), opts.output_path, out);

    if (!opts.plot_data_path.empty()) {
      std::ofstream plot(opts.plot_data_path, std::ios::binary);
      if (!plot) throw IoError("cannot open plot file: " + opts.plot_data_path);
      write_plot_csv(plot, ds.x, ds.phi, res.y, res.rho);
    }

    switch (res.status) {
      case SolveStatus::AlreadyConvex:
      case SolveStatus::ViolationCleared:
        return kExitOk;
      default:
        return res.diagnostics.solution_check_passed ? kExitOk
                                                     : kExitWeakSolution;
    }
  } catch (const std::exception& e) {
    err << "coneproj: error: " << e.what() << "\n";
    return kExitError;
  }
}

int run_simulate(const SimulateOptions& opts, std::ostream& out,
                 std::ostream& err) {
  const LogLevel log = log_level_from_env();
  try {
    SimulationPlan plan;
    plan.n = opts.n;
    plan.trials = opts.trials;
    plan.seed = opts.seed;
    plan.engine = opts.engine;
    plan.workers = opts.workers;

    SimulationRecord record;
    record.version = kVersion;
    record.n = plan.n;
    record.trials = plan.trials;
    record.seed = plan.seed;
    record.engine = to_string(plan.engine);
    if (plan.engine == SimEngine::Both) {
      auto [estimate, comparison] = simulate_and_compare(plan);
      record.estimate = std::move(estimate);
      record.comparison = std::move(comparison);
    } else {
      record.estimate = simulate_weights(plan);
    }

    if (log >= LogLevel::Info) {
      err << "coneproj: simulate n=" << plan.n << " trials=" << plan.trials
          << " disagreements=" << record.estimate.disagreements << "\n";
    }

    write_output(emit_simulation(record, opts.format), opts.output_path, out);
    return kExitOk;
  } catch (const std::exception& e) {
    err << "coneproj: error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace coneproj
