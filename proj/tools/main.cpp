#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coneproj/harness.hpp"
#include "coneproj/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Euclidean projection onto the convexity cone {y : A y >= 0} "
               "and chi-bar-squared weight simulation"};
  app.set_version_flag("--version", std::string(coneproj::kVersion));
  app.require_subcommand(1);

  coneproj::ProjectOptions popts;
  std::string pformat = "json";
  CLI::App* project = app.add_subcommand(
      "project", "Project a data set onto the convexity cone");
  project->add_option("--input", popts.input_path,
                      "Input CSV (default: stdin)");
  project->add_flag("--equispaced", popts.equispaced,
                    "Input is a single phi column over implicit x = 0,1,2,...");
  double eps1 = 0.0, eps2 = 0.0;
  CLI::Option* oeps1 =
      project->add_option("--eps1", eps1, "Violation tolerance");
  CLI::Option* oeps2 =
      project->add_option("--eps2", eps2, "Stagnation tolerance");
  project->add_flag("--oracle", popts.oracle,
                    "Cross-check against the exact enumeration oracle");
  project->add_flag("--trace", popts.trace, "Record per-iteration trace");
  project->add_option("--format", pformat, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  project->add_option("--output", popts.output_path,
                      "Output path (default: stdout)");
  project->add_option("--plot-data", popts.plot_data_path,
                      "Write x,phi,y,rho CSV for plotting");

  coneproj::SimulateOptions sopts;
  std::string sformat = "json";
  std::string engine = "solver";
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Estimate chi-bar-squared mixing weights by Monte Carlo");
  simulate->add_option("--n", sopts.n, "Data size (n >= 3)")->required();
  simulate->add_option("--trials", sopts.trials, "Number of Gaussian draws")
      ->required();
  simulate->add_option("--seed", sopts.seed, "RNG seed");
  simulate->add_option("--engine", engine, "solver, oracle, or both")
      ->check(CLI::IsMember({"solver", "oracle", "both"}));
  simulate->add_option("--workers", sopts.workers, "Worker thread count");
  simulate->add_option("--format", sformat, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  simulate->add_option("--output", sopts.output_path,
                       "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return coneproj::kExitError;
  }

  if (project->parsed()) {
    if (*oeps1) popts.eps1 = eps1;
    if (*oeps2) popts.eps2 = eps2;
    popts.format = coneproj::output_format_from_string(pformat);
    return coneproj::run_project(popts, std::cout, std::cerr);
  }
  sopts.engine = coneproj::sim_engine_from_string(engine);
  sopts.format = coneproj::output_format_from_string(sformat);
  return coneproj::run_simulate(sopts, std::cout, std::cerr);
}
