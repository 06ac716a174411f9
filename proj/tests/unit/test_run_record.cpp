#include <doctest.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "coneproj/run_record.hpp"
#include "testutil.hpp"

using namespace coneproj;

namespace {

RunRecord representative_record() {
  RunRecord r;
  r.version = "coneproj 1.0.0";
  r.eps1 = 1e-9;
  r.eps2 = 1e-12;
  r.scale_tolerances = true;
  r.x = {0.0, 0.5, 1.0, 1.5, 2.0};
  r.phi = {0.0, 0.5, 2.5, 3.75, 4.0};
  r.status = "ViolationCleared";
  r.y = {0.0, 0.925, 2.1, 3.275, 4.45};
  r.rho = {0.0, -0.425, 0.4, 0.475, -0.45};
  r.J = {2, 3};
  r.s = 4.440892098500626e-16;
  r.iterations = 2;
  r.min_feasibility = -4.440892098500626e-16;
  r.orthogonality = 1.0 / 3.0;
  r.reconstruction = 0.0;
  r.solution_check_passed = true;
  r.has_trace = true;
  TraceRecord t0;
  t0.b = {-1.5, 0.75, 1.0};
  t0.s = 1.0;
  t0.i = 3;
  t0.inserted = true;
  t0.J = {3};
  t0.rho = {0.0, 0.0, -1.0 / 6, 1.0 / 3, -1.0 / 6};
  t0.y = {0.0, 0.5, 8.0 / 3, 41.0 / 12, 25.0 / 6};
  r.trace.push_back(t0);
  TraceRecord t1;
  t1.b = {-0.125, 0.1, -1e-300};
  t1.s = 0.1;
  t1.i = 2;
  t1.inserted = false;
  t1.J = {2, 3};
  r.trace.push_back(t1);
  CertificateEcho c;
  c.certificate.J_star = {2, 3};
  c.certificate.lambda_hat = {0.425, 0.45};
  c.certificate.feasibility_margin = -1e-17;
  c.certificate.representation_residual = 3.9e-16;
  c.max_dev_from_solver = 8.881784197001252e-16;
  r.certificate = c;
  r.wall_us = 421;
  return r;
}

}  // namespace

TEST_CASE("json round-trip is lossless") {
  const RunRecord r = representative_record();
  const std::string text = emit_record(r, OutputFormat::Json);
  const RunRecord back = parse_record(text, OutputFormat::Json);
  CHECK(back == r);
}

TEST_CASE("csv round-trip is lossless") {
  const RunRecord r = representative_record();
  const std::string text = emit_record(r, OutputFormat::Csv);
  const RunRecord back = parse_record(text, OutputFormat::Csv);
  CHECK(back == r);
}

TEST_CASE("round-trip preserves absent optional sections") {
  RunRecord r = representative_record();
  r.has_trace = false;
  r.trace.clear();
  r.certificate.reset();
  for (auto fmt : {OutputFormat::Json, OutputFormat::Csv}) {
    const RunRecord back = parse_record(emit_record(r, fmt), fmt);
    CHECK(back == r);
    CHECK_FALSE(back.has_trace);
    CHECK_FALSE(back.certificate.has_value());
  }
}

TEST_CASE("empty index sets survive the round trip") {
  RunRecord r = representative_record();
  r.status = "AlreadyConvex";
  r.J.clear();
  r.has_trace = false;
  r.trace.clear();
  r.certificate.reset();
  for (auto fmt : {OutputFormat::Json, OutputFormat::Csv}) {
    const RunRecord back = parse_record(emit_record(r, fmt), fmt);
    CHECK(back.J.empty());
    CHECK(back == r);
  }
}

TEST_CASE("doubles serialize with 17 significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.425) == "-0.42499999999999999");
}

TEST_CASE("decimal serialization is value-preserving for random doubles") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int rep = 0; rep < 2000; ++rep) {
    const double v = std::ldexp(mant(rng), expo(rng));
    const std::string s = format_double(v);
    const double back = std::strtod(s.c_str(), nullptr);
    CHECK(back == v);
  }
  // Awkward exacts.
  for (double v : {1e-9, 1e-12, 1.0 / 3.0, -17.0 / 40.0, 2.2250738585072014e-308}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("plot csv has the exact column layout") {
  std::ostringstream out;
  write_plot_csv(out, {0.0, 1.0, 2.0}, {0.0, 1.0, 0.5}, {0.0, 0.75, 0.6},
                 {0.0, 0.25, -0.1});
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "x,phi,y,rho");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
  }
  CHECK(rows == 3);
}

TEST_CASE("simulation emission is deterministic") {
  SimulationRecord r;
  r.version = "coneproj 1.0.0";
  r.n = 3;
  r.trials = 10;
  r.seed = 7;
  r.engine = "solver";
  r.estimate.trials = 10;
  r.estimate.counts = {6, 4};
  r.estimate.weights = {0.6, 0.4};
  r.estimate.std_errors = {0.15491933384829668, 0.15491933384829668};
  const std::string a = emit_simulation(r, OutputFormat::Json);
  const std::string b = emit_simulation(r, OutputFormat::Json);
  CHECK(a == b);
  CHECK(a.find("\"counts\": [6,4]") != std::string::npos);
  CHECK(a.find("workers") == std::string::npos);  // byte-stable across workers
  const std::string c = emit_simulation(r, OutputFormat::Csv);
  CHECK(c.find("k,count,weight,std_error") != std::string::npos);
  CHECK(c.find("0,6,") != std::string::npos);
}
