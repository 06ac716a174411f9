// Acceptance suite: one pass/fail line per criterion.  Criteria 6 and 7
// drive the actual CLI binary; everything else runs in-process.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "coneproj/constraint.hpp"
#include "coneproj/gram_schmidt.hpp"
#include "coneproj/oracle.hpp"
#include "coneproj/run_record.hpp"
#include "coneproj/simulate.hpp"
#include "coneproj/solver.hpp"
#include "coneproj/vecops.hpp"

namespace fs = std::filesystem;
using namespace coneproj;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
fs::path g_golden;
fs::path g_work;

struct Failure {
  std::string detail;
};

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;
  double seconds = 0.0;

  void fail(const std::string& d) {
    pass = false;
    if (details.size() < 12) details.push_back(d);
  }
  void require(bool cond, const std::string& d) {
    if (!cond) fail(d);
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return format_double(v); }

std::vector<double> gauss(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

double max_abs_diff(const std::vector<double>& a,
                    const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

// Runs the CLI with the given arguments; captures stdout and stderr.
int run_cli(const std::string& args, std::string* out, std::string* errout) {
  const fs::path so = g_work / "stdout.tmp";
  const fs::path se = g_work / "stderr.tmp";
  const std::string cmd = shell_quote(g_cli) + " " + args + " > " +
                          shell_quote(so.string()) + " 2> " +
                          shell_quote(se.string());
  const int status = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  };
  if (out) *out = slurp(so);
  if (errout) *errout = slurp(se);
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

// Zeroes the timing field so archived and fresh outputs are comparable.
std::string normalize_timing(std::string text) {
  const std::string json_key = "\"wall_us\": ";
  std::size_t pos = text.find(json_key);
  if (pos != std::string::npos) {
    pos += json_key.size();
    std::size_t end = pos;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])))
      ++end;
    text.replace(pos, end - pos, "0");
  }
  const std::string csv_key = "wall_us,";
  pos = text.find("\nwall_us,");
  if (pos != std::string::npos) {
    pos += 1 + csv_key.size();
    std::size_t end = pos;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])))
      ++end;
    text.replace(pos, end - pos, "0");
  }
  return text;
}

// ---- criterion 1: the worked five-point example, checkpoints included ----

Outcome criterion1() {
  Outcome o;
  const std::vector<double> x{0.0, 0.5, 1.0, 1.5, 2.0};
  const std::vector<double> phi{0.0, 0.5, 2.5, 3.75, 4.0};
  const std::vector<double> want_y{0.0, 0.925, 2.1, 3.275, 4.45};
  const std::vector<double> want_rho{0.0, -0.425, 0.4, 0.475, -0.45};

  const auto A = ConstraintMatrix::equispaced(5);
  const auto R = A.negated();

  // Checkpoint: R phi.
  const auto b0 = R.apply(phi);
  o.require(b0[0] == -1.5 && b0[1] == 0.75 && b0[2] == 1.0,
            "R phi = (" + fmt(b0[0]) + "," + fmt(b0[1]) + "," + fmt(b0[2]) +
                "), expected (-1.5, 0.75, 1)");

  // Checkpoint: first pick.
  const auto [s0, i0] = select_max_violation(b0);
  o.require(s0 == 1.0 && i0 == 3, "first pick (s,i) = (" + fmt(s0) + "," +
                                      std::to_string(i0) + "), expected (1,3)");

  // Checkpoint: first projection rho1.
  const auto v1 = orthonormalize_rows(R, {3});
  const auto split1 = project(v1, phi);
  const std::vector<double> want_rho1{0.0, 0.0, -1.0 / 6, 1.0 / 3, -1.0 / 6};
  o.require(max_abs_diff(split1.rho, want_rho1) <= 1e-12,
            "rho1 deviates by " + fmt(max_abs_diff(split1.rho, want_rho1)));

  // Checkpoint: mu2 over the sorted pair {2,3}.
  const auto v2 = orthonormalize_rows(R, {2, 3});
  const auto split2 = project(v2, phi);
  o.require(std::abs(split2.mu[0] - 0.3061862179) <= 1e-9 &&
                std::abs(split2.mu[1] - 0.8215838362) <= 1e-9,
            "mu2 = (" + fmt(split2.mu[0]) + "," + fmt(split2.mu[1]) + ")");

  // Full solve plus timing (per-call budget 1 ms; take the best of 5).
  ProjectionResult res;
  double best = 1e9;
  for (int rep = 0; rep < 5; ++rep) {
    const auto t0 = Clock::now();
    res = solve(phi, A);
    best = std::min(best, seconds_since(t0));
  }
  o.require(res.status == SolveStatus::ViolationCleared,
            "status " + to_string(res.status));
  o.require(res.J == std::vector<std::size_t>{2, 3}, "J mismatch");
  o.require(max_abs_diff(res.y, want_y) <= 1e-12,
            "y* deviates by " + fmt(max_abs_diff(res.y, want_y)));
  o.require(max_abs_diff(res.rho, want_rho) <= 1e-12,
            "rho* deviates by " + fmt(max_abs_diff(res.rho, want_rho)));
  const auto ay = A.apply(res.y);
  o.require(std::abs(ay[0] - 0.25) <= 1e-12 && std::abs(ay[1]) <= 1e-12 &&
                std::abs(ay[2]) <= 1e-12,
            "A y* = (" + fmt(ay[0]) + "," + fmt(ay[1]) + "," + fmt(ay[2]) +
                "), expected (0.25, 0, 0)");
  o.require(std::abs(dot(res.y, res.rho)) <= 1e-12,
            "<y*, rho*> = " + fmt(dot(res.y, res.rho)));
  o.require(best < 1e-3, "solve took " + fmt(best) + " s, budget 1 ms");

  // The general-spacing matrix over the same x reaches the same point.
  const auto res_gen = solve(phi, ConstraintMatrix::general(x));
  o.require(max_abs_diff(res_gen.y, want_y) <= 1e-12,
            "general-spacing route deviates");
  return o;
}

// ---- criterion 2: convex fast path ----

Outcome criterion2() {
  Outcome o;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> coef(0.05, 3.0);
  std::uniform_real_distribution<double> gap(0.05, 2.0);
  const auto t0 = Clock::now();
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 3 + rng() % 14;
    std::vector<double> x(n);
    double acc = -2.0;
    for (double& v : x) {
      acc += gap(rng);
      v = acc;
    }
    const double a = coef(rng), b = coef(rng), c = coef(rng);
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i)
      phi[i] = a + b * x[i] + c * x[i] * x[i];
    const auto res = solve(phi, ConstraintMatrix::general(x));
    if (res.status != SolveStatus::AlreadyConvex) {
      o.fail("instance " + std::to_string(rep) + " status " +
             to_string(res.status));
      continue;
    }
    o.require(res.y == phi, "y != phi bitwise at instance " +
                                std::to_string(rep));
    o.require(res.rho == std::vector<double>(n, 0.0),
              "rho != 0 at instance " + std::to_string(rep));
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 1.0, "took " + fmt(elapsed) + " s, budget 1 s");
  return o;
}

// ---- criterion 3: KKT property suite at n = 10 ----

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(303);
  const std::size_t n = 10;
  const auto A = ConstraintMatrix::equispaced(n);
  const auto t0 = Clock::now();
  std::size_t cleared = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const auto phi = gauss(rng, n);
    const double scale = std::max(1.0, norm_inf(phi));
    const auto res = solve(phi, A);
    if (res.status != SolveStatus::ViolationCleared) continue;
    ++cleared;
    if (res.diagnostics.min_feasibility < -1e-8 * scale)
      o.fail("feasibility " + fmt(res.diagnostics.min_feasibility) +
             " at instance " + std::to_string(rep));
    if (std::abs(res.diagnostics.orthogonality) > 1e-8 * scale * norm2(phi))
      o.fail("orthogonality " + fmt(res.diagnostics.orthogonality) +
             " at instance " + std::to_string(rep));
    double rec = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      rec = std::max(rec, std::abs((res.y[i] + res.rho[i]) - phi[i]));
    if (rec > 1e-14 * norm_inf(phi))
      o.fail("reconstruction " + fmt(rec) + " at instance " +
             std::to_string(rep));
    const auto again = solve(res.y, A);
    if (again.status != SolveStatus::AlreadyConvex)
      o.fail("re-solve not AlreadyConvex at instance " + std::to_string(rep));
  }
  const double elapsed = seconds_since(t0);
  o.details.push_back(std::to_string(cleared) + "/10000 ViolationCleared, " +
                      fmt(elapsed) + " s");
  o.require(elapsed < 30.0, "took " + fmt(elapsed) + " s, budget 30 s");
  return o;
}

// ---- criterion 4: oracle equivalence over n = 3..8 ----

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(404);
  const auto t0 = Clock::now();
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto A = ConstraintMatrix::equispaced(n);
    for (int rep = 0; rep < 500; ++rep) {
      const auto phi = gauss(rng, n);
      const auto res = solve(phi, A);
      const auto ora = oracle_project(phi, A);
      const double dy = max_abs_diff(res.y, ora.y);
      const double bound = 1e-7 * norm_inf(phi);
      if (dy > bound || res.J != ora.certificate.J_star) {
        // Self-contained reproduction record.
        std::string record = "counterexample n=" + std::to_string(n) +
                             " rep=" + std::to_string(rep) + " phi=[";
        for (std::size_t i = 0; i < phi.size(); ++i)
          record += (i ? "," : "") + fmt(phi[i]);
        record += "] J_solver=[";
        for (auto j : res.J) record += std::to_string(j) + " ";
        record += "] J_oracle=[";
        for (auto j : ora.certificate.J_star) record += std::to_string(j) + " ";
        record += "] |dy|=" + fmt(dy);
        o.fail(record);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.details.push_back("3000 solver-vs-oracle comparisons, " + fmt(elapsed) +
                      " s");
  o.require(elapsed < 60.0, "took " + fmt(elapsed) + " s, budget 60 s");
  return o;
}

// ---- criterion 5: stability under clustered abscissae ----

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> logs(-8.0, 0.0);
  const std::size_t n = 15;
  const auto t0 = Clock::now();
  double worst_offdiag = 0.0;
  SolverConfig cfg;
  cfg.trace = true;
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<double> x(n);
    x[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i)
      x[i] = x[i - 1] + std::pow(10.0, logs(rng));
    const auto A = ConstraintMatrix::general(x);
    const auto R = A.negated();
    const auto phi = gauss(rng, n);
    const double scale = std::max(1.0, norm_inf(phi));
    const auto res = solve(phi, A, cfg);

    for (double v : res.y)
      if (!std::isfinite(v)) o.fail("non-finite y at instance " +
                                    std::to_string(rep));
    for (double v : res.rho)
      if (!std::isfinite(v)) o.fail("non-finite rho at instance " +
                                    std::to_string(rep));

    if (res.status == SolveStatus::ViolationCleared) {
      if (res.diagnostics.min_feasibility < -1e-8 * scale)
        o.fail("feasibility " + fmt(res.diagnostics.min_feasibility) +
               " at instance " + std::to_string(rep));
      if (std::abs(res.diagnostics.orthogonality) > 1e-8 * scale * norm2(phi))
        o.fail("orthogonality at instance " + std::to_string(rep));
      double rec = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        rec = std::max(rec, std::abs((res.y[i] + res.rho[i]) - phi[i]));
      if (rec > 1e-14 * norm_inf(phi))
        o.fail("reconstruction at instance " + std::to_string(rep));
      const auto again = solve(res.y, A);
      if (again.status != SolveStatus::AlreadyConvex)
        o.fail("re-solve not AlreadyConvex at instance " + std::to_string(rep));
    }

    // Orthonormality of both basis construction routes on this instance's
    // selected rows: the incremental insertion order and the sorted rebuild.
    if (!res.J.empty()) {
      OrthonormalBasis incremental;
      for (const auto& tr : res.trace)
        if (tr.inserted) extend(incremental, R.row_dense(tr.i), tr.i);
      const auto sorted = orthonormalize_rows(R, res.J);
      const OrthonormalBasis* routes[2] = {&incremental, &sorted};
      for (const OrthonormalBasis* basis : routes) {
        for (std::size_t a = 0; a < basis->size(); ++a)
          for (std::size_t b2 = 0; b2 < a; ++b2)
            worst_offdiag =
                std::max(worst_offdiag,
                         std::abs(dot(basis->cols[a], basis->cols[b2])));
      }
    }
  }
  o.require(worst_offdiag <= 1e-12,
            "max offdiag |V^T V| = " + fmt(worst_offdiag));
  o.details.push_back("max offdiag |V^T V| = " + fmt(worst_offdiag));
  const double elapsed = seconds_since(t0);
  o.details.push_back(fmt(elapsed) + " s");
  o.require(elapsed < 30.0, "took " + fmt(elapsed) + " s, budget 30 s");
  return o;
}

// ---- criterion 6: simulation weights through the CLI ----

Outcome criterion6() {
  Outcome o;
  const auto t0 = Clock::now();

  // Half-space symmetry at n = 3.
  std::string out;
  int code = run_cli("simulate --n 3 --trials 100000 --seed 7", &out, nullptr);
  o.require(code == 0, "n=3 run exited " + std::to_string(code));
  {
    const auto j = nlohmann::json::parse(out);
    const double w0 = j.at("weights")[0].get<double>();
    o.require(std::abs(w0 - 0.5) <= 3.0 * std::sqrt(0.25 / 100000.0),
              "w(k=0) = " + fmt(w0) + " off 0.5");
  }

  // Solver vs oracle at n = 5 on shared draws.
  std::string sout, oout;
  code = run_cli("simulate --n 5 --trials 100000 --seed 99 --engine solver "
                 "--workers 4",
                 &sout, nullptr);
  o.require(code == 0, "solver engine exited " + std::to_string(code));
  code = run_cli("simulate --n 5 --trials 100000 --seed 99 --engine oracle "
                 "--workers 4",
                 &oout, nullptr);
  o.require(code == 0, "oracle engine exited " + std::to_string(code));
  if (o.pass) {
    const auto js = nlohmann::json::parse(sout);
    const auto jo = nlohmann::json::parse(oout);
    for (std::size_t k = 0; k < 4; ++k) {
      const double ws = js.at("weights")[k].get<double>();
      const double wo = jo.at("weights")[k].get<double>();
      const double ses = js.at("std_errors")[k].get<double>();
      const double seo = jo.at("std_errors")[k].get<double>();
      const double bound = 3.0 * std::sqrt(ses * ses + seo * seo);
      o.require(std::abs(ws - wo) <= bound,
                "bin k=" + std::to_string(k) + ": |" + fmt(ws) + " - " +
                    fmt(wo) + "| > " + fmt(bound));
    }
  }

  // Byte determinism across workers and repeats.
  std::string w1, w4a, w4b;
  run_cli("simulate --n 5 --trials 100000 --seed 99 --engine solver "
          "--workers 1",
          &w1, nullptr);
  o.require(w1 == sout, "workers 1 vs 4 output differs");
  run_cli("simulate --n 5 --trials 100000 --seed 99 --engine solver "
          "--workers 4",
          &w4a, nullptr);
  o.require(w4a == sout, "repeated workers-4 run differs");
  run_cli("simulate --n 3 --trials 100000 --seed 7 --workers 4", &w4b,
          nullptr);
  o.require(w4b == out, "n=3 run is not reproducible across worker counts");

  const double elapsed = seconds_since(t0);
  o.details.push_back(fmt(elapsed) + " s");
  o.require(elapsed < 120.0, "took " + fmt(elapsed) + " s, budget 2 min");
  return o;
}

// ---- criterion 7: golden CLI corpus ----

Outcome criterion7() {
  Outcome o;
  const fs::path manifest = g_golden / "manifest.tsv";
  std::ifstream mf(manifest);
  o.require(mf.good(), "missing manifest " + manifest.string());
  std::string line;
  std::size_t cases = 0;
  while (std::getline(mf, line)) {
    if (line.empty() || line[0] == '#') continue;
    // name \t args \t expected_exit \t stream \t archive
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string tok;
    while (std::getline(ls, tok, '\t')) f.push_back(tok);
    if (f.size() != 5) {
      o.fail("malformed manifest line: " + line);
      continue;
    }
    ++cases;
    const std::string& name = f[0];
    std::string args = f[1];
    // Substitute the golden directory for input paths and the scratch
    // directory for outputs the run writes.
    auto substitute = [&](const std::string& key, const std::string& value) {
      std::size_t pos;
      while ((pos = args.find(key)) != std::string::npos)
        args.replace(pos, key.size(), value);
    };
    substitute("{golden}", g_golden.string());
    substitute("{work}", g_work.string());
    const int want_exit = std::stoi(f[2]);
    const std::string& stream = f[3];
    const fs::path archive = g_golden / f[4];

    std::string out_s, err_s;
    const int code = run_cli(args, &out_s, &err_s);
    if (code != want_exit) {
      o.fail(name + ": exit " + std::to_string(code) + ", expected " +
             std::to_string(want_exit));
      continue;
    }
    std::ifstream af(archive, std::ios::binary);
    if (!af.good()) {
      o.fail(name + ": missing archive " + archive.string());
      continue;
    }
    std::ostringstream as;
    as << af.rdbuf();
    const std::string want =
        normalize_timing(as.str());
    const std::string got =
        normalize_timing(stream == "stderr" ? err_s : out_s);
    if (want != got) {
      o.fail(name + ": " + stream + " differs from " + f[4]);
    }
  }
  o.require(cases == 10, "manifest lists " + std::to_string(cases) +
                             " cases, expected 10");

  // Plot-data side artifact for the golden instance.
  std::string dummy;
  const fs::path plot = g_work / "plot_g01.csv";
  run_cli("project --input " + shell_quote((g_golden / "g01_rational.csv").string()) +
              " --plot-data " + shell_quote(plot.string()),
          &dummy, nullptr);
  std::ifstream pf(plot);
  std::string header;
  std::getline(pf, header);
  o.require(header == "x,phi,y,rho", "plot header " + header);
  std::size_t rows = 0;
  while (std::getline(pf, header)) ++rows;
  o.require(rows == 5, "plot rows " + std::to_string(rows));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string key = argv[i];
    if (key == "--cli") g_cli = argv[i + 1];
    if (key == "--golden") g_golden = argv[i + 1];
    if (key == "--workdir") g_work = argv[i + 1];
  }
  if (g_cli.empty() || g_golden.empty()) {
    std::cerr << "usage: acceptance_suite --cli PATH --golden DIR "
                 "[--workdir DIR]\n";
    return 2;
  }
  if (g_work.empty()) g_work = fs::temp_directory_path() / "coneproj_accept";
  fs::create_directories(g_work);

  struct Item {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Item> items{
      {"1 golden worked example with checkpoints", criterion1},
      {"2 convex fast path over 1000 random quadratics", criterion2},
      {"3 KKT properties over 10000 Gaussian n=10 instances", criterion3},
      {"4 oracle equivalence over n=3..8, 500 each", criterion4},
      {"5 stability under clustered abscissae, n=15", criterion5},
      {"6 simulation weights, agreement and determinism", criterion6},
      {"7 golden CLI corpus, byte-for-byte", criterion7},
  };

  int failures = 0;
  for (const auto& item : items) {
    const auto t0 = Clock::now();
    Outcome o = item.run();
    o.seconds = seconds_since(t0);
    std::printf("[%s] criterion %s (%.2fs)\n", o.pass ? "PASS" : "FAIL",
                item.name, o.seconds);
    for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
    if (!o.pass) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
