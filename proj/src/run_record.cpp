#include "coneproj/run_record.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

namespace coneproj {

OutputFormat output_format_from_string(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw Error("unknown format: " + s);
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return v != v ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string join_doubles(const std::vector<double>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_double(v[i]);
  }
  return out;
}

std::string join_indices(const std::vector<std::size_t>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string json_double_array(const std::vector<double>& v) {
  return "[" + join_doubles(v, ',') + "]";
}

std::string json_index_array(const std::vector<std::size_t>& v) {
  return "[" + join_indices(v, ',') + "]";
}

// ---- JSON emission (hand-rolled: field order and number formatting are
// part of the output contract) ----

std::string emit_record_json(const RunRecord& r) {
  std::ostringstream o;
  o << "{\n";
  o << "  \"spec\": " << kRecordSchemaVersion << ",\n";
  o << "  \"version\": \"" << r.version << "\",\n";
  o << "  \"config\": {\"eps1\": " << format_double(r.eps1)
    << ", \"eps2\": " << format_double(r.eps2) << ", \"scale_tolerances\": "
    << (r.scale_tolerances ? "true" : "false") << "},\n";
  o << "  \"input\": {\"x\": " << json_double_array(r.x)
    << ", \"phi\": " << json_double_array(r.phi) << "},\n";
  o << "  \"status\": \"" << r.status << "\",\n";
  o << "  \"y\": " << json_double_array(r.y) << ",\n";
  o << "  \"rho\": " << json_double_array(r.rho) << ",\n";
  o << "  \"J\": " << json_index_array(r.J) << ",\n";
  o << "  \"s\": " << format_double(r.s) << ",\n";
  o << "  \"iterations\": " << r.iterations << ",\n";
  o << "  \"diagnostics\": {\"min_feasibility\": "
    << format_double(r.min_feasibility)
    << ", \"orthogonality\": " << format_double(r.orthogonality)
    << ", \"reconstruction\": " << format_double(r.reconstruction)
    << ", \"solution_check_passed\": "
    << (r.solution_check_passed ? "true" : "false") << "}";
  if (r.has_trace) {
    o << ",\n  \"trace\": [";
    for (std::size_t t = 0; t < r.trace.size(); ++t) {
      const TraceRecord& tr = r.trace[t];
      if (t) o << ",";
      o << "\n    {\"b\": " << json_double_array(tr.b)
        << ", \"s\": " << format_double(tr.s) << ", \"i\": " << tr.i
        << ", \"inserted\": " << (tr.inserted ? "true" : "false")
        << ", \"J\": " << json_index_array(tr.J)
        << ", \"rho\": " << json_double_array(tr.rho)
        << ", \"y\": " << json_double_array(tr.y) << "}";
    }
    o << "\n  ]";
  }
  if (r.certificate) {
    const CertificateEcho& c = *r.certificate;
    o << ",\n  \"certificate\": {\"J_star\": "
      << json_index_array(c.certificate.J_star)
      << ", \"lambda_hat\": " << json_double_array(c.certificate.lambda_hat)
      << ", \"feasibility_margin\": "
      << format_double(c.certificate.feasibility_margin)
      << ", \"representation_residual\": "
      << format_double(c.certificate.representation_residual)
      << ", \"max_dev_from_solver\": " << format_double(c.max_dev_from_solver)
      << "}";
  }
  o << ",\n  \"wall_us\": " << r.wall_us << "\n}\n";
  return o.str();
}

// ---- CSV emission: flat key,value lines; vectors space-joined ----

std::string emit_record_csv(const RunRecord& r) {
  std::ostringstream o;
  o << "field,value\n";
  o << "spec," << kRecordSchemaVersion << "\n";
  o << "version," << r.version << "\n";
  o << "eps1," << format_double(r.eps1) << "\n";
  o << "eps2," << format_double(r.eps2) << "\n";
  o << "scale_tolerances," << (r.scale_tolerances ? 1 : 0) << "\n";
  o << "x," << join_doubles(r.x, ' ') << "\n";
  o << "phi," << join_doubles(r.phi, ' ') << "\n";
  o << "status," << r.status << "\n";
  o << "y," << join_doubles(r.y, ' ') << "\n";
  o << "rho," << join_doubles(r.rho, ' ') << "\n";
  o << "J," << join_indices(r.J, ' ') << "\n";
  o << "s," << format_double(r.s) << "\n";
  o << "iterations," << r.iterations << "\n";
  o << "min_feasibility," << format_double(r.min_feasibility) << "\n";
  o << "orthogonality," << format_double(r.orthogonality) << "\n";
  o << "reconstruction," << format_double(r.reconstruction) << "\n";
  o << "solution_check_passed," << (r.solution_check_passed ? 1 : 0) << "\n";
  if (r.has_trace) {
    o << "trace_count," << r.trace.size() << "\n";
    for (std::size_t t = 0; t < r.trace.size(); ++t) {
      const TraceRecord& tr = r.trace[t];
      const std::string p = "trace_" + std::to_string(t) + "_";
      o << p << "b," << join_doubles(tr.b, ' ') << "\n";
      o << p << "s," << format_double(tr.s) << "\n";
      o << p << "i," << tr.i << "\n";
      o << p << "inserted," << (tr.inserted ? 1 : 0) << "\n";
      o << p << "J," << join_indices(tr.J, ' ') << "\n";
      o << p << "rho," << join_doubles(tr.rho, ' ') << "\n";
      o << p << "y," << join_doubles(tr.y, ' ') << "\n";
    }
  }
  if (r.certificate) {
    const CertificateEcho& c = *r.certificate;
    o << "cert_J_star," << join_indices(c.certificate.J_star, ' ') << "\n";
    o << "cert_lambda_hat," << join_doubles(c.certificate.lambda_hat, ' ')
      << "\n";
    o << "cert_feasibility_margin,"
      << format_double(c.certificate.feasibility_margin) << "\n";
    o << "cert_representation_residual,"
      << format_double(c.certificate.representation_residual) << "\n";
    o << "cert_max_dev_from_solver," << format_double(c.max_dev_from_solver)
      << "\n";
  }
  o << "wall_us," << r.wall_us << "\n";
  return o.str();
}

// ---- parsing ----

std::vector<double> doubles_from_json(const nlohmann::json& j) {
  std::vector<double> out;
  for (const auto& v : j) out.push_back(v.get<double>());
  return out;
}

std::vector<std::size_t> indices_from_json(const nlohmann::json& j) {
  std::vector<std::size_t> out;
  for (const auto& v : j) out.push_back(v.get<std::size_t>());
  return out;
}

RunRecord parse_record_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RunRecord r;
  r.version = j.at("version").get<std::string>();
  r.eps1 = j.at("config").at("eps1").get<double>();
  r.eps2 = j.at("config").at("eps2").get<double>();
  r.scale_tolerances = j.at("config").at("scale_tolerances").get<bool>();
  r.x = doubles_from_json(j.at("input").at("x"));
  r.phi = doubles_from_json(j.at("input").at("phi"));
  r.status = j.at("status").get<std::string>();
  r.y = doubles_from_json(j.at("y"));
  r.rho = doubles_from_json(j.at("rho"));
  r.J = indices_from_json(j.at("J"));
  r.s = j.at("s").get<double>();
  r.iterations = j.at("iterations").get<std::size_t>();
  const auto& d = j.at("diagnostics");
  r.min_feasibility = d.at("min_feasibility").get<double>();
  r.orthogonality = d.at("orthogonality").get<double>();
  r.reconstruction = d.at("reconstruction").get<double>();
  r.solution_check_passed = d.at("solution_check_passed").get<bool>();
  if (j.contains("trace")) {
    r.has_trace = true;
    for (const auto& jt : j.at("trace")) {
      TraceRecord tr;
      tr.b = doubles_from_json(jt.at("b"));
      tr.s = jt.at("s").get<double>();
      tr.i = jt.at("i").get<std::size_t>();
      tr.inserted = jt.at("inserted").get<bool>();
      tr.J = indices_from_json(jt.at("J"));
      tr.rho = doubles_from_json(jt.at("rho"));
      tr.y = doubles_from_json(jt.at("y"));
      r.trace.push_back(std::move(tr));
    }
  }
  if (j.contains("certificate")) {
    const auto& jc = j.at("certificate");
    CertificateEcho c;
    c.certificate.J_star = indices_from_json(jc.at("J_star"));
    c.certificate.lambda_hat = doubles_from_json(jc.at("lambda_hat"));
    c.certificate.feasibility_margin =
        jc.at("feasibility_margin").get<double>();
    c.certificate.representation_residual =
        jc.at("representation_residual").get<double>();
    c.max_dev_from_solver = jc.at("max_dev_from_solver").get<double>();
    r.certificate = std::move(c);
  }
  r.wall_us = j.at("wall_us").get<std::uint64_t>();
  return r;
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  double v;
  while (in >> v) out.push_back(v);
  return out;
}

std::vector<std::size_t> split_indices(const std::string& s) {
  std::vector<std::size_t> out;
  std::istringstream in(s);
  std::size_t v;
  while (in >> v) out.push_back(v);
  return out;
}

RunRecord parse_record_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::string> kv;
  std::vector<std::string> order;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {  // "field,value" header
      first = false;
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw Error("malformed record csv line");
    kv[line.substr(0, comma)] = line.substr(comma + 1);
    order.push_back(line.substr(0, comma));
  }
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw Error("record csv missing field: " + k);
    return it->second;
  };

  RunRecord r;
  r.version = need("version");
  r.eps1 = std::stod(need("eps1"));
  r.eps2 = std::stod(need("eps2"));
  r.scale_tolerances = need("scale_tolerances") == "1";
  r.x = split_doubles(need("x"));
  r.phi = split_doubles(need("phi"));
  r.status = need("status");
  r.y = split_doubles(need("y"));
  r.rho = split_doubles(need("rho"));
  r.J = split_indices(need("J"));
  r.s = std::stod(need("s"));
  r.iterations = std::stoul(need("iterations"));
  r.min_feasibility = std::stod(need("min_feasibility"));
  r.orthogonality = std::stod(need("orthogonality"));
  r.reconstruction = std::stod(need("reconstruction"));
  r.solution_check_passed = need("solution_check_passed") == "1";
  if (kv.count("trace_count")) {
    r.has_trace = true;
    const std::size_t count = std::stoul(kv["trace_count"]);
    for (std::size_t t = 0; t < count; ++t) {
      const std::string p = "trace_" + std::to_string(t) + "_";
      TraceRecord tr;
      tr.b = split_doubles(need(p + "b"));
      tr.s = std::stod(need(p + "s"));
      tr.i = std::stoul(need(p + "i"));
      tr.inserted = need(p + "inserted") == "1";
      tr.J = split_indices(need(p + "J"));
      tr.rho = split_doubles(need(p + "rho"));
      tr.y = split_doubles(need(p + "y"));
      r.trace.push_back(std::move(tr));
    }
  }
  if (kv.count("cert_J_star")) {
    CertificateEcho c;
    c.certificate.J_star = split_indices(need("cert_J_star"));
    c.certificate.lambda_hat = split_doubles(need("cert_lambda_hat"));
    c.certificate.feasibility_margin = std::stod(need("cert_feasibility_margin"));
    c.certificate.representation_residual =
        std::stod(need("cert_representation_residual"));
    c.max_dev_from_solver = std::stod(need("cert_max_dev_from_solver"));
    r.certificate = std::move(c);
  }
  r.wall_us = std::stoull(need("wall_us"));
  return r;
}

}  // namespace

std::string emit_record(const RunRecord& r, OutputFormat format) {
  return format == OutputFormat::Json ? emit_record_json(r)
                                      : emit_record_csv(r);
}

RunRecord parse_record(const std::string& text, OutputFormat format) {
  return format == OutputFormat::Json ? parse_record_json(text)
                                      : parse_record_csv(text);
}

bool operator==(const RunRecord& a, const RunRecord& b) {
  auto trace_eq = [](const TraceRecord& x, const TraceRecord& y) {
    return x.b == y.b && x.s == y.s && x.i == y.i && x.inserted == y.inserted &&
           x.J == y.J && x.rho == y.rho && x.y == y.y;
  };
  if (a.trace.size() != b.trace.size()) return false;
  for (std::size_t t = 0; t < a.trace.size(); ++t)
    if (!trace_eq(a.trace[t], b.trace[t])) return false;
  if (a.certificate.has_value() != b.certificate.has_value()) return false;
  if (a.certificate) {
    const auto& ca = *a.certificate;
    const auto& cb = *b.certificate;
    if (!(ca.certificate.J_star == cb.certificate.J_star &&
          ca.certificate.lambda_hat == cb.certificate.lambda_hat &&
          ca.certificate.feasibility_margin ==
              cb.certificate.feasibility_margin &&
          ca.certificate.representation_residual ==
              cb.certificate.representation_residual &&
          ca.max_dev_from_solver == cb.max_dev_from_solver))
      return false;
  }
  return a.version == b.version && a.eps1 == b.eps1 && a.eps2 == b.eps2 &&
         a.scale_tolerances == b.scale_tolerances && a.x == b.x &&
         a.phi == b.phi && a.status == b.status && a.y == b.y &&
         a.rho == b.rho && a.J == b.J && a.s == b.s &&
         a.iterations == b.iterations &&
         a.min_feasibility == b.min_feasibility &&
         a.orthogonality == b.orthogonality &&
         a.reconstruction == b.reconstruction &&
         a.solution_check_passed == b.solution_check_passed &&
         a.has_trace == b.has_trace && a.wall_us == b.wall_us;
}

std::string emit_simulation(const SimulationRecord& r, OutputFormat format) {
  std::ostringstream o;
  if (format == OutputFormat::Json) {
    o << "{\n";
    o << "  \"spec\": " << kRecordSchemaVersion << ",\n";
    o << "  \"version\": \"" << r.version << "\",\n";
    o << "  \"n\": " << r.n << ",\n";
    o << "  \"trials\": " << r.trials << ",\n";
    o << "  \"seed\": " << r.seed << ",\n";
    o << "  \"engine\": \"" << r.engine << "\",\n";
    o << "  \"counts\": [";
    for (std::size_t k = 0; k < r.estimate.counts.size(); ++k) {
      if (k) o << ",";
      o << r.estimate.counts[k];
    }
    o << "],\n";
    o << "  \"weights\": " << json_double_array(r.estimate.weights) << ",\n";
    o << "  \"std_errors\": " << json_double_array(r.estimate.std_errors)
      << ",\n";
    o << "  \"disagreements\": " << r.estimate.disagreements;
    if (r.comparison) {
      o << ",\n  \"disagreement_report\": {\"max_weight_gap\": "
        << format_double(r.comparison->max_weight_gap) << ", \"records\": [";
      for (std::size_t d = 0; d < r.comparison->disagreements.size(); ++d) {
        const DisagreementRecord& dr = r.comparison->disagreements[d];
        if (d) o << ",";
        o << "\n    {\"trial\": " << dr.trial << ", \"seed\": " << dr.seed
          << ", \"stream_key\": " << dr.stream_key
          << ", \"dy_inf\": " << format_double(dr.dy_inf)
          << ", \"J_solver\": " << json_index_array(dr.J_solver)
          << ", \"J_oracle\": " << json_index_array(dr.J_oracle) << "}";
      }
      o << (r.comparison->disagreements.empty() ? "]" : "\n  ]") << "}";
    }
    o << "\n}\n";
  } else {
    o << "n," << r.n << "\n";
    o << "trials," << r.trials << "\n";
    o << "seed," << r.seed << "\n";
    o << "engine," << r.engine << "\n";
    o << "disagreements," << r.estimate.disagreements << "\n";
    o << "k,count,weight,std_error\n";
    for (std::size_t k = 0; k < r.estimate.counts.size(); ++k) {
      o << k << "," << r.estimate.counts[k] << ","
        << format_double(r.estimate.weights[k]) << ","
        << format_double(r.estimate.std_errors[k]) << "\n";
    }
    if (r.comparison) {
      o << "max_weight_gap," << format_double(r.comparison->max_weight_gap)
        << "\n";
      o << "disagreement_trial,seed,stream_key,dy_inf,J_solver,J_oracle\n";
      for (const DisagreementRecord& dr : r.comparison->disagreements) {
        o << dr.trial << "," << dr.seed << "," << dr.stream_key << ","
          << format_double(dr.dy_inf) << "," << join_indices(dr.J_solver, ' ')
          << "," << join_indices(dr.J_oracle, ' ') << "\n";
      }
    }
  }
  return o.str();
}

void write_plot_csv(std::ostream& out, const std::vector<double>& x,
                    const std::vector<double>& phi,
                    const std::vector<double>& y,
                    const std::vector<double>& rho) {
  out << "x,phi,y,rho\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << format_double(x[i]) << "," << format_double(phi[i]) << ","
        << format_double(y[i]) << "," << format_double(rho[i]) << "\n";
  }
}

}  // namespace coneproj
