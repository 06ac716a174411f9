#include "coneproj/dataset_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <vector>

namespace coneproj {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

// Splits a CSV line, recording the 1-based column where each field starts.
struct Field {
  std::string_view text;
  std::size_t column;
};

std::vector<Field> split_fields(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    std::string_view raw = line.substr(start, end - start);
    std::string_view trimmed = trim(raw);
    const std::size_t lead = trimmed.empty()
                                 ? 0
                                 : static_cast<std::size_t>(trimmed.data() -
                                                            raw.data());
    out.push_back({trimmed, start + lead + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<long long> parse_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<double> parse_number(std::string_view token) {
  token = trim(token);
  if (token.empty()) return std::nullopt;

  const std::size_t slash = token.find('/');
  if (slash != std::string_view::npos) {
    // Exact rational: numerator and denominator are integers below 2^53,
    // so the double division is the correctly rounded value of p/q.
    const auto p = parse_integer(trim(token.substr(0, slash)));
    const auto q = parse_integer(trim(token.substr(slash + 1)));
    if (!p || !q || *q <= 0) return std::nullopt;
    constexpr long long kExact = 1LL << 53;
    if (*p > kExact || *p < -kExact || *q > kExact) return std::nullopt;
    return static_cast<double>(*p) / static_cast<double>(*q);
  }

  double v = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    return std::nullopt;
  return v;
}

DataSet parse_dataset(std::istream& in, bool equispaced) {
  std::string line;
  std::size_t line_no = 0;

  // Header.
  std::vector<Field> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    header = split_fields(line);
    break;
  }
  if (header.empty()) throw SchemaError("empty input, expected a CSV header");

  bool has_x = false;
  if (header.size() == 2 && header[0].text == "x" && header[1].text == "phi") {
    has_x = true;
  } else if (header.size() == 1 && header[0].text == "phi") {
    has_x = false;
  } else {
    throw SchemaError("header must be \"x,phi\" or \"phi\", got \"" + line +
                      "\"");
  }
  if (has_x && equispaced)
    throw SchemaError("input has an x column; drop --equispaced");
  if (!has_x && !equispaced)
    throw SchemaError("phi-only input requires --equispaced");

  DataSet ds;
  std::vector<std::size_t> row_lines;
  const std::size_t want = has_x ? 2 : 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<Field> fields = split_fields(line);
    if (fields.size() != want)
      throw ParseError(line_no, 1,
                       "expected " + std::to_string(want) + " fields, got " +
                           std::to_string(fields.size()));
    std::vector<double> values(want);
    for (std::size_t f = 0; f < want; ++f) {
      const auto v = parse_number(fields[f].text);
      if (!v)
        throw ParseError(line_no, fields[f].column,
                         "not a number: \"" + std::string(fields[f].text) +
                             "\"");
      if (!std::isfinite(*v))
        throw ParseError(line_no, fields[f].column,
                         "value is not finite: \"" +
                             std::string(fields[f].text) + "\"");
      values[f] = *v;
    }
    if (has_x) {
      ds.x.push_back(values[0]);
      ds.phi.push_back(values[1]);
    } else {
      ds.x.push_back(static_cast<double>(ds.phi.size()));
      ds.phi.push_back(values[0]);
    }
    row_lines.push_back(line_no);

    // Catch ordering violations as soon as they appear so the error can
    // name the offending line.
    const std::size_t r = ds.x.size();
    if (has_x && r >= 2 && !(ds.x[r - 1] > ds.x[r - 2]))
      throw NotIncreasingError(r, line_no);
  }

  if (ds.n() < 3) throw TooShortError(ds.n());
  return ds;
}

DataSet parse_dataset_file(const std::string& path, bool equispaced) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  return parse_dataset(in, equispaced);
}

}  // namespace coneproj
