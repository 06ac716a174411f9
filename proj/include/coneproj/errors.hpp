#ifndef CONEPROJ_ERRORS_HPP
#define CONEPROJ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coneproj {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Abscissae are not strictly increasing; `index` is the 1-based position of
// the first entry that fails x[index] > x[index-1].
class NotIncreasingError : public Error {
 public:
  explicit NotIncreasingError(std::size_t index)
      : Error("abscissae not strictly increasing at position " +
              std::to_string(index)),
        index_(index) {}
  // Parser variant: also names the input line holding the offending value.
  NotIncreasingError(std::size_t index, std::size_t line)
      : Error("abscissae not strictly increasing at position " +
              std::to_string(index) + " (input line " + std::to_string(line) +
              ")"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Fewer than 3 data points: no second difference exists.
class TooShortError : public Error {
 public:
  explicit TooShortError(std::size_t n)
      : Error("need at least 3 data points, got " + std::to_string(n)),
        n_(n) {}
  std::size_t n() const { return n_; }

 private:
  std::size_t n_;
};

class DimensionMismatchError : public Error {
 public:
  explicit DimensionMismatchError(const std::string& msg)
      : Error("dimension mismatch: " + msg) {}
};

class EmptyBasisError : public Error {
 public:
  EmptyBasisError() : Error("all columns were dropped as dependent") {}
};

class InvalidConfigError : public Error {
 public:
  explicit InvalidConfigError(const std::string& msg)
      : Error("invalid solver config: " + msg) {}
};

// Enumeration guard of the exact oracle: m = n-2 constraints, capped at 12.
class TooLargeError : public Error {
 public:
  explicit TooLargeError(std::size_t m)
      : Error("exact oracle supports at most 12 constraints, got " +
              std::to_string(m)),
        m_(m) {}
  std::size_t m() const { return m_; }

 private:
  std::size_t m_;
};

// No candidate active set produced an acceptable KKT certificate.  Cannot
// happen on valid input; indicates a tolerance bug.
class NoCertificateError : public Error {
 public:
  NoCertificateError() : Error("exhaustive enumeration found no certificate") {}
};

class EngineUnavailableError : public Error {
 public:
  explicit EngineUnavailableError(const std::string& msg) : Error(msg) {}
};

// CSV parse failure with 1-based line and column of the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : Error("parse error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + reason),
        line_(line),
        column_(column),
        reason_(reason) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string reason_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& msg)
      : Error("schema error: " + msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error("i/o error: " + msg) {}
};

}  // namespace coneproj

#endif  // CONEPROJ_ERRORS_HPP
