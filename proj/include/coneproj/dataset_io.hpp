#ifndef CONEPROJ_DATASET_IO_HPP
#define CONEPROJ_DATASET_IO_HPP

#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "coneproj/constraint.hpp"

namespace coneproj {

// Parses a numeric literal: a decimal floating literal, or an exact
// rational "p/q" (integer p, positive integer q) converted to the nearest
// double.  Returns nullopt on malformed input.
std::optional<double> parse_number(std::string_view token);

// Reads a headered CSV data set.  Accepted schemas:
//   x,phi  — explicit abscissae (equispaced must be false)
//   phi    — implicit abscissae 0,1,2,... (equispaced must be true)
// Values may be decimal or rational literals.  Abscissae are validated;
// ordering violations carry the offending input line in their message.
DataSet parse_dataset(std::istream& in, bool equispaced);
DataSet parse_dataset_file(const std::string& path, bool equispaced);

}  // namespace coneproj

#endif  // CONEPROJ_DATASET_IO_HPP
