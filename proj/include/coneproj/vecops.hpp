#ifndef CONEPROJ_VECOPS_HPP
#define CONEPROJ_VECOPS_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace coneproj {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

inline double norm1(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

// a += c * b
inline void axpy(double c, std::span<const double> b, std::vector<double>& a) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += c * b[i];
}

inline double max_elem(std::span<const double> a) {
  double s = a[0];
  for (double v : a) s = std::max(s, v);
  return s;
}

inline double min_elem(std::span<const double> a) {
  double s = a[0];
  for (double v : a) s = std::min(s, v);
  return s;
}

}  // namespace coneproj

#endif  // CONEPROJ_VECOPS_HPP
