#ifndef CONEPROJ_VERSION_HPP
#define CONEPROJ_VERSION_HPP

namespace coneproj {

inline constexpr const char* kVersion = "coneproj 1.0.0";

}  // namespace coneproj

#endif  // CONEPROJ_VERSION_HPP
