#ifndef VORTEXDIV_VERSION_HPP
#define VORTEXDIV_VERSION_HPP

namespace vortexdiv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vortexdiv

#endif  // VORTEXDIV_VERSION_HPP
