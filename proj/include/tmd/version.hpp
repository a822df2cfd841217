#ifndef TMD_VERSION_HPP
#define TMD_VERSION_HPP

namespace tmd {

inline constexpr const char* kToolName = "tmd";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace tmd

#endif
