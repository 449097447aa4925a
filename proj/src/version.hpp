#pragma once

namespace loadtk {

inline constexpr const char* kToolkitVersion = "0.1.0";

}  // namespace loadtk
