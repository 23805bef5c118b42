#pragma once

namespace condfrag {

inline constexpr const char* kVersion = "1.0.0";

} // namespace condfrag
