#pragma once

namespace ddcsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ddcsim
