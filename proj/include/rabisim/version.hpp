#pragma once

namespace rabisim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rabisim
