#pragma once

namespace gasket {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gasket
