#pragma once

namespace cpx {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cpx
