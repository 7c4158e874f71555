#pragma once

namespace botlex {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace botlex
