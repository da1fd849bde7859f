#pragma once

namespace textmf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace textmf
