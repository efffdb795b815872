#pragma once

namespace cmpol {

inline constexpr const char* version = "0.1.0";

}  // namespace cmpol
