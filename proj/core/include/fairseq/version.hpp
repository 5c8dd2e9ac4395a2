#pragma once

namespace fairseq {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fairseq
