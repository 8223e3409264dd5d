#pragma once

namespace mal {

inline constexpr const char* kToolName = "mal";
inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

}  // namespace mal
