#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace spa::test {

inline std::filesystem::path data_dir() { return SPA_TEST_DATA_DIR; }

/// Path of a benchmark netlist in either format, if present.
inline std::optional<std::filesystem::path> benchmark(const std::string& circuit) {
  for (const char* ext : {".isc", ".bench"}) {
    auto p = data_dir() / (circuit + ext);
    if (std::filesystem::exists(p)) return p;
  }
  return std::nullopt;
}

}  // namespace spa::test
