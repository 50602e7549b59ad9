#pragma once

#include <stdexcept>
#include <string>

namespace splace {

/// Bad configuration: unknown keys, invalid parameter combinations.
/// Mapped to exit code 2 by the CLI.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad input data: unreadable files, malformed formats, non-finite values.
/// Mapped to exit code 3 by the CLI.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// The solver cannot reach the requested target (e.g. clique size
/// unattainable even at threshold 0). Mapped to exit code 4 by the CLI.
struct InfeasibleError : std::runtime_error {
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace splace
