#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polaron/cli/config.hpp"

namespace polaron::cli {

enum class Command {
  Propagators,
  Msd,
  DiffusionSweep,
  Energy,
  Squeezing,
  NonMarkov,
  JDistance,
  Validate
};

std::optional<Command> parse_command(std::string_view name);
const char* command_name(Command c);
std::vector<std::string> command_names();

struct RunOptions {
  std::optional<std::vector<int>> dimensions;
  std::optional<std::filesystem::path> output;
  std::optional<double> tolerance;
  bool force_out_of_regime = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumericFailure = 1;
inline constexpr int kExitRegimeWarning = 2;

struct RunResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;  // CSVs written
  std::filesystem::path manifest;
  std::vector<std::string> warnings;
  std::string error;
};

/// Runs one command for every requested dimension, writing
/// <cmd>_d<d>.csv and <cmd>_manifest.json into the output directory.
///
/// Regime warnings (coupling at or above the Froehlich bound, or a
/// high-temperature formula requested below its threshold) skip the affected
/// dimension unless force_out_of_regime is set; either way the exit code is 2.
/// Numerical failures give exit code 1.
RunResult run_scenario(Command cmd, const ScenarioConfig& cfg, const RunOptions& opts = {});

}  // namespace polaron::cli
