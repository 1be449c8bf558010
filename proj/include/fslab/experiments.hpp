#pragma once

/// @file experiments.hpp
/// Orchestration layer behind the CLI subcommands: config -> computation ->
/// persisted RunRecord.  Every command is deterministic given (config, seed)
/// and writes its artifacts atomically under an output directory.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fslab/config.hpp"
#include "fslab/exec.hpp"

namespace fslab {

struct GateResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string cmp;  ///< relation the gate asserts, e.g. "<", ">", "==0"
};

struct RunRecord {
  std::string command;
  nlohmann::json config_echo;
  std::uint64_t seed = 0;
  nlohmann::json results;
  std::vector<GateResult> gates;
  std::map<std::string, std::string> artifacts;  ///< name -> path
  double wall_seconds = 0.0;
  std::string version;

  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// Command-line overrides applied on top of the config file.
struct CliOverrides {
  std::optional<std::string> out;
  std::optional<long long> seed;
  std::optional<int> threads;
};

RunRecord cmd_derive(const Config& cfg, const CliOverrides& cli);
RunRecord cmd_groundstate(const Config& cfg, const CliOverrides& cli);
RunRecord cmd_constant(const Config& cfg, const CliOverrides& cli);
RunRecord cmd_evolve(const Config& cfg, const CliOverrides& cli);
RunRecord cmd_stability(const Config& cfg, const CliOverrides& cli);
RunRecord cmd_wellcheck(const Config& cfg, const CliOverrides& cli);
RunRecord cmd_sweep(const Config& cfg, const CliOverrides& cli);
RunRecord cmd_selftest(const CliOverrides& cli);

/// Dispatch by subcommand name; throws std::invalid_argument for unknown
/// names.  An empty config is synthesized when path is empty (selftest).
RunRecord run_command(const std::string& name, const std::string& config_path,
                      const CliOverrides& cli);

} // namespace fslab
