#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace ks {

inline constexpr const char* kVersion = "kellerpath 1.0.0";

/// Re-running a command with an identical manifest reproduces all numeric
/// outputs byte-for-byte (deterministic solvers, fixed iteration orders).
/// Timings are informational and live only here, never in numeric outputs.
struct RunManifest {
  std::string command;
  std::string version = kVersion;
  nlohmann::json params;
  std::vector<std::string> outputs;
  std::map<std::string, double> timings;
};

void write_manifest(const RunManifest& m, const std::string& dir);

/// Strict key=value config files: `#` comments, unknown keys are an error
/// (raised by the CLI against its known-flag table), parse errors carry
/// the line number.
std::map<std::string, std::string> config_load(const std::string& path);

}  // namespace ks
