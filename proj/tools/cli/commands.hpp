#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace rotorshape::cli {

struct CommandOutput {
  std::vector<std::filesystem::path> files;  // relative to the output directory
  std::vector<std::filesystem::path> inputs;  // files read besides the config
  nlohmann::json results = nlohmann::json::object();
  std::vector<std::string> warnings;
};

/// Runs the configured command, writing its CSV artifacts into
/// cfg.output_dir (created if needed).
CommandOutput run_command(const RunConfig& cfg);

}  // namespace rotorshape::cli
