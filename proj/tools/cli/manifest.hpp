#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "commands.hpp"
#include "config.hpp"
#include "json.hpp"

namespace rotorshape::cli {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Run record: input hashes, seed, versions, effective config, outputs.
nlohmann::json make_manifest(const RunConfig& cfg, const std::string& config_bytes,
                             const CommandOutput& output, double wall_seconds);

}  // namespace rotorshape::cli
