#include "manifest.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/Core>
#include <openssl/evp.h>

#include "rotorshape/error.hpp"
#include "version.hpp"

namespace rotorshape::cli {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return sha256_hex(ss.str());
}

json make_manifest(const RunConfig& cfg, const std::string& config_bytes, const CommandOutput& output,
                   double wall_seconds) {
  json inputs = json::array();
  inputs.push_back({{"role", "config"}, {"sha256", sha256_hex(config_bytes)}});
  for (const auto& p : output.inputs) {
    inputs.push_back({{"role", "input"}, {"path", p.string()}, {"sha256", sha256_file(p)}});
  }
  json outputs = json::array();
  for (const auto& f : output.files) {
    outputs.push_back({{"path", f.generic_string()}, {"sha256", sha256_file(cfg.output_dir / f)}});
  }
  char eigen[32];
  std::snprintf(eigen, sizeof eigen, "%d.%d.%d", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION);
  return json{{"command", cfg.command},
              {"seed", cfg.seed},
              {"inputs", inputs},
              {"versions", {{"rotorshape", kVersion}, {"eigen", eigen}, {"compiler", __VERSION__}}},
              {"wall_time_s", wall_seconds},
              {"config", cfg.effective},
              {"outputs", outputs},
              {"results", output.results},
              {"warnings", output.warnings}};
}

}  // namespace rotorshape::cli
