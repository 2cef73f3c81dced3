#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "json.hpp"
#include "manifest.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int thread_count(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("ROTORSHAPE_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
    throw rotorshape::cli::ConfigError("ROTORSHAPE_THREADS must be a positive integer");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rotorshape;
  CLI::App app{"Shape field-free molecular orientation: synthesis, pulse design and analysis"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int threads = 0;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--seed", seed, "random seed (overrides rng_seed)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--threads", threads, "worker threads (default: ROTORSHAPE_THREADS or config)")
      ->check(CLI::PositiveNumber);
  app.fallthrough();
  app.add_subcommand("run", "run the method named in the config");
  for (const auto& name : cli::command_names()) app.add_subcommand(name, "run " + name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const auto start = std::chrono::steady_clock::now();
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw cli::ConfigError("cannot read config '" + config_path + "'");
    std::ostringstream bytes;
    bytes << in.rdbuf();
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(bytes.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw cli::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw cli::ConfigError("config must be a JSON object");
    if (seed >= 0) doc["rng_seed"] = seed;
    if (!out_dir.empty()) doc["output_dir"] = out_dir;
    if (const int n = thread_count(threads); n > 0) doc["threads"] = n;

    cli::RunConfig cfg = cli::parse_config(doc, command);
    cfg.base_dir = std::filesystem::path(config_path).parent_path();
    const cli::CommandOutput output = cli::run_command(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto manifest = cli::make_manifest(cfg, bytes.str(), output, wall);
    std::ofstream(cfg.output_dir / "manifest.json", std::ios::binary) << manifest.dump(2) << '\n';
    for (const auto& w : output.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << output.results.dump() << '\n';
    return 0;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
