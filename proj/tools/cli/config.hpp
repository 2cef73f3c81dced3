#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rotorshape/annealer.hpp"
#include "rotorshape/error.hpp"
#include "rotorshape/fit.hpp"
#include "rotorshape/grape.hpp"
#include "rotorshape/molecule.hpp"
#include "rotorshape/robustness.hpp"
#include "rotorshape/synthesis.hpp"
#include "rotorshape/waveform.hpp"

namespace rotorshape::cli {

/// Configuration problem; the message names the offending key.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct OutputBlock {
  int periods = 2;              // post-pulse trace length in Tr
  int samples_per_period = 400;
};

struct GrapeBlock {
  GrapeConfig config;
  int padding = 6;
};

struct AnnealBlock {
  SAConfig config;
  int seeds = 1;
  bool smoothed_target = false;
};

struct EvolveBlock {
  std::string field_csv;    // t_au, E_au
  std::string field_model;  // preset name or key-value file
  double amplitude_factor = 1.0;
  int steps_per_period = kDefaultStepsPerPeriod;
};

struct FitBlock {
  std::string field_csv;
  std::string initial_model = "a";
  FitOptions options;
};

struct ScanBlock {
  std::string field_csv;
  std::string field_model = "a";
  std::vector<double> temperatures{15.0, 30.0, 50.0};
  std::vector<double> amplitude_factors{0.25, 0.5, 1.0, 1.25, 1.5};
  ScanOptions options;
};

struct DerivativeBlock {
  std::string trace_csv;
  std::string column = "cos_theta";
  bool periodic = true;
};

struct RunConfig {
  std::string command;
  std::optional<Molecule> molecule;
  double temperature = 0.0;  // K
  WaveformSpec waveform;
  int j_max = 0;             // 0: default rule
  std::uint64_t seed = 1;
  int threads = 1;
  std::filesystem::path output_dir = "out";
  std::filesystem::path base_dir;  // relative input paths resolve here

  SynthesisOptions synthesis;
  OutputBlock output;
  GrapeBlock grape;
  AnnealBlock anneal;
  EvolveBlock evolve;
  FitBlock fit;
  ScanBlock scan;
  DerivativeBlock derivative;

  /// Every setting after defaults were injected, as echoed to the manifest.
  nlohmann::json effective;

  std::filesystem::path resolve(const std::string& path) const;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"synthesize", "evolve", "grape",      "anneal",
                                              "fit-field",  "scan",   "derivative"};
  return names;
}

/// Strictly parses `doc` for `command` ("run" takes the command from the
/// "method" key). Unknown keys, wrong types and missing required keys throw
/// ConfigError.
RunConfig parse_config(const nlohmann::json& doc, const std::string& command);

}  // namespace rotorshape::cli
