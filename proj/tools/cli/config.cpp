#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rotorshape::cli {

using nlohmann::json;

namespace {

std::string type_name(const json& v) { return v.type_name(); }

// Reads keys of one JSON object and remembers which ones were consumed, so
// that leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(label() + " must be an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  template <class T>
  T get(const std::string& key, T fallback) {
    used_.insert(key);
    if (!node_.contains(key)) {
      echo_[key] = fallback;
      return fallback;
    }
    const T value = convert<T>(node_.at(key), key);
    echo_[key] = value;
    return value;
  }

  template <class T>
  T require(const std::string& key) {
    used_.insert(key);
    if (!node_.contains(key)) throw ConfigError("missing required key '" + name(key) + "'");
    const T value = convert<T>(node_.at(key), key);
    echo_[key] = value;
    return value;
  }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return node_.at(key);
  }

  Section child(const std::string& key) {
    used_.insert(key);
    static const json empty = json::object();
    return Section(node_.contains(key) ? node_.at(key) : empty, name(key));
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!used_.count(key)) throw ConfigError("unknown key '" + name(key) + "'");
    }
  }

  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  json& echo() { return echo_; }

 private:
  std::string label() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

  template <class T>
  T convert(const json& v, const std::string& key) const {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw wrong(key, "boolean", v);
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw wrong(key, "string", v);
      return v.get<std::string>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw wrong(key, "integer", v);
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) return v.get<T>();
        if (v.get<long long>() < 0) throw ConfigError("'" + name(key) + "' must be >= 0");
        return static_cast<T>(v.get<long long>());
      } else {
        return v.get<T>();
      }
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      if (!v.is_array()) throw wrong(key, "array of numbers", v);
      std::vector<double> out;
      for (const auto& x : v) {
        if (!x.is_number()) throw wrong(key, "array of numbers", v);
        out.push_back(x.get<double>());
      }
      return out;
    } else {
      if (!v.is_number()) throw wrong(key, "number", v);
      const double d = v.get<double>();
      if (!std::isfinite(d)) throw ConfigError("'" + name(key) + "' must be finite");
      return d;
    }
  }

  ConfigError wrong(const std::string& key, const char* expected, const json& v) const {
    return ConfigError("'" + name(key) + "' must be a " + expected + ", got " + type_name(v));
  }

  const json& node_;
  std::string path_;
  std::set<std::string> used_;
  json echo_ = json::object();
};

bool needs_molecule(const std::string& command) { return command != "derivative"; }
bool needs_waveform(const std::string& command) {
  return command == "synthesize" || command == "grape" || command == "anneal" || command == "scan";
}

Molecule parse_molecule(Section& root, json& echo) {
  if (!root.has("molecule")) throw ConfigError("missing required key 'molecule'");
  const json& m = root.raw("molecule");
  if (m.is_string()) {
    try {
      Molecule mol = Molecule::preset(m.get<std::string>());
      echo["molecule"] = m;
      return mol;
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("'molecule': ") + e.what());
    }
  }
  Section s(m, "molecule");
  const auto name = s.get<std::string>("name", "custom");
  const auto b = s.require<double>("B_cm1");
  const auto mu = s.require<double>("mu0_debye");
  s.finish();
  echo["molecule"] = s.echo();
  try {
    return Molecule::from_spectroscopic(name, b, mu);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("'molecule': ") + e.what());
  }
}

WaveformSpec parse_waveform(Section s) {
  WaveformSpec w;
  const auto kind = s.require<std::string>("kind");
  try {
    w.kind = parse_waveform_kind(kind);
  } catch (const InvalidArgument&) {
    throw ConfigError("'waveform.kind' must be rectangular, triangular or sawtooth");
  }
  w.amplitude = s.get<double>("A0", w.amplitude);
  w.ratio = s.get<double>("r", w.ratio);
  w.sigma_smoothing = s.get<bool>("sigma", w.sigma_smoothing);
  w.sigma_order = s.get<int>("N_sigma", w.sigma_order);
  s.finish();
  try {
    w.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("'waveform': ") + e.what());
  }
  return w;
}

template <class F>
void checked(const std::string& block, F&& validate) {
  try {
    validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError("'" + block + "': " + e.what());
  }
}

}  // namespace

std::filesystem::path RunConfig::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

RunConfig parse_config(const json& doc, const std::string& command_in) {
  Section root(doc, "");
  RunConfig cfg;
  json echo = json::object();

  std::string command = command_in;
  if (root.has("method") || command == "run") {
    const auto method = root.require<std::string>("method");
    if (command == "run") {
      command = method;
    } else if (method != command) {
      throw ConfigError("'method' is '" + method + "' but the subcommand is '" + command + "'");
    }
  }
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    throw ConfigError("unknown method '" + command + "'");
  }
  cfg.command = command;
  echo["method"] = command;

  if (needs_molecule(command)) {
    cfg.molecule = parse_molecule(root, echo);
  } else if (root.has("molecule")) {
    cfg.molecule = parse_molecule(root, echo);
  }
  cfg.temperature = root.get<double>("temperature_K", 0.0);
  if (cfg.temperature < 0.0) throw ConfigError("'temperature_K' must be >= 0");
  if (needs_waveform(command) || root.has("waveform")) {
    if (!root.has("waveform")) throw ConfigError("missing required key 'waveform'");
    auto ws = root.child("waveform");
    cfg.waveform = parse_waveform(ws);
    echo["waveform"] = {{"kind", std::string(waveform_kind_name(cfg.waveform.kind))},
                        {"A0", cfg.waveform.amplitude},
                        {"r", cfg.waveform.ratio},
                        {"sigma", cfg.waveform.sigma_smoothing},
                        {"N_sigma", cfg.waveform.sigma_order}};
  }
  cfg.j_max = root.get<int>("j_max", 0);
  if (cfg.j_max < 0) throw ConfigError("'j_max' must be >= 1 (or 0 for the default rule)");
  cfg.seed = root.get<std::uint64_t>("rng_seed", 1);
  cfg.threads = root.get<int>("threads", 1);
  if (cfg.threads < 1) throw ConfigError("'threads' must be >= 1");
  cfg.output_dir = root.get<std::string>("output_dir", "out");

  {
    auto s = root.child("synthesis");
    const auto policy = s.get<std::string>("policy", "error");
    if (policy == "error") {
      cfg.synthesis.policy = FeasibilityPolicy::kError;
    } else if (policy == "rescale") {
      cfg.synthesis.policy = FeasibilityPolicy::kRescale;
    } else {
      throw ConfigError("'synthesis.policy' must be 'error' or 'rescale'");
    }
    cfg.synthesis.zero_threshold = s.get<double>("zero_threshold", cfg.synthesis.zero_threshold);
    s.finish();
    echo["synthesis"] = s.echo();
  }
  {
    auto s = root.child("output");
    cfg.output.periods = s.get<int>("periods", cfg.output.periods);
    cfg.output.samples_per_period = s.get<int>("samples_per_period", cfg.output.samples_per_period);
    s.finish();
    if (cfg.output.periods < 1) throw ConfigError("'output.periods' must be >= 1");
    if (cfg.output.samples_per_period < 2) throw ConfigError("'output.samples_per_period' must be >= 2");
    echo["output"] = s.echo();
  }
  {
    auto s = root.child("grape");
    auto& g = cfg.grape.config;
    g.slices = s.get<int>("slices", g.slices);
    g.substeps = s.get<int>("substeps", g.substeps);
    g.max_iterations = s.get<int>("max_iterations", g.max_iterations);
    g.gradient_tolerance = s.get<double>("gradient_tolerance", g.gradient_tolerance);
    g.stagnation_tolerance = s.get<double>("stagnation_tolerance", g.stagnation_tolerance);
    g.stagnation_window = s.get<int>("stagnation_window", g.stagnation_window);
    g.amplitude_bound = s.get<double>("amplitude_bound", g.amplitude_bound);
    g.ramp_fraction = s.get<double>("ramp_fraction", g.ramp_fraction);
    g.initial_scale = s.get<double>("initial_scale", g.initial_scale);
    g.target_overlap = s.get<double>("target_overlap", g.target_overlap);
    const auto method = s.get<std::string>("method", "lbfgs");
    if (method == "lbfgs") {
      g.method = AscentMethod::kLbfgs;
    } else if (method == "gradient") {
      g.method = AscentMethod::kGradient;
    } else {
      throw ConfigError("'grape.method' must be 'lbfgs' or 'gradient'");
    }
    g.lbfgs_memory = s.get<int>("lbfgs_memory", g.lbfgs_memory);
    cfg.grape.padding = s.get<int>("padding", cfg.grape.padding);
    s.finish();
    g.seed = cfg.seed;
    checked("grape", [&] { g.validate(); });
    if (cfg.grape.padding < 0) throw ConfigError("'grape.padding' must be >= 0");
    echo["grape"] = s.echo();
  }
  {
    auto s = root.child("anneal");
    auto& a = cfg.anneal.config;
    a.initial_temperature = s.get<double>("T0", a.initial_temperature);
    a.knots = s.get<int>("N", a.knots);
    a.kappa = s.get<double>("kappa", a.kappa);
    a.epsilon = s.get<double>("epsilon", a.epsilon);
    a.max_iterations = s.get<int>("N_MC", a.max_iterations);
    a.initial_amplitude = s.get<double>("E0", a.initial_amplitude);
    a.cooling_fraction = s.get<double>("p", a.cooling_fraction);
    a.cooling_epoch = s.get<int>("cooling_epoch", a.cooling_epoch);
    a.temperature_floor = s.get<double>("temperature_floor", a.temperature_floor);
    a.area_constrained = s.get<bool>("area_constrained", a.area_constrained);
    a.stop_distance = s.get<double>("stop_distance", a.stop_distance);
    a.steps_per_period = s.get<int>("steps_per_period", a.steps_per_period);
    cfg.anneal.seeds = s.get<int>("seeds", cfg.anneal.seeds);
    cfg.anneal.smoothed_target = s.get<bool>("smoothed_target", cfg.anneal.smoothed_target);
    s.finish();
    a.seed = cfg.seed;
    checked("anneal", [&] { a.validate(); });
    if (cfg.anneal.seeds < 1) throw ConfigError("'anneal.seeds' must be >= 1");
    echo["anneal"] = s.echo();
  }
  {
    auto s = root.child("evolve");
    auto& e = cfg.evolve;
    e.field_csv = s.get<std::string>("field_csv", "");
    e.field_model = s.get<std::string>("field_model", "");
    e.amplitude_factor = s.get<double>("amplitude_factor", e.amplitude_factor);
    e.steps_per_period = s.get<int>("steps_per_period", e.steps_per_period);
    s.finish();
    if (command == "evolve" && e.field_csv.empty() == e.field_model.empty()) {
      throw ConfigError("'evolve' needs exactly one of 'evolve.field_csv' and 'evolve.field_model'");
    }
    if (e.steps_per_period < 1) throw ConfigError("'evolve.steps_per_period' must be >= 1");
    echo["evolve"] = s.echo();
  }
  {
    auto s = root.child("fit");
    auto& f = cfg.fit;
    f.field_csv = s.get<std::string>("field_csv", "");
    f.initial_model = s.get<std::string>("initial_model", f.initial_model);
    f.options.starts = s.get<int>("starts", f.options.starts);
    f.options.max_evaluations = s.get<int>("max_evaluations", f.options.max_evaluations);
    f.options.fit_em = s.get<bool>("fit_em", f.options.fit_em);
    s.finish();
    f.options.seed = cfg.seed;
    if (command == "fit-field" && f.field_csv.empty()) {
      throw ConfigError("missing required key 'fit.field_csv'");
    }
    if (f.options.starts < 1) throw ConfigError("'fit.starts' must be >= 1");
    echo["fit"] = s.echo();
  }
  {
    auto s = root.child("scan");
    auto& sc = cfg.scan;
    sc.field_csv = s.get<std::string>("field_csv", "");
    sc.field_model = s.get<std::string>("field_model", sc.field_csv.empty() ? sc.field_model : "");
    sc.temperatures = s.get<std::vector<double>>("temperatures", sc.temperatures);
    sc.amplitude_factors = s.get<std::vector<double>>("amplitude_factors", sc.amplitude_factors);
    sc.options.steps_per_period = s.get<int>("steps_per_period", sc.options.steps_per_period);
    sc.options.trace_samples = s.get<int>("trace_samples", sc.options.trace_samples);
    s.finish();
    if (command == "scan") {
      if (sc.field_csv.empty() == sc.field_model.empty()) {
        throw ConfigError("'scan' needs exactly one of 'scan.field_csv' and 'scan.field_model'");
      }
      if (sc.temperatures.empty()) throw ConfigError("'scan.temperatures' must not be empty");
      if (sc.amplitude_factors.empty()) throw ConfigError("'scan.amplitude_factors' must not be empty");
      for (double t : sc.temperatures) {
        if (t < 0.0) throw ConfigError("'scan.temperatures' must be >= 0");
      }
    }
    if (sc.options.steps_per_period < 1) throw ConfigError("'scan.steps_per_period' must be >= 1");
    if (sc.options.trace_samples < 2) throw ConfigError("'scan.trace_samples' must be >= 2");
    echo["scan"] = s.echo();
  }
  {
    auto s = root.child("derivative");
    auto& d = cfg.derivative;
    d.trace_csv = s.get<std::string>("trace_csv", "");
    d.column = s.get<std::string>("column", d.column);
    d.periodic = s.get<bool>("periodic", d.periodic);
    s.finish();
    if (command == "derivative" && d.trace_csv.empty()) {
      throw ConfigError("missing required key 'derivative.trace_csv'");
    }
    echo["derivative"] = s.echo();
  }
  root.finish();

  for (const auto& [key, value] : root.echo().items()) echo[key] = value;
  echo["method"] = command;
  cfg.effective = std::move(echo);
  return cfg;
}

}  // namespace rotorshape::cli
