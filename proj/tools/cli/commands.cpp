#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rotorshape/annealer.hpp"
#include "rotorshape/csv.hpp"
#include "rotorshape/derivative.hpp"
#include "rotorshape/field_model.hpp"
#include "rotorshape/fit.hpp"
#include "rotorshape/grape.hpp"
#include "rotorshape/observables.hpp"
#include "rotorshape/propagator.hpp"
#include "rotorshape/robustness.hpp"
#include "rotorshape/spectrum.hpp"
#include "rotorshape/synthesis.hpp"
#include "rotorshape/thermal.hpp"
#include "rotorshape/units.hpp"
#include "version.hpp"

namespace rotorshape::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kFieldSamples = 4096;

class Writer {
 public:
  Writer(const RunConfig& cfg, CommandOutput& out) : cfg_(cfg), out_(out) {
    fs::create_directories(cfg.output_dir);
  }

  void write(const fs::path& name, CsvTable table) {
    std::vector<std::string> header{std::string("rotorshape ") + kVersion + " " + cfg_.command,
                                    "seed=" + std::to_string(cfg_.seed)};
    if (cfg_.molecule) header.push_back("molecule=" + cfg_.molecule->name());
    header.insert(header.end(), table.comments.begin(), table.comments.end());
    table.comments = std::move(header);
    const fs::path path = cfg_.output_dir / name;
    fs::create_directories(path.parent_path());
    write_csv(path, table);
    out_.files.push_back(name);
  }

  void write_text(const fs::path& name, const std::string& text) {
    const fs::path path = cfg_.output_dir / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path.string() + "' for writing");
    f << text;
    out_.files.push_back(name);
  }

 private:
  const RunConfig& cfg_;
  CommandOutput& out_;
};

CsvTable table(std::vector<std::string> columns, std::vector<std::string> comments = {}) {
  CsvTable t;
  t.columns = std::move(columns);
  t.comments = std::move(comments);
  return t;
}

std::vector<double> trace_times(const RunConfig& cfg) {
  const int n = cfg.output.periods * cfg.output.samples_per_period;
  std::vector<double> tau(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) tau[static_cast<std::size_t>(i)] = static_cast<double>(i) / cfg.output.samples_per_period;
  return tau;
}

CsvTable field_table(const Field& field) {
  auto t = table({"t_au", "E_au"});
  const double span = field.duration();
  for (int i = 0; i <= kFieldSamples; ++i) {
    const double time = span * i / kFieldSamples;
    t.add_row({time, field(time)});
  }
  return t;
}

double peak_field(const Field& field) {
  double peak = 0.0;
  const double span = field.duration();
  for (int i = 0; i <= 8 * kFieldSamples; ++i) peak = std::max(peak, std::abs(field(span * i / (8 * kFieldSamples))));
  return peak;
}

CsvTable spectrum_table(const Field& field, double period) {
  const double span = field.duration();
  std::vector<double> e(static_cast<std::size_t>(kFieldSamples));
  const double dt = span / kFieldSamples;
  for (int i = 0; i < kFieldSamples; ++i) e[static_cast<std::size_t>(i)] = field((i + 0.5) * dt);
  const Spectrum s = field_spectrum(e, dt, period, 8);
  double top = 0.0;
  for (double m : s.magnitude) top = std::max(top, m);
  auto t = table({"f_over_fr", "magnitude", "normalized"});
  for (std::size_t k = 0; k < s.frequency.size(); ++k) {
    if (s.frequency[k] > 64.0) break;
    t.add_row({s.frequency[k], s.magnitude[k], top > 0.0 ? s.magnitude[k] / top : 0.0});
  }
  return t;
}

FourierVector unit_period(FourierVector k) {
  k.period = 1.0;
  return k;
}

void report_truncation(const PropagationReport& report, CommandOutput& out) {
  if (report.truncation_warning()) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "population in the top two basis levels reached %.3g (> 1e-4); increase j_max",
                  report.max_top_population);
    out.warnings.emplace_back(buf);
  }
}

int require_j_max(const RunConfig& cfg) {
  if (cfg.j_max < 1) throw ConfigError("missing required key 'j_max'");
  return cfg.j_max;
}

int thermal_j_max(const RunConfig& cfg, double temperature) {
  return cfg.j_max > 0 ? cfg.j_max : default_j_max(*cfg.molecule, temperature);
}

AnalyticFieldModel load_model(const RunConfig& cfg, const std::string& spec, CommandOutput& out) {
  const auto presets = AnalyticFieldModel::preset_names();
  if (std::find(presets.begin(), presets.end(), spec) != presets.end()) return AnalyticFieldModel::preset(spec);
  const fs::path path = cfg.resolve(spec);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read field model '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  out.inputs.push_back(path);
  return parse_key_value(ss.str());
}

SampledField load_field_csv(const RunConfig& cfg, const std::string& spec, CommandOutput& out) {
  const fs::path path = cfg.resolve(spec);
  const CsvTable t = read_csv(path);
  out.inputs.push_back(path);
  return SampledField(t.column("t_au"), t.column("E_au"));
}

// ---------------------------------------------------------------------------

void synthesize_command(const RunConfig& cfg, Writer& w, CommandOutput& out) {
  const int j_max = require_j_max(cfg);
  const FourierVector k = analytic_fourier(cfg.waveform, j_max);
  const SynthesisResult r = synthesize(k, cfg.synthesis);
  const FourierVector realized = state_to_fourier(r.state);

  auto state = table({"j", "re", "im", "modulus", "phase_over_pi"});
  for (int j = 0; j <= j_max; ++j) {
    const Complex c = r.state.amplitude(j);
    state.add_row({static_cast<double>(j), c.real(), c.imag(), std::abs(c), std::arg(c) / std::numbers::pi});
  }
  w.write("state.csv", std::move(state));

  auto fourier = table({"j", "target_re", "target_im", "realized_re", "realized_im"});
  for (std::size_t j = 0; j < k.size(); ++j) {
    fourier.add_row({static_cast<double>(j), k.coefficients[j].real(), k.coefficients[j].imag(),
                     realized.coefficients[j].real(), realized.coefficients[j].imag()});
  }
  w.write("fourier.csv", std::move(fourier));

  const double b = cfg.molecule->rotational_constant();
  const double period = cfg.molecule->period();
  const FourierVector scaled = k.scaled(r.applied_scale);
  auto trace = table({"tau_over_Tr", "cos_theta", "truncated_target", "ideal_signal"});
  for (double tau : trace_times(cfg)) {
    const double c = expectation_cos(free_evolve(r.state, b, tau * period));
    trace.add_row({tau, c, fourier_to_value(scaled, tau), r.applied_scale * sample_signal(cfg.waveform, tau)});
  }
  w.write("trace.csv", std::move(trace));
  out.results["applied_scale"] = r.applied_scale;
  out.results["max_feasible_scale"] = max_feasible_scale(k);
  if (r.applied_scale < 1.0) {
    out.warnings.push_back("target rescaled by " + format_double(r.applied_scale) + " to be realizable");
  }
}

void grape_command(const RunConfig& cfg, Writer& w, CommandOutput& out) {
  if (cfg.temperature != 0.0) throw ConfigError("'temperature_K' must be 0 for grape (zero-temperature design)");
  const int j_max = require_j_max(cfg);
  const FourierVector k = analytic_fourier(cfg.waveform, j_max);
  const SynthesisResult target = synthesize(k, cfg.synthesis);
  const Molecule& mol = *cfg.molecule;
  const double period = mol.period();
  const auto run = optimize_to_target(target.state, Hamiltonian::of(mol), period, cfg.grape.config,
                                      cfg.grape.padding);
  const GrapeResult& r = run.result;

  w.write("field.csv", field_table(r.field));
  w.write("field_spectrum.csv", spectrum_table(r.field, period));
  auto history = table({"iteration", "F0", "overlap_squared", "step", "evaluations"});
  for (const auto& h : r.history) {
    history.add_row({static_cast<double>(h.iteration), h.real_part, h.overlap_squared, h.step,
                     static_cast<double>(h.evaluations)});
  }
  w.write("history.csv", std::move(history));

  const FourierVector scaled = k.scaled(target.applied_scale);
  auto trace = table({"tau_over_Tr", "cos_theta", "target"});
  for (double tau : trace_times(cfg)) {
    trace.add_row({tau, expectation_cos(free_evolve(r.final_state, mol.rotational_constant(), tau * period)),
                   fourier_to_value(scaled, tau)});
  }
  w.write("trace.csv", std::move(trace));

  const double peak = peak_field(r.field);
  out.results["F0"] = r.fidelity.real_part;
  out.results["overlap_squared"] = r.fidelity.overlap_squared;
  out.results["iterations"] = r.history.empty() ? 0 : r.history.back().iteration;
  out.results["converged"] = r.converged;
  out.results["stagnated"] = r.stagnated;
  out.results["peak_field_au"] = peak;
  out.results["peak_field_V_per_m"] = unit_convert(peak, Unit::kAuField, Unit::kVoltPerMeter);
  out.results["basis_padding"] = run.padding;
  out.results["max_top_population"] = r.report.max_top_population;
  out.results["applied_scale"] = target.applied_scale;
  if (r.stagnated) out.warnings.emplace_back("optimization stagnated");
  report_truncation(r.report, out);
}

void anneal_command(const RunConfig& cfg, Writer& w, CommandOutput& out) {
  const Molecule& mol = *cfg.molecule;
  const int j_max = thermal_j_max(cfg, cfg.temperature);
  const ThermalEnsemble ensemble = boltzmann_channels(mol, cfg.temperature, j_max);
  WaveformSpec spec = cfg.waveform;
  spec.sigma_smoothing = cfg.anneal.smoothed_target;
  const FourierVector target = analytic_fourier(spec, j_max);

  SAConfig sa = cfg.anneal.config;
  sa.threads = cfg.threads;
  std::vector<AnnealResult> runs;
  if (cfg.anneal.seeds == 1) {
    runs.push_back(anneal(ensemble, target, sa));
  } else {
    auto seeds = table({"seed", "best_F", "area"});
    for (int s = 0; s < cfg.anneal.seeds; ++s) {
      SAConfig c = sa;
      c.seed = sa.seed + static_cast<std::uint64_t>(s);
      runs.push_back(anneal(ensemble, target, c));
      seeds.add_row({static_cast<double>(c.seed), runs.back().best_distance, runs.back().best_field.area()});
    }
    w.write("seeds.csv", std::move(seeds));
  }
  const auto best_it = std::min_element(runs.begin(), runs.end(), [](const auto& a, const auto& b) {
    return a.best_distance < b.best_distance;
  });
  const AnnealResult& best = *best_it;
  const auto best_seed = sa.seed + static_cast<std::uint64_t>(best_it - runs.begin());

  auto fc = field_table(best.best_field);
  fc.comments.push_back("best chain seed=" + std::to_string(best_seed));
  w.write("field.csv", std::move(fc));
  auto knots = table({"t_au", "E_au"});
  for (std::size_t i = 0; i < best.best_field.knot_count(); ++i) {
    knots.add_row({best.best_field.knot_time(i), best.best_field.knots()[i]});
  }
  w.write("knots.csv", std::move(knots));

  auto history = table({"iteration", "F", "best_F", "T_MC", "accepted", "area"});
  for (const auto& h : best.history) {
    history.add_row({static_cast<double>(h.iteration), h.distance, h.best_distance, h.temperature,
                     h.accepted ? 1.0 : 0.0, h.area});
  }
  w.write("history.csv", std::move(history));

  const FourierVector measured = unit_period(best.best_fourier);
  auto trace = table({"tau_over_Tr", "cos_theta", "target"});
  for (double tau : trace_times(cfg)) {
    trace.add_row({tau, fourier_to_value(measured, tau), fourier_to_value(target, tau)});
  }
  w.write("trace.csv", std::move(trace));

  auto fourier = table({"j", "abs_measured", "abs_target", "measured_re", "measured_im", "target_re", "target_im"});
  for (std::size_t j = 0; j < target.size(); ++j) {
    const auto m = measured.coefficients[j];
    const auto t = target.coefficients[j];
    fourier.add_row({static_cast<double>(j), std::abs(m), std::abs(t), m.real(), m.imag(), t.real(), t.imag()});
  }
  w.write("fourier.csv", std::move(fourier));

  out.results["best_F"] = best.best_distance;
  out.results["best_seed"] = best_seed;
  out.results["area"] = best.best_field.area();
  out.results["iterations"] = best.history.back().iteration;
  out.results["j_max"] = j_max;
  out.results["channels"] = ensemble.channels.size();
  report_truncation(best.report, out);
}

void evolve_command(const RunConfig& cfg, Writer& w, CommandOutput& out) {
  const Molecule& mol = *cfg.molecule;
  const double period = mol.period();
  std::unique_ptr<Field> base;
  if (!cfg.evolve.field_csv.empty()) {
    base = std::make_unique<SampledField>(load_field_csv(cfg, cfg.evolve.field_csv, out));
  } else {
    base = std::make_unique<ModelField>(load_model(cfg, cfg.evolve.field_model, out), period);
  }
  const ScaledField field(*base, cfg.evolve.amplitude_factor);
  const int j_max = thermal_j_max(cfg, cfg.temperature);
  const ThermalEnsemble ensemble = boltzmann_channels(mol, cfg.temperature, j_max);
  const int steps = std::max(1, static_cast<int>(std::lround(cfg.evolve.steps_per_period * field.duration() / period)));
  const EnsemblePropagator propagator(ensemble, {steps, cfg.threads});
  PropagationReport report;
  const ThermalEnsemble post = propagator.propagate(field, &report);

  auto trace = table({"tau_over_Tr", "cos_theta", "cos3_theta", "cos5_theta"});
  for (double tau : trace_times(cfg)) {
    double c1 = 0.0, c3 = 0.0, c5 = 0.0;
    for (const auto& ch : post.channels) {
      const RotorState s = free_evolve(ch.state, mol.rotational_constant(), tau * period);
      c1 += ch.weight * expectation_cos(s);
      c3 += ch.weight * expectation_cos_power(s, 3);
      c5 += ch.weight * expectation_cos_power(s, 5);
    }
    trace.add_row({tau, c1, c3, c5});
  }
  w.write("trace.csv", std::move(trace));

  const int stride = std::max(1, steps / cfg.output.samples_per_period);
  auto during = table({"t_au", "cos_theta"});
  for (const auto& [t, c] : propagator.trace_during(field, stride)) during.add_row({t, c});
  w.write("during.csv", std::move(during));

  const FourierVector k = unit_period(measure_fourier(post));
  auto fourier = table({"j", "re", "im", "abs"});
  for (std::size_t j = 0; j < k.size(); ++j) {
    fourier.add_row({static_cast<double>(j), k.coefficients[j].real(), k.coefficients[j].imag(), std::abs(k.coefficients[j])});
  }
  w.write("fourier.csv", std::move(fourier));
  out.results["j_max"] = j_max;
  out.results["channels"] = ensemble.channels.size();
  out.results["max_top_population"] = report.max_top_population;
  report_truncation(report, out);
}

void fit_command(const RunConfig& cfg, Writer& w, CommandOutput& out) {
  const double period = cfg.molecule->period();
  const fs::path path = cfg.resolve(cfg.fit.field_csv);
  const CsvTable samples = read_csv(path);
  out.inputs.push_back(path);
  const auto t = samples.column("t_au");
  const auto e = samples.column("E_au");
  std::vector<double> s(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) s[i] = t[i] / period;
  const AnalyticFieldModel guess = load_model(cfg, cfg.fit.initial_model, out);
  FitOptions options = cfg.fit.options;
  options.threads = cfg.threads;
  const FitResult r = fit_model(s, e, guess, options);

  w.write_text("model.txt", to_key_value(r.model));
  auto fit = table({"t_au", "E_samples", "E_model"});
  for (std::size_t i = 0; i < t.size(); ++i) fit.add_row({t[i], e[i], r.model.value(s[i])});
  w.write("fit.csv", std::move(fit));
  out.results["residual_rms"] = r.residual;
  out.results["initial_residual_rms"] = r.initial_residual;
  out.results["improved"] = r.improved;
  out.results["degenerate"] = r.degenerate;
  if (!r.improved) out.warnings.emplace_back("fit did not improve on the initial guess");
  if (r.degenerate) out.warnings.emplace_back("degenerate fit: the fitted field is identically zero");
}

std::string point_name(double temperature, double factor) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "traces/trace_T%g_x%g.csv", temperature, factor);
  return buf;
}

void scan_command(const RunConfig& cfg, Writer& w, CommandOutput& out) {
  const Molecule& mol = *cfg.molecule;
  std::unique_ptr<Field> field;
  if (!cfg.scan.field_csv.empty()) {
    field = std::make_unique<SampledField>(load_field_csv(cfg, cfg.scan.field_csv, out));
  } else {
    field = std::make_unique<ModelField>(load_model(cfg, cfg.scan.field_model, out), mol.period());
  }
  const FourierVector target = analytic_fourier(cfg.waveform, thermal_j_max(cfg, cfg.temperature));
  ScanOptions options = cfg.scan.options;
  options.j_max = cfg.j_max;
  options.threads = cfg.threads;
  const auto points = robustness_scan(*field, mol, cfg.scan.temperatures, cfg.scan.amplitude_factors,
                                      target, options);
  auto summary = table({"temperature_K", "amp_factor", "fourier_distance", "shape_distance"});
  json rows = json::array();
  for (const auto& p : points) {
    summary.add_row({p.temperature, p.factor, p.distance, p.shape_distance});
    auto trace = table({"tau_over_Tr", "cos_theta"});
    for (std::size_t i = 0; i < p.trace.size(); ++i) trace.add_row({p.tau_over_period[i], p.trace[i]});
    w.write(point_name(p.temperature, p.factor), std::move(trace));
    rows.push_back({{"temperature_K", p.temperature}, {"amp_factor", p.factor}, {"fourier_distance", p.distance}});
  }
  w.write("scan.csv", std::move(summary));
  out.results["points"] = rows;
}

void derivative_command(const RunConfig& cfg, Writer& w, CommandOutput& out) {
  const fs::path path = cfg.resolve(cfg.derivative.trace_csv);
  const CsvTable trace = read_csv(path);
  out.inputs.push_back(path);
  const auto tau = trace.column("tau_over_Tr");
  const auto values = trace.column(cfg.derivative.column);
  if (tau.size() < 3) throw InvalidArgument("derivative needs at least 3 samples");
  const double dt = tau[1] - tau[0];
  for (std::size_t i = 1; i < tau.size(); ++i) {
    if (std::abs((tau[i] - tau[i - 1]) - dt) > 1e-9 * std::max(1.0, std::abs(tau[i]))) {
      throw InvalidArgument("trace is not uniformly sampled");
    }
  }
  const auto d = orientation_derivative(values, dt, cfg.derivative.periodic);
  auto dt_table = table({"tau_over_Tr", "derivative"}, {"derivative per unit tau/Tr"});
  for (std::size_t i = 0; i < d.size(); ++i) dt_table.add_row({tau[i], d[i]});
  w.write("derivative.csv", std::move(dt_table));

  const CombReport comb = find_comb_peaks(d, dt, cfg.derivative.periodic);
  auto peaks = table({"tau_over_Tr", "height", "fwhm_over_Tr"});
  for (const auto& p : comb.peaks) peaks.add_row({tau[0] + p.time, p.height, p.fwhm});
  w.write("peaks.csv", std::move(peaks));
  out.results["peaks"] = comb.peaks.size();
  out.results["mean_fwhm_over_Tr"] = comb.mean_fwhm();
  out.results["mean_spacing_over_Tr"] = comb.mean_spacing();
}

}  // namespace

CommandOutput run_command(const RunConfig& cfg) {
  CommandOutput out;
  Writer w(cfg, out);
  const std::string& c = cfg.command;
  if (c == "synthesize") {
    synthesize_command(cfg, w, out);
  } else if (c == "grape") {
    grape_command(cfg, w, out);
  } else if (c == "anneal") {
    anneal_command(cfg, w, out);
  } else if (c == "evolve") {
    evolve_command(cfg, w, out);
  } else if (c == "fit-field") {
    fit_command(cfg, w, out);
  } else if (c == "scan") {
    scan_command(cfg, w, out);
  } else if (c == "derivative") {
    derivative_command(cfg, w, out);
  } else {
    throw ConfigError("unknown command '" + c + "'");
  }
  return out;
}

}  // namespace rotorshape::cli
