#include "rotorshape/annealer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rotorshape/error.hpp"

namespace rotorshape {

void SAConfig::validate() const {
  if (!(initial_temperature >= 0.0)) throw InvalidArgument("anneal.T0 must be >= 0");
  if (knots < 3) throw InvalidArgument("anneal.N must be >= 3");
  if (!(kappa >= 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("invalid anneal.kappa/epsilon");
  if (max_iterations < 0) throw InvalidArgument("anneal.N_MC must be >= 0");
  if (!(initial_amplitude > 0.0)) throw InvalidArgument("anneal.E0 must be > 0");
  if (!(cooling_fraction >= 0.0 && cooling_fraction < 1.0)) {
    throw InvalidArgument("anneal.p must lie in [0, 1)");
  }
  if (cooling_epoch < 1) throw InvalidArgument("anneal.cooling_epoch must be >= 1");
  if (!(temperature_floor >= 0.0)) throw InvalidArgument("anneal.temperature_floor must be >= 0");
  if (steps_per_period < 1) throw InvalidArgument("anneal.steps_per_period must be >= 1");
}

double fourier_distance(const FourierVector& k, const FourierVector& target) {
  if (k.size() != target.size()) throw InvalidArgument("Fourier vectors differ in length");
  const double denom = target.norm();
  if (!(denom > 0.0)) throw InvalidArgument("target Fourier vector is zero");
  double s = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) s += std::norm(k.coefficients[j] - target.coefficients[j]);
  return std::sqrt(s) / denom;
}

double displacement_max(double distance, const SAConfig& config) {
  return (distance + config.kappa * std::exp(distance - config.epsilon)) * config.initial_amplitude;
}

namespace {

struct Evaluator {
  const EnsemblePropagator& propagator;
  const FourierVector& target;
  double duration;

  std::pair<double, FourierVector> operator()(const SplineField& field,
                                              PropagationReport* report = nullptr) const {
    FourierVector k = propagator.fourier_after(field, report);
    k.coefficients.resize(target.size());
    return {fourier_distance(k, target), std::move(k)};
  }
};

AnnealResult run_chain(const ThermalEnsemble& ensemble, const FourierVector& target,
                       const SAConfig& config, std::mt19937_64& rng,
                       std::vector<double> interior) {
  const double duration = ensemble.molecule.period();
  const EnsemblePropagator propagator(ensemble, {config.steps_per_period, config.threads});
  const Evaluator evaluate{propagator, target, duration};
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SplineField current = SplineField::from_interior(duration, interior);
  auto [distance, fourier] = evaluate(current);
  double area = current.area();

  AnnealResult result{current, distance, fourier, {}, {}};
  double temperature = config.initial_temperature;
  result.history.push_back({0, distance, distance, temperature, true, area});

  std::vector<double> trial_interior(interior.size());
  for (int it = 1; it <= config.max_iterations; ++it) {
    if (distance <= config.stop_distance) break;
    // "Reaches zero": only possible with a zero floor once cooling underflows.
    if (config.initial_temperature > 0.0 && temperature <= 0.0) break;

    const double half = 0.5 * displacement_max(distance, config);
    for (std::size_t i = 0; i < interior.size(); ++i) {
      trial_interior[i] = interior[i] + half * (2.0 * unit(rng) - 1.0);
    }
    SplineField trial = SplineField::from_interior(duration, trial_interior);
    auto [trial_distance, trial_fourier] = evaluate(trial);
    const double trial_area = trial.area();
    const double delta = trial_distance - distance;

    bool accept = false;
    if (delta < 0.0) {
      accept = true;
    } else {
      // The uniform draw is consumed on every worsening trial so that the
      // random stream does not depend on the temperature.
      const double u = unit(rng);
      const bool metropolis = temperature > 0.0 && u < std::exp(-delta / temperature);
      accept = metropolis && (!config.area_constrained || std::abs(trial_area) < std::abs(area));
    }
    if (accept) {
      interior.swap(trial_interior);
      current = std::move(trial);
      distance = trial_distance;
      area = trial_area;
      if (distance < result.best_distance) {
        result.best_field = current;
        result.best_distance = distance;
        result.best_fourier = std::move(trial_fourier);
      }
    }
    result.history.push_back({it, distance, result.best_distance, temperature, accept, area});
    if (it % config.cooling_epoch == 0 && temperature > 0.0) {
      temperature = std::max(config.temperature_floor, temperature * (1.0 - config.cooling_fraction));
    }
  }
  evaluate(result.best_field, &result.report);
  return result;
}

}  // namespace

AnnealResult anneal_from(const ThermalEnsemble& ensemble, const FourierVector& target,
                         const SAConfig& config, const std::vector<double>& initial_interior) {
  config.validate();
  if (initial_interior.size() != static_cast<std::size_t>(config.knots - 2)) {
    throw InvalidArgument("initial knot count does not match anneal.N - 2");
  }
  std::mt19937_64 rng(config.seed);
  return run_chain(ensemble, target, config, rng, initial_interior);
}

AnnealResult anneal(const ThermalEnsemble& ensemble, const FourierVector& target,
                    const SAConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> init(-0.5 * config.initial_amplitude,
                                              0.5 * config.initial_amplitude);
  std::vector<double> interior(static_cast<std::size_t>(config.knots - 2));
  for (double& v : interior) v = init(rng);
  return run_chain(ensemble, target, config, rng, std::move(interior));
}

std::vector<AnnealResult> anneal_seeds(const ThermalEnsemble& ensemble, const FourierVector& target,
                                       const SAConfig& config, int seeds) {
  if (seeds < 1) throw InvalidArgument("seed count must be >= 1");
  std::vector<AnnealResult> out;
  out.reserve(static_cast<std::size_t>(seeds));
  for (int s = 0; s < seeds; ++s) {
    SAConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(s);
    out.push_back(anneal(ensemble, target, c));
  }
  std::stable_sort(out.begin(), out.end(), [](const AnnealResult& a, const AnnealResult& b) {
    return a.best_distance < b.best_distance;
  });
  return out;
}

}  // namespace rotorshape
