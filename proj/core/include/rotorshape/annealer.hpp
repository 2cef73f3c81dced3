#pragma once

#include <cstdint>
#include <vector>

#include "rotorshape/propagator.hpp"
#include "rotorshape/spline_field.hpp"
#include "rotorshape/thermal.hpp"
#include "rotorshape/waveform.hpp"

namespace rotorshape {

struct SAConfig {
  double initial_temperature = 0.1;  // T0 (fictive)
  int knots = 30;                    // N, endpoints included
  double kappa = 0.08;
  double epsilon = 0.01;
  int max_iterations = 2500;         // N_MC
  double initial_amplitude = 6e-5;   // E0, a.u.
  double cooling_fraction = 1.0 / 3.0;  // p
  int cooling_epoch = 25;
  /// Cooling never takes T_MC below this (a zero floor lets it reach zero).
  double temperature_floor = 1e-10;
  bool area_constrained = false;
  std::uint64_t seed = 1;
  /// Exit as soon as the current distance drops to this value.
  double stop_distance = 0.0;
  /// Time steps per control window used for every trial evaluation.
  int steps_per_period = 1000;
  int threads = 1;

  void validate() const;
};

/// ||K - F|| / ||F||; throws for a zero target or unequal lengths.
double fourier_distance(const FourierVector& k, const FourierVector& target);

/// (F + kappa exp(F - epsilon)) E0.
double displacement_max(double distance, const SAConfig& config);

struct AnnealStep {
  int iteration = 0;
  double distance = 0.0;       // current chain state
  double best_distance = 0.0;
  double temperature = 0.0;    // T_MC used for the acceptance test
  bool accepted = false;
  double area = 0.0;           // of the current field
};

struct AnnealResult {
  SplineField best_field;
  double best_distance = 0.0;
  FourierVector best_fourier;
  std::vector<AnnealStep> history;
  PropagationReport report;  // of the best field
};

/// Simulated annealing over the interior knot values of a spline field
/// spanning one rotational period. The chain is sequential and fully
/// determined by config.seed.
AnnealResult anneal(const ThermalEnsemble& ensemble, const FourierVector& target,
                    const SAConfig& config);

/// Variant with explicit initial interior knots (size N-2) replacing the
/// random draw.
AnnealResult anneal_from(const ThermalEnsemble& ensemble, const FourierVector& target,
                         const SAConfig& config, const std::vector<double>& initial_interior);

/// Runs one chain per seed (seed, seed+1, ...) and returns them all, the best
/// chain first.
std::vector<AnnealResult> anneal_seeds(const ThermalEnsemble& ensemble, const FourierVector& target,
                                       const SAConfig& config, int seeds);

}  // namespace rotorshape
