#include "rotorshape/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rotorshape/error.hpp"
#include "rotorshape/units.hpp"

namespace rotorshape {
namespace {

double boltzmann_factor(const Molecule& molecule, double temperature, int j) {
  const double kt = temperature * constants::kHartreePerKelvin;
  return std::exp(-molecule.rotational_constant() * j * (j + 1.0) / kt);
}

double partition_function(const Molecule& molecule, double temperature) {
  double z = 0.0;
  for (int j = 0;; ++j) {
    const double term = (2.0 * j + 1.0) * boltzmann_factor(molecule, temperature, j);
    z += term;
    if (term < 1e-18 * z && j > 0) break;
  }
  return z;
}

}  // namespace

double ThermalEnsemble::total_weight() const {
  double sum = 0.0;
  for (const auto& c : channels) sum += c.weight;
  return sum;
}

double level_population(const Molecule& molecule, double temperature, int j) {
  if (temperature < 0.0) throw InvalidArgument("temperature must be >= 0");
  if (temperature == 0.0) return j == 0 ? 1.0 : 0.0;
  return (2.0 * j + 1.0) * boltzmann_factor(molecule, temperature, j) /
         partition_function(molecule, temperature);
}

int default_j_max(const Molecule& molecule, double temperature) {
  int j = 1;
  while (level_population(molecule, temperature, j) >= 1e-4) ++j;
  return std::max(9, j) + 6;
}

ThermalEnsemble boltzmann_channels(const Molecule& molecule, double temperature, int j_max,
                                   double cutoff) {
  if (temperature < 0.0 || !std::isfinite(temperature)) {
    throw InvalidArgument("temperature must be finite and >= 0");
  }
  if (!(cutoff > 0.0 && cutoff <= 1.0)) throw InvalidArgument("cutoff must lie in (0, 1]");
  if (j_max < 1) throw InvalidArgument("j_max must be >= 1");

  ThermalEnsemble ensemble{molecule, temperature, j_max, {}};
  if (temperature == 0.0) {
    const BasisSpec basis(j_max, 0);
    ensemble.channels.push_back({0, 0, 1.0, RotorState::eigenstate(basis, 0)});
    return ensemble;
  }

  const double z = partition_function(molecule, temperature);
  // Levels are included whole; 1e-15 absorbs rounding for cutoff = 1.
  int j_top = 0;
  double cumulative = 0.0;
  for (int j = 0;; ++j) {
    cumulative += (2.0 * j + 1.0) * boltzmann_factor(molecule, temperature, j) / z;
    j_top = j;
    if (cumulative >= cutoff - 1e-15) break;
    if (j > 10000) throw NumericalError("population cutoff not reached");
  }
  if (j_top > j_max) {
    throw InvalidArgument("j_max=" + std::to_string(j_max) + " too small to reach population cutoff; " +
                          "required j_max >= " + std::to_string(j_top));
  }

  double included = 0.0;
  for (int j = 0; j <= j_top; ++j) included += (2.0 * j + 1.0) * boltzmann_factor(molecule, temperature, j);
  for (int j0 = 0; j0 <= j_top; ++j0) {
    const double w = boltzmann_factor(molecule, temperature, j0) / included;
    for (int m0 = -j0; m0 <= j0; ++m0) {
      const BasisSpec basis(j_max, m0);
      ensemble.channels.push_back({j0, m0, w, RotorState::eigenstate(basis, j0)});
    }
  }
  return ensemble;
}

}  // namespace rotorshape
