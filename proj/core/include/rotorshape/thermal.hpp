#pragma once

#include <vector>

#include "rotorshape/molecule.hpp"
#include "rotorshape/rotor_state.hpp"

namespace rotorshape {

struct Channel {
  int j0 = 0;
  int m0 = 0;
  double weight = 1.0;
  RotorState state;
};

/// Boltzmann-weighted collection of initially populated |j0, m0> channels.
struct ThermalEnsemble {
  Molecule molecule;
  double temperature = 0.0;  // kelvin
  int j_max = 0;
  std::vector<Channel> channels;

  double total_weight() const;
};

/// Fraction of molecules in level j (all 2j+1 sublevels), normalized with the
/// full (untruncated) partition function.
double level_population(const Molecule& molecule, double temperature, int j);

/// j_max = max(9, smallest j with level population < 1e-4) + 6.
int default_j_max(const Molecule& molecule, double temperature);

inline constexpr double kDefaultChannelCutoff = 0.999;

/// Includes levels j0 = 0, 1, ... (every m0 of each) until their cumulative
/// population reaches `cutoff`, then renormalizes the weights to sum to one.
/// Each channel starts in |j0, m0> with basis j_max. At T = 0 the result is the
/// single channel (0, 0). Throws InvalidArgument when j_max is too small to
/// reach the cutoff; the message names the required j_max.
ThermalEnsemble boltzmann_channels(const Molecule& molecule, double temperature, int j_max,
                                   double cutoff = kDefaultChannelCutoff);

}  // namespace rotorshape
