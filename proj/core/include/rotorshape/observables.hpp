#pragma once

#include "rotorshape/rotor_state.hpp"

namespace rotorshape {

/// <psi| cos(theta) |psi>.
double expectation_cos(const RotorState& state);

/// <psi| cos^p(theta) |psi> for p in {1, 3, 5}, using the channel's coupling
/// matrix applied p times. Throws InvalidArgument for any other p.
double expectation_cos_power(const RotorState& state, int p);

}  // namespace rotorshape
