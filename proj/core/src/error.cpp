#include "rotorshape/error.hpp"

#include <string>

namespace rotorshape {

NonFiniteField::NonFiniteField(double t, double value)
    : NumericalError("field evaluated to non-finite value " + std::to_string(value) + " at t=" +
                     std::to_string(t)),
      time_(t) {}

InfeasibleAmplitude::InfeasibleAmplitude(double max_scale)
    : NumericalError("target amplitude not reachable by a normalized state; maximal feasible "
                     "scaling factor is " +
                     std::to_string(max_scale)),
      max_scale_(max_scale) {}

ZeroCoefficient::ZeroCoefficient(std::size_t index, double magnitude)
    : NumericalError("Fourier coefficient K_" + std::to_string(index) + " is (near) zero (|K|=" +
                     std::to_string(magnitude) + ")"),
      index_(index) {}

}  // namespace rotorshape
