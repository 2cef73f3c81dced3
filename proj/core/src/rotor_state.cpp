#include "rotorshape/rotor_state.hpp"

#include <cmath>
#include <string>

#include "rotorshape/error.hpp"

namespace rotorshape {

RotorState::RotorState(BasisSpec basis, Eigen::VectorXcd amplitudes)
    : basis_(basis), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != basis_.dim()) {
    throw InvalidArgument("amplitude count does not match basis dimension");
  }
  if (!amps_.allFinite()) throw InvalidArgument("non-finite amplitude");
  const double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    throw InvalidArgument("state not normalized (|C|^2 = " + std::to_string(n2) + ")");
  }
}

RotorState::RotorState(BasisSpec basis, Eigen::VectorXcd amplitudes, bool)
    : basis_(basis), amps_(std::move(amplitudes)) {}

RotorState RotorState::eigenstate(BasisSpec basis, int j) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dim()));
  amps[static_cast<Eigen::Index>(basis.index(j))] = 1.0;
  return RotorState(basis, std::move(amps), true);
}

RotorState RotorState::normalized(BasisSpec basis, Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize zero vector");
  amplitudes /= n;
  return RotorState(basis, std::move(amplitudes));
}

RotorState RotorState::padded(int j_max) const {
  if (j_max < basis_.j_max()) throw InvalidArgument("padding cannot shrink the basis");
  const BasisSpec wider(j_max, basis_.m());
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(wider.dim()));
  amps.head(amps_.size()) = amps_;
  return RotorState(wider, std::move(amps), true);
}

}  // namespace rotorshape
