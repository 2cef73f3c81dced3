#pragma once

#include <complex>

#include <Eigen/Core>

#include "rotorshape/basis.hpp"

namespace rotorshape {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;

/// Channel wave packet sum_j C_j |j, m>. Always normalized.
class RotorState {
 public:
  /// Takes amplitudes as given; throws InvalidArgument unless
  /// |sum |C_j|^2 - 1| <= kNormTolerance and the size matches the basis.
  RotorState(BasisSpec basis, Eigen::VectorXcd amplitudes);

  static RotorState eigenstate(BasisSpec basis, int j);
  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static RotorState normalized(BasisSpec basis, Eigen::VectorXcd amplitudes);

  const BasisSpec& basis() const noexcept { return basis_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Complex amplitude(int j) const { return amps_[static_cast<Eigen::Index>(basis_.index(j))]; }
  double norm_squared() const { return amps_.squaredNorm(); }

  /// Same amplitudes re-expressed in a larger j_max (zero padded).
  RotorState padded(int j_max) const;

 private:
  friend class StateAccess;
  RotorState(BasisSpec basis, Eigen::VectorXcd amplitudes, bool /*unchecked*/);

  BasisSpec basis_;
  Eigen::VectorXcd amps_;
};

/// Library-internal construction without the norm check (propagators
/// produce states whose norm is guaranteed by unitarity).
class StateAccess {
 public:
  static RotorState make_unchecked(BasisSpec basis, Eigen::VectorXcd amplitudes) {
    return RotorState(basis, std::move(amplitudes), true);
  }
};

}  // namespace rotorshape
