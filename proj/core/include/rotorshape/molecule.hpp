#pragma once

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace rotorshape {

/// Linear rigid rotor with a permanent dipole. All quantities in atomic units.
class Molecule {
 public:
  Molecule(std::string name, double rotational_constant, double dipole);

  /// Builds a molecule from spectroscopic units (B in cm^-1, mu0 in Debye).
  static Molecule from_spectroscopic(std::string name, double b_cm1, double mu0_debye);

  /// "OCS" or "CO" (case-insensitive).
  static Molecule preset(std::string_view name);
  static std::vector<std::string> preset_names();

  const std::string& name() const noexcept { return name_; }
  double rotational_constant() const noexcept { return b_; }
  double dipole() const noexcept { return mu0_; }
  /// Rotational period pi/B.
  double period() const noexcept { return std::numbers::pi / b_; }
  double frequency() const noexcept { return 1.0 / period(); }

 private:
  std::string name_;
  double b_;
  double mu0_;
};

/// Parameters of H = B J^2 - mu0 E(t) cos(theta). Unlike Molecule this admits
/// B = 0, which isolates the coupling term in tests.
struct Hamiltonian {
  double rotational_constant = 0.0;
  double dipole = 0.0;

  static Hamiltonian of(const Molecule& molecule) {
    return {molecule.rotational_constant(), molecule.dipole()};
  }
};

}  // namespace rotorshape
