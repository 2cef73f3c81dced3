#include "rotorshape/molecule.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

#include "rotorshape/error.hpp"
#include "rotorshape/units.hpp"

namespace rotorshape {

Molecule::Molecule(std::string name, double rotational_constant, double dipole)
    : name_(std::move(name)), b_(rotational_constant), mu0_(dipole) {
  if (!(b_ > 0.0) || !std::isfinite(b_)) throw InvalidArgument("rotational constant must be > 0");
  if (!(mu0_ > 0.0) || !std::isfinite(mu0_)) throw InvalidArgument("dipole moment must be > 0");
}

Molecule Molecule::from_spectroscopic(std::string name, double b_cm1, double mu0_debye) {
  return Molecule(std::move(name), unit_convert(b_cm1, Unit::kWavenumber, Unit::kHartree),
                  unit_convert(mu0_debye, Unit::kDebye, Unit::kAuDipole));
}

Molecule Molecule::preset(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "OCS") return from_spectroscopic("OCS", 0.2059, 0.712);
  if (upper == "CO") return from_spectroscopic("CO", 1.92253, 0.112);
  throw InvalidArgument("unknown molecule preset '" + std::string(name) + "'");
}

std::vector<std::string> Molecule::preset_names() { return {"OCS", "CO"}; }

}  // namespace rotorshape
