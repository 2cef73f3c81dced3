#pragma once

#include <string_view>

namespace rotorshape {

// CODATA 2018 conversion factors to atomic units.
namespace constants {
inline constexpr double kHartreePerWavenumber = 4.556335e-6;   // 1 cm^-1
inline constexpr double kAuDipolePerDebye = 0.3934303;          // 1 D
inline constexpr double kVoltPerMeterPerAuField = 5.142207e11;  // 1 a.u. field
inline constexpr double kHartreePerKelvin = 3.166812e-6;        // k_B * 1 K
inline constexpr double kSecondPerAuTime = 2.4188843e-17;       // 1 a.u. time
inline constexpr double kPicosecondPerAuTime = kSecondPerAuTime * 1e12;
}  // namespace constants

enum class Unit {
  kWavenumber,   // cm^-1
  kHartree,
  kDebye,
  kAuDipole,
  kAuField,
  kVoltPerMeter,
  kKelvin,
  kAuTime,
  kPicosecond,
};

/// Parses "cm-1", "hartree", "debye", "au_dipole", "au_field", "V/m", "K",
/// "au_time", "ps".
Unit parse_unit(std::string_view name);
std::string_view unit_name(Unit unit);

/// Converts between the supported unit pairs (either direction):
/// cm^-1 <-> hartree, Debye <-> a.u. dipole, a.u. field <-> V/m,
/// kelvin <-> hartree, a.u. time <-> ps. Identity conversions are allowed.
/// Throws InvalidArgument for any other pair.
double unit_convert(double value, Unit from, Unit to);

}  // namespace rotorshape
