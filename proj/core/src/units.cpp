#include "rotorshape/units.hpp"

#include <array>
#include <string>
#include <utility>

#include "rotorshape/error.hpp"

namespace rotorshape {
namespace {

struct UnitName {
  Unit unit;
  std::string_view name;
};

constexpr std::array<UnitName, 9> kNames{{
    {Unit::kWavenumber, "cm-1"},
    {Unit::kHartree, "hartree"},
    {Unit::kDebye, "debye"},
    {Unit::kAuDipole, "au_dipole"},
    {Unit::kAuField, "au_field"},
    {Unit::kVoltPerMeter, "V/m"},
    {Unit::kKelvin, "K"},
    {Unit::kAuTime, "au_time"},
    {Unit::kPicosecond, "ps"},
}};

// (from, to, factor): value_to = value_from * factor.
struct Conversion {
  Unit from;
  Unit to;
  double factor;
};

constexpr std::array<Conversion, 5> kConversions{{
    {Unit::kWavenumber, Unit::kHartree, constants::kHartreePerWavenumber},
    {Unit::kDebye, Unit::kAuDipole, constants::kAuDipolePerDebye},
    {Unit::kAuField, Unit::kVoltPerMeter, constants::kVoltPerMeterPerAuField},
    {Unit::kKelvin, Unit::kHartree, constants::kHartreePerKelvin},
    {Unit::kAuTime, Unit::kPicosecond, constants::kPicosecondPerAuTime},
}};

}  // namespace

Unit parse_unit(std::string_view name) {
  for (const auto& entry : kNames) {
    if (entry.name == name) return entry.unit;
  }
  throw InvalidArgument("unknown unit '" + std::string(name) + "'");
}

std::string_view unit_name(Unit unit) {
  for (const auto& entry : kNames) {
    if (entry.unit == unit) return entry.name;
  }
  return "?";
}

double unit_convert(double value, Unit from, Unit to) {
  if (from == to) return value;
  for (const auto& c : kConversions) {
    if (c.from == from && c.to == to) return value * c.factor;
    if (c.from == to && c.to == from) return value / c.factor;
  }
  throw InvalidArgument("no conversion from " + std::string(unit_name(from)) + " to " +
                        std::string(unit_name(to)));
}

}  // namespace rotorshape
