#include <gtest/gtest.h>

#include <random>

#include "rotorshape/error.hpp"
#include "rotorshape/units.hpp"

namespace rotorshape {
namespace {

TEST(Units, WavenumberToHartree) {
  // 0.2059 cm^-1 times the CODATA factor.
  EXPECT_NEAR(unit_convert(0.2059, Unit::kWavenumber, Unit::kHartree), 0.2059 * 4.556335e-6, 1e-20);
  EXPECT_NEAR(unit_convert(0.2059, Unit::kWavenumber, Unit::kHartree), 9.3815e-7, 5e-11);
}

TEST(Units, FieldUnitIsDefinitional) {
  EXPECT_DOUBLE_EQ(unit_convert(1.0, Unit::kAuField, Unit::kVoltPerMeter), 5.142207e11);
}

TEST(Units, FactorTable) {
  EXPECT_DOUBLE_EQ(unit_convert(1.0, Unit::kDebye, Unit::kAuDipole), 0.3934303);
  EXPECT_DOUBLE_EQ(unit_convert(1.0, Unit::kKelvin, Unit::kHartree), 3.166812e-6);
  EXPECT_NEAR(unit_convert(1.0, Unit::kAuTime, Unit::kPicosecond), 2.4188843e-5, 1e-18);
}

TEST(Units, RoundTripProperty) {
  const std::pair<Unit, Unit> pairs[] = {
      {Unit::kWavenumber, Unit::kHartree}, {Unit::kDebye, Unit::kAuDipole},
      {Unit::kAuField, Unit::kVoltPerMeter}, {Unit::kKelvin, Unit::kHartree},
      {Unit::kAuTime, Unit::kPicosecond}};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> exponent(-8.0, 8.0);
  for (auto [a, b] : pairs) {
    for (int i = 0; i < 200; ++i) {
      const double x = std::pow(10.0, exponent(rng));
      EXPECT_NEAR(unit_convert(unit_convert(x, a, b), b, a), x, 1e-14 * x);
      EXPECT_NEAR(unit_convert(unit_convert(x, b, a), a, b), x, 1e-14 * x);
    }
  }
}

TEST(Units, IdentityAndParse) {
  EXPECT_EQ(unit_convert(3.5, Unit::kKelvin, Unit::kKelvin), 3.5);
  EXPECT_EQ(parse_unit("cm-1"), Unit::kWavenumber);
  EXPECT_EQ(parse_unit("V/m"), Unit::kVoltPerMeter);
  EXPECT_EQ(unit_name(Unit::kPicosecond), "ps");
}

TEST(Units, UnsupportedPairsThrow) {
  EXPECT_THROW(unit_convert(1.0, Unit::kDebye, Unit::kKelvin), InvalidArgument);
  EXPECT_THROW(unit_convert(1.0, Unit::kWavenumber, Unit::kKelvin), InvalidArgument);
  EXPECT_THROW(parse_unit("furlong"), InvalidArgument);
}

}  // namespace
}  // namespace rotorshape
