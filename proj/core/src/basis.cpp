#include "rotorshape/basis.hpp"

#include <string>

#include "rotorshape/error.hpp"

namespace rotorshape {

BasisSpec::BasisSpec(int j_max, int m) : j_max_(j_max), m_(m) {
  if (j_max < 1) throw InvalidArgument("j_max must be >= 1");
  if (std::abs(m) > j_max) throw InvalidArgument("|m| must not exceed j_max");
}

std::size_t BasisSpec::index(int j) const {
  if (j < j_min() || j > j_max_) {
    throw InvalidArgument("level j=" + std::to_string(j) + " outside basis");
  }
  return static_cast<std::size_t>(j - j_min());
}

}  // namespace rotorshape
