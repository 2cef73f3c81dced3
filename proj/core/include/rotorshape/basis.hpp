#pragma once

#include <cstddef>
#include <cstdlib>

namespace rotorshape {

/// Truncated |j, m> channel basis: j = |m| ... j_max at fixed m.
class BasisSpec {
 public:
  BasisSpec(int j_max, int m = 0);

  int j_max() const noexcept { return j_max_; }
  int m() const noexcept { return m_; }
  int j_min() const noexcept { return std::abs(m_); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(j_max_ - j_min() + 1); }
  /// Row index of level j within the channel vector.
  std::size_t index(int j) const;

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;

 private:
  int j_max_;
  int m_;
};

}  // namespace rotorshape
