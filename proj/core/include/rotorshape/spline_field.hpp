#pragma once

#include <vector>

#include "rotorshape/field.hpp"

namespace rotorshape {

/// Natural cubic spline through equally spaced knots t_i = i h, i = 0..N-1.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(double span, std::vector<double> values);

  double operator()(double t) const;
  /// Exact integral of the interpolant over [0, span].
  double integral() const;

  double span() const noexcept { return span_; }
  double spacing() const noexcept { return h_; }
  const std::vector<double>& values() const noexcept { return y_; }
  const std::vector<double>& second_derivatives() const noexcept { return m_; }

 private:
  double span_;
  double h_;
  std::vector<double> y_;
  std::vector<double> m_;
};

/// Control field interpolated through N knots with E_1 = E_N = 0.
class SplineField final : public Field {
 public:
  /// `knot_values` holds all N values; the two endpoints must be exactly zero.
  SplineField(double duration, std::vector<double> knot_values);
  static SplineField from_interior(double duration, const std::vector<double>& interior);

  double operator()(double t) const override;
  double duration() const override { return spline_.span(); }

  std::size_t knot_count() const noexcept { return spline_.values().size(); }
  const std::vector<double>& knots() const noexcept { return spline_.values(); }
  double knot_time(std::size_t i) const { return static_cast<double>(i) * spline_.spacing(); }
  double area() const { return spline_.integral(); }
  const NaturalCubicSpline& spline() const noexcept { return spline_; }

 private:
  NaturalCubicSpline spline_;
};

}  // namespace rotorshape
