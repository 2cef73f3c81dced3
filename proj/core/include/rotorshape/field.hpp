#pragma once

#include <span>
#include <vector>

namespace rotorshape {

/// Control field E(t) on [0, duration()] in atomic units.
class Field {
 public:
  virtual ~Field() = default;
  virtual double operator()(double t) const = 0;
  virtual double duration() const = 0;
};

class ZeroField final : public Field {
 public:
  explicit ZeroField(double duration) : duration_(duration) {}
  double operator()(double) const override { return 0.0; }
  double duration() const override { return duration_; }

 private:
  double duration_;
};

class ConstantField final : public Field {
 public:
  ConstantField(double value, double duration) : value_(value), duration_(duration) {}
  double operator()(double) const override { return value_; }
  double duration() const override { return duration_; }

 private:
  double value_;
  double duration_;
};

/// Linear interpolation through (t_i, E_i); zero outside the sample range.
class SampledField final : public Field {
 public:
  SampledField(std::vector<double> times, std::vector<double> values);
  double operator()(double t) const override;
  double duration() const override { return times_.back(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Scales another field by a constant factor.
class ScaledField final : public Field {
 public:
  ScaledField(const Field& base, double factor) : base_(base), factor_(factor) {}
  double operator()(double t) const override { return factor_ * base_(t); }
  double duration() const override { return base_.duration(); }

 private:
  const Field& base_;
  double factor_;
};

/// sin^2 switch-on over the first `ramp_fraction` of [0, T] and mirrored
/// switch-off at the end; 1 in between. C^1 at every joint.
double sin2_envelope(double t, double duration, double ramp_fraction);

/// M equal slices over [0, T]: E(t) = u_k * mask_k * envelope(t) for t in
/// slice k. The envelope pins E(0) = E(T) = 0.
class PiecewiseConstantField final : public Field {
 public:
  PiecewiseConstantField(double duration, std::vector<double> amplitudes, double ramp_fraction,
                         std::vector<double> mask = {});

  double operator()(double t) const override;
  double duration() const override { return duration_; }

  std::size_t slices() const noexcept { return amplitudes_.size(); }
  double slice_duration() const noexcept { return duration_ / static_cast<double>(slices()); }
  std::size_t slice_of(double t) const;
  /// d E(t) / d u_k for t inside slice k.
  double chain_factor(double t) const;

  const std::vector<double>& amplitudes() const noexcept { return amplitudes_; }
  std::vector<double>& amplitudes() noexcept { return amplitudes_; }
  const std::vector<double>& mask() const noexcept { return mask_; }
  double ramp_fraction() const noexcept { return ramp_fraction_; }

 private:
  double duration_;
  std::vector<double> amplitudes_;
  double ramp_fraction_;
  std::vector<double> mask_;
};

}  // namespace rotorshape
