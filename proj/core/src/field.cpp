#include "rotorshape/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotorshape/error.hpp"

namespace rotorshape {

SampledField::SampledField(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size() || times_.size() < 2) {
    throw InvalidArgument("sampled field needs >= 2 (t, E) pairs");
  }
  if (!std::is_sorted(times_.begin(), times_.end()) ||
      std::adjacent_find(times_.begin(), times_.end()) != times_.end()) {
    throw InvalidArgument("sampled field times must be strictly increasing");
  }
}

double SampledField::operator()(double t) const {
  if (t < times_.front() || t > times_.back()) return 0.0;
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.end()) return values_.back();
  const auto i = static_cast<std::size_t>(it - times_.begin());
  const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
  return (1.0 - w) * values_[i - 1] + w * values_[i];
}

double sin2_envelope(double t, double duration, double ramp_fraction) {
  if (t <= 0.0 || t >= duration) return 0.0;
  const double ramp = ramp_fraction * duration;
  if (ramp <= 0.0) return 1.0;
  const double edge = std::min(t, duration - t);
  if (edge >= ramp) return 1.0;
  const double s = std::sin(0.5 * std::numbers::pi * edge / ramp);
  return s * s;
}

PiecewiseConstantField::PiecewiseConstantField(double duration, std::vector<double> amplitudes,
                                               double ramp_fraction, std::vector<double> mask)
    : duration_(duration),
      amplitudes_(std::move(amplitudes)),
      ramp_fraction_(ramp_fraction),
      mask_(std::move(mask)) {
  if (!(duration_ > 0.0)) throw InvalidArgument("field duration must be > 0");
  if (amplitudes_.size() < 2) throw InvalidArgument("need at least 2 slices");
  if (!(ramp_fraction_ >= 0.0 && ramp_fraction_ <= 0.5)) {
    throw InvalidArgument("ramp fraction must lie in [0, 0.5]");
  }
  if (mask_.empty()) mask_.assign(amplitudes_.size(), 1.0);
  if (mask_.size() != amplitudes_.size()) throw InvalidArgument("mask size mismatch");
}

std::size_t PiecewiseConstantField::slice_of(double t) const {
  const auto k = static_cast<long>(std::floor(t / slice_duration()));
  return static_cast<std::size_t>(std::clamp<long>(k, 0, static_cast<long>(slices()) - 1));
}

double PiecewiseConstantField::chain_factor(double t) const {
  return mask_[slice_of(t)] * sin2_envelope(t, duration_, ramp_fraction_);
}

double PiecewiseConstantField::operator()(double t) const {
  if (t < 0.0 || t > duration_) return 0.0;
  return amplitudes_[slice_of(t)] * chain_factor(t);
}

}  // namespace rotorshape
