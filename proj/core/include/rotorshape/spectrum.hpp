#pragma once

#include <span>
#include <vector>

namespace rotorshape {

struct Spectrum {
  std::vector<double> frequency;  // in units of 1/period
  std::vector<double> magnitude;  // |sum_i E_i exp(-i 2 pi f t_i)| dt
};

/// Discrete Fourier magnitude of samples E(t_i), t_i = i dt, zero-padded to
/// pad_factor times the record length; frequencies up to Nyquist.
Spectrum field_spectrum(std::span<const double> samples, double dt, double period, int pad_factor = 4);

}  // namespace rotorshape
