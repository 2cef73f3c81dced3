#pragma once

#include <span>
#include <vector>

namespace rotorshape {

/// Second-order central differences of a uniformly sampled series. With
/// `periodic` the samples are taken as one full cycle (x_n = x_0 implied);
/// otherwise the ends use second-order one-sided stencils. Needs n >= 3.
std::vector<double> orientation_derivative(std::span<const double> values, double dt,
                                           bool periodic = false);

struct Peak {
  double time = 0.0;   // same unit as dt
  double height = 0.0; // signed derivative value
  double fwhm = 0.0;   // same unit as dt
};

struct CombReport {
  int sign = 0;            // +1: upward peaks, -1: downward
  double baseline = 0.0;   // median of the signed series
  std::vector<Peak> peaks;
  double mean_fwhm() const;
  double mean_spacing() const;
};

/// Finds the dominant narrow peaks of a derivative series. The half-maximum
/// level of each peak is taken halfway between its height and the median
/// baseline; crossings are located by linear interpolation. Peaks whose
/// half-maximum crossings fall outside a non-periodic record are dropped.
CombReport find_comb_peaks(std::span<const double> derivative, double dt, bool periodic = false);

}  // namespace rotorshape
