#pragma once

#include <span>
#include <vector>

#include "rotorshape/field.hpp"
#include "rotorshape/molecule.hpp"
#include "rotorshape/waveform.hpp"

namespace rotorshape {

/// ||c K - F|| / ||F|| minimized over c >= 0: zero when K is any positive
/// multiple of F, one when K carries nothing of F.
double shape_distance(const FourierVector& k, const FourierVector& target);

/// fourier_distance after zero-padding the shorter vector.
double padded_distance(const FourierVector& k, const FourierVector& target);
double padded_shape_distance(const FourierVector& k, const FourierVector& target);

struct ScanOptions {
  int steps_per_period = 20000;
  int trace_samples = 400;  // per period, post-pulse
  /// Basis truncation; 0 picks default_j_max per temperature.
  int j_max = 0;
  int threads = 1;
};

struct ScanPoint {
  double temperature = 0.0;  // K
  double factor = 1.0;       // field amplitude multiplier
  double distance = 0.0;
  double shape_distance = 0.0;
  FourierVector fourier;     // period Tr in a.u.
  std::vector<double> tau_over_period;
  std::vector<double> trace;  // <cos theta>(tau)
};

/// Simulates `field` scaled by every factor at every temperature and compares
/// the post-pulse orientation with `target` (period-normalized coefficients).
/// Points are ordered temperature-major.
std::vector<ScanPoint> robustness_scan(const Field& field, const Molecule& molecule,
                                       std::span<const double> temperatures,
                                       std::span<const double> factors, const FourierVector& target,
                                       const ScanOptions& options = {});

}  // namespace rotorshape
