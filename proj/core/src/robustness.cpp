#include "rotorshape/robustness.hpp"

#include <algorithm>
#include <cmath>

#include "rotorshape/annealer.hpp"
#include "rotorshape/error.hpp"
#include "rotorshape/propagator.hpp"
#include "rotorshape/thermal.hpp"

namespace rotorshape {

double shape_distance(const FourierVector& k, const FourierVector& target) {
  if (k.size() != target.size()) throw InvalidArgument("Fourier vectors differ in length");
  const double ff = target.norm();
  if (!(ff > 0.0)) throw InvalidArgument("target Fourier vector is zero");
  const double kk = k.norm();
  if (kk == 0.0) return 1.0;
  double cross = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    cross += (std::conj(k.coefficients[j]) * target.coefficients[j]).real();
  }
  if (cross <= 0.0) return 1.0;
  // Norm of the component of k orthogonal to the target, relative to |k|.
  const double lambda = cross / (ff * ff);
  double perp = 0.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    perp += std::norm(k.coefficients[j] - lambda * target.coefficients[j]);
  }
  return std::min(1.0, std::sqrt(perp) / kk);
}

namespace {

std::pair<FourierVector, FourierVector> equalized(const FourierVector& k, const FourierVector& target) {
  const std::size_t n = std::max(k.size(), target.size());
  FourierVector a = k;
  FourierVector b = target;
  a.coefficients.resize(n);
  b.coefficients.resize(n);
  return {std::move(a), std::move(b)};
}

}  // namespace

double padded_distance(const FourierVector& k, const FourierVector& target) {
  const auto [a, b] = equalized(k, target);
  return fourier_distance(a, b);
}

double padded_shape_distance(const FourierVector& k, const FourierVector& target) {
  const auto [a, b] = equalized(k, target);
  return shape_distance(a, b);
}

std::vector<ScanPoint> robustness_scan(const Field& field, const Molecule& molecule,
                                       std::span<const double> temperatures,
                                       std::span<const double> factors, const FourierVector& target,
                                       const ScanOptions& options) {
  if (options.trace_samples < 2) throw InvalidArgument("scan.trace_samples must be >= 2");
  std::vector<ScanPoint> out;
  std::vector<double> tau(static_cast<std::size_t>(options.trace_samples));
  for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = static_cast<double>(i) / static_cast<double>(tau.size());

  for (double temperature : temperatures) {
    const int j_max = options.j_max > 0 ? options.j_max : default_j_max(molecule, temperature);
    const auto ensemble = boltzmann_channels(molecule, temperature, j_max);
    const EnsemblePropagator propagator(ensemble, {options.steps_per_period, options.threads});
    for (double factor : factors) {
      const ScaledField scaled(field, factor);
      ScanPoint p;
      p.temperature = temperature;
      p.factor = factor;
      p.fourier = propagator.fourier_after(scaled);
      FourierVector normalized = p.fourier;
      normalized.period = 1.0;
      p.distance = padded_distance(normalized, target);
      p.shape_distance = padded_shape_distance(normalized, target);
      p.tau_over_period = tau;
      p.trace = fourier_to_timeseries(normalized, tau);
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace rotorshape
