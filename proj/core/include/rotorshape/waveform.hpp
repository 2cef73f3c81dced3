#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace rotorshape {

enum class WaveformKind { kRectangular, kTriangular, kSawtooth };

WaveformKind parse_waveform_kind(std::string_view name);
std::string_view waveform_kind_name(WaveformKind kind);

/// Zero-area periodic target for <cos theta>(tau), tau in units of the
/// rotational period.
struct WaveformSpec {
  WaveformKind kind = WaveformKind::kSawtooth;
  double amplitude = 1.0;  // A0
  double ratio = 0.7071067811865476;  // r = T1/Tr, unused for sawtooth
  bool sigma_smoothing = false;
  int sigma_order = 0;     // N; 0 selects j_max + 1

  void validate() const;
};

/// Coefficients K_j (j = 0 ... size-1) of
///   s(tau) = sum_j [K_j exp(i 2 pi (j+1) tau / period) + c.c.].
struct FourierVector {
  std::vector<std::complex<double>> coefficients;
  double period = 1.0;

  std::size_t size() const noexcept { return coefficients.size(); }
  double norm() const;
  FourierVector scaled(double factor) const;
};

/// sin(x)/x with the removable singularity filled in.
double sinc(double x);
/// Lanczos sigma factor sinc(n pi / N).
double sigma_factor(int harmonic, int order);

/// Exact complex Fourier coefficients of `sample_signal(spec, .)` at
/// harmonics n = 1 ... j_max, optionally sigma-smoothed.
FourierVector analytic_fourier(const WaveformSpec& spec, int j_max);

/// Harmonic indices j (< j_max) with |sin(pi (j+1) r)| < 1e-9, i.e. exactly
/// vanishing coefficients of the rectangular or triangular families.
std::vector<int> vanishing_harmonics(const WaveformSpec& spec, int j_max);

/// Ideal piecewise signal at tau/Tr (reduced modulo one). Jump points take the
/// mid value, as the Fourier series does.
double sample_signal(const WaveformSpec& spec, double tau_over_period);
std::vector<double> sample_signal(const WaveformSpec& spec, std::span<const double> tau_over_period);

/// Evaluates the truncated series; times in the same unit as K.period.
std::vector<double> fourier_to_timeseries(const FourierVector& k, std::span<const double> times);
double fourier_to_value(const FourierVector& k, double time);

/// Projects a uniformly sampled period (samples at t_i = i T / n) onto the
/// first `harmonics` harmonics. Exact for band-limited input with n > 2 harmonics.
FourierVector project_harmonics(std::span<const double> samples, std::size_t harmonics,
                                double period = 1.0);

}  // namespace rotorshape
