#include "rotorshape/waveform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rotorshape/error.hpp"

namespace rotorshape {

using std::numbers::pi;

WaveformKind parse_waveform_kind(std::string_view name) {
  if (name == "rectangular") return WaveformKind::kRectangular;
  if (name == "triangular") return WaveformKind::kTriangular;
  if (name == "sawtooth") return WaveformKind::kSawtooth;
  throw InvalidArgument("unknown waveform kind '" + std::string(name) + "'");
}

std::string_view waveform_kind_name(WaveformKind kind) {
  switch (kind) {
    case WaveformKind::kRectangular: return "rectangular";
    case WaveformKind::kTriangular: return "triangular";
    case WaveformKind::kSawtooth: return "sawtooth";
  }
  return "?";
}

void WaveformSpec::validate() const {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw InvalidArgument("A0 must be > 0");
  if (kind != WaveformKind::kSawtooth && !(ratio > 0.0 && ratio < 1.0)) {
    throw InvalidArgument("r must lie in (0, 1)");
  }
  if (sigma_order < 0) throw InvalidArgument("N_sigma must be >= 0");
}

double FourierVector::norm() const {
  double s = 0.0;
  for (const auto& c : coefficients) s += std::norm(c);
  return std::sqrt(s);
}

FourierVector FourierVector::scaled(double factor) const {
  FourierVector out = *this;
  for (auto& c : out.coefficients) c *= factor;
  return out;
}

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

double sigma_factor(int harmonic, int order) {
  if (order <= 0) throw InvalidArgument("sigma order must be positive");
  return sinc(harmonic * pi / order);
}

FourierVector analytic_fourier(const WaveformSpec& spec, int j_max) {
  spec.validate();
  if (j_max < 1) throw InvalidArgument("j_max must be >= 1");
  const int order = spec.sigma_order > 0 ? spec.sigma_order : j_max + 1;
  const double a0 = spec.amplitude;
  const double r = spec.ratio;

  FourierVector k;
  k.coefficients.reserve(static_cast<std::size_t>(j_max));
  for (int j = 0; j < j_max; ++j) {
    const double n = j + 1.0;
    std::complex<double> c;
    switch (spec.kind) {
      case WaveformKind::kRectangular:
        c = std::polar(a0 * std::sin(pi * n * r) / (pi * n * (1.0 - r)), -pi * n * r);
        break;
      case WaveformKind::kTriangular:
        c = std::polar(a0 * std::sin(pi * n * r) / (r * (1.0 - r) * pi * pi * n * n),
                       -pi * n * r - pi / 2.0);
        break;
      case WaveformKind::kSawtooth:
        c = std::polar(a0 / (n * pi), -pi * n - pi / 2.0);
        break;
    }
    if (spec.sigma_smoothing) c *= sigma_factor(j + 1, order);
    k.coefficients.push_back(c);
  }
  return k;
}

std::vector<int> vanishing_harmonics(const WaveformSpec& spec, int j_max) {
  std::vector<int> out;
  if (spec.kind == WaveformKind::kSawtooth) return out;
  for (int j = 0; j < j_max; ++j) {
    if (std::abs(std::sin(pi * (j + 1.0) * spec.ratio)) < 1e-9) out.push_back(j);
  }
  return out;
}

double sample_signal(const WaveformSpec& spec, double tau_over_period) {
  double t = tau_over_period - std::floor(tau_over_period);
  const double a0 = spec.amplitude;
  const double r = spec.ratio;
  switch (spec.kind) {
    case WaveformKind::kRectangular: {
      const double low = -r / (1.0 - r) * a0;
      if (t == 0.0 || t == r) return 0.5 * (a0 + low);
      return t < r ? a0 : low;
    }
    case WaveformKind::kTriangular:
      if (t < r) return a0 * (2.0 * t / r - 1.0);
      return a0 * ((1.0 + r) / (1.0 - r) - 2.0 * t / (1.0 - r));
    case WaveformKind::kSawtooth:
      // Falling ramp 0 -> -A0 on [0, 1/2), jump to +A0, falling back to 0.
      if (t == 0.5) return 0.0;
      return t < 0.5 ? -2.0 * a0 * t : 2.0 * a0 * (1.0 - t);
  }
  return 0.0;
}

std::vector<double> sample_signal(const WaveformSpec& spec, std::span<const double> tau_over_period) {
  std::vector<double> out;
  out.reserve(tau_over_period.size());
  for (double t : tau_over_period) out.push_back(sample_signal(spec, t));
  return out;
}

double fourier_to_value(const FourierVector& k, double time) {
  double s = 0.0;
  const double w = 2.0 * pi * time / k.period;
  for (std::size_t j = 0; j < k.coefficients.size(); ++j) {
    const double phase = w * static_cast<double>(j + 1);
    s += 2.0 * (k.coefficients[j] * std::complex<double>(std::cos(phase), std::sin(phase))).real();
  }
  return s;
}

std::vector<double> fourier_to_timeseries(const FourierVector& k, std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(fourier_to_value(k, t));
  return out;
}

FourierVector project_harmonics(std::span<const double> samples, std::size_t harmonics,
                                double period) {
  const auto n = samples.size();
  if (n < 2 * harmonics + 1) throw InvalidArgument("too few samples to resolve the harmonics");
  FourierVector k;
  k.period = period;
  k.coefficients.assign(harmonics, {0.0, 0.0});
  for (std::size_t h = 0; h < harmonics; ++h) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const double phase = -2.0 * pi * static_cast<double>((h + 1) * i % n) / static_cast<double>(n);
      acc += samples[i] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    k.coefficients[h] = acc / static_cast<double>(n);
  }
  return k;
}

}  // namespace rotorshape
