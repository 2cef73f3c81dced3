#include "rotorshape/spectrum.hpp"

#include <complex>

#include <unsupported/Eigen/FFT>

#include "rotorshape/error.hpp"

namespace rotorshape {

Spectrum field_spectrum(std::span<const double> samples, double dt, double period, int pad_factor) {
  if (samples.size() < 2) throw InvalidArgument("spectrum needs at least 2 samples");
  if (!(dt > 0.0) || !(period > 0.0)) throw InvalidArgument("spectrum needs dt, period > 0");
  if (pad_factor < 1) throw InvalidArgument("pad factor must be >= 1");
  const std::size_t n = samples.size() * static_cast<std::size_t>(pad_factor);
  std::vector<double> in(samples.begin(), samples.end());
  in.resize(n, 0.0);
  std::vector<std::complex<double>> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  Spectrum s;
  const std::size_t half = n / 2 + 1;
  s.frequency.reserve(half);
  s.magnitude.reserve(half);
  for (std::size_t k = 0; k < half; ++k) {
    s.frequency.push_back(static_cast<double>(k) / (static_cast<double>(n) * dt) * period);
    s.magnitude.push_back(std::abs(out[k]) * dt);
  }
  return s;
}

}  // namespace rotorshape
