#include "rotorshape/synthesis.hpp"

#include <algorithm>
#include <cmath>

#include "rotorshape/coupling.hpp"
#include "rotorshape/error.hpp"

namespace rotorshape {
namespace {

// |C_j|^2 = x e_j for even j and o_j / x for odd j, with x = |C_0|^2.
struct NormFactors {
  std::vector<double> factor;  // e_j or o_j per level
  double even_sum = 0.0;
  double odd_sum = 0.0;
};

NormFactors norm_factors(const FourierVector& k) {
  NormFactors nf;
  nf.factor.push_back(1.0);
  nf.even_sum = 1.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double a = coupling_element(static_cast<int>(j), 0);
    const double next = std::norm(k.coefficients[j]) / (a * a * nf.factor.back());
    nf.factor.push_back(next);
    ((j + 1) % 2 == 0 ? nf.even_sum : nf.odd_sum) += next;
  }
  return nf;
}

void check_nonzero(const FourierVector& k, double threshold) {
  double peak = 0.0;
  for (const auto& c : k.coefficients) peak = std::max(peak, std::abs(c));
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double mag = std::abs(k.coefficients[j]);
    if (!(mag > threshold * peak)) throw ZeroCoefficient(j, mag);
  }
}

}  // namespace

double max_feasible_scale(const FourierVector& k) {
  if (k.size() == 0) throw InvalidArgument("empty Fourier vector");
  const auto nf = norm_factors(k);
  return 1.0 / std::sqrt(4.0 * nf.even_sum * nf.odd_sum);
}

SynthesisResult synthesize(const FourierVector& k_in, const SynthesisOptions& options) {
  if (k_in.size() == 0) throw InvalidArgument("empty Fourier vector");
  check_nonzero(k_in, options.zero_threshold);

  FourierVector k = k_in;
  double scale = 1.0;
  auto nf = norm_factors(k);
  double disc = 1.0 - 4.0 * nf.even_sum * nf.odd_sum;
  if (disc < 0.0) {
    const double s = 1.0 / std::sqrt(4.0 * nf.even_sum * nf.odd_sum);
    if (disc < -1e-12 && options.policy == FeasibilityPolicy::kError) throw InfeasibleAmplitude(s);
    if (disc < -1e-12) {
      scale = s;
      k = k_in.scaled(s);
      nf = norm_factors(k);
    }
    disc = 0.0;
  }
  const double x = (1.0 + std::sqrt(disc)) / (2.0 * nf.even_sum);

  const int j_max = static_cast<int>(k.size());
  const BasisSpec basis(j_max, 0);
  Eigen::VectorXcd amps(j_max + 1);
  double phase = 0.0;
  for (int j = 0; j <= j_max; ++j) {
    const double f = nf.factor[static_cast<std::size_t>(j)];
    const double mag = std::sqrt(j % 2 == 0 ? x * f : f / x);
    amps[j] = std::polar(mag, phase);
    if (j < j_max) phase -= std::arg(k.coefficients[static_cast<std::size_t>(j)]);
  }
  // Removes the O(1e-16) rounding left by the closed-form root.
  amps /= amps.norm();
  return {RotorState(basis, std::move(amps)), scale};
}

RotorState synthesize_state(const FourierVector& k, const SynthesisOptions& options) {
  return synthesize(k, options).state;
}

FourierVector state_to_fourier(const RotorState& state) {
  const auto& basis = state.basis();
  const auto& c = state.amplitudes();
  FourierVector k;
  k.coefficients.assign(static_cast<std::size_t>(basis.j_max()), {0.0, 0.0});
  for (int j = basis.j_min(); j < basis.j_max(); ++j) {
    const auto i = static_cast<Eigen::Index>(basis.index(j));
    k.coefficients[static_cast<std::size_t>(j)] =
        coupling_element(j, basis.m()) * std::conj(c[i + 1]) * c[i];
  }
  return k;
}

}  // namespace rotorshape
