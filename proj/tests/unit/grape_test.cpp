#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "rotorshape/error.hpp"
#include "rotorshape/grape.hpp"
#include "rotorshape/synthesis.hpp"
#include "rotorshape/units.hpp"

namespace rotorshape {
namespace {

using C = std::complex<double>;

const Molecule& ocs() {
  static const Molecule m = Molecule::preset("OCS");
  return m;
}

TEST(Fidelity, Examples) {
  std::mt19937_64 rng(1);
  const RotorState a(BasisSpec(4), oracle::random_amplitudes(rng, 5));
  EXPECT_NEAR(fidelity(a, a).real_part, 1.0, 1e-15);
  EXPECT_NEAR(fidelity(a, a).overlap_squared, 1.0, 1e-15);
  const auto g = RotorState::eigenstate(BasisSpec(4), 0), e = RotorState::eigenstate(BasisSpec(4), 2);
  EXPECT_EQ(fidelity(g, e).real_part, 0.0);
  EXPECT_EQ(fidelity(g, e).overlap_squared, 0.0);
  const RotorState rotated(BasisSpec(4), a.amplitudes() * std::polar(1.0, std::numbers::pi / 3));
  EXPECT_NEAR(fidelity(rotated, a).real_part, 0.5, 1e-15);
  EXPECT_NEAR(fidelity(rotated, a).overlap_squared, 1.0, 1e-15);
  EXPECT_THROW(fidelity(g, RotorState::eigenstate(BasisSpec(5), 0)), InvalidArgument);
}

// Central finite differences of F0 against the adjoint gradient.
TEST(GrapeGradient, FiniteDifferenceProperty) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto h = Hamiltonian::of(ocs());
  for (int instance = 0; instance < 10; ++instance) {
    const BasisSpec basis(5);
    const RotorState psi0(basis, oracle::random_amplitudes(rng, 6));
    const RotorState target(basis, oracle::random_amplitudes(rng, 6));
    const double duration = ocs().period() * (0.3 + 0.7 * (u(rng) + 1.0) / 2.0);
    const GrapeProblem problem(h, psi0, target, duration, 16, 12, 0.1);
    std::vector<double> amps(16);
    for (auto& a : amps) a = 5e-4 * u(rng);
    const auto g = problem.evaluate(amps, true).gradient;
    double scale = 0.0;
    std::vector<double> fd(16);
    for (int k = 0; k < 16; ++k) {
      const double step = 1e-8;
      auto plus = amps, minus = amps;
      plus[k] += step;
      minus[k] -= step;
      fd[k] = (problem.evaluate(plus, false).fidelity.real_part - problem.evaluate(minus, false).fidelity.real_part) /
              (2 * step);
      scale = std::max(scale, std::abs(fd[k]));
    }
    for (int k = 0; k < 16; ++k) EXPECT_LE(std::abs(g[k] - fd[k]), 1e-6 * scale) << instance << " " << k;
  }
}

TEST(GrapeGradient, FreeFunctionAppliesMask) {
  std::mt19937_64 rng(3);
  const BasisSpec basis(5);
  const RotorState psi0(basis, oracle::random_amplitudes(rng, 6));
  const RotorState target(basis, oracle::random_amplitudes(rng, 6));
  std::vector<double> amps(16, 3e-4), mask(16, 1.0);
  mask[5] = 0.0;
  const PiecewiseConstantField field(ocs().period(), amps, 0.05, mask);
  const auto g = gradient(field, psi0, target, Hamiltonian::of(ocs()), 10);
  ASSERT_EQ(g.size(), 16u);
  EXPECT_EQ(g[5], 0.0);
  EXPECT_NE(g[4], 0.0);
}

TEST(GrapeGradient, EnvelopeZeroSliceHasZeroGradient) {
  // The sin^2 ramp only vanishes at the endpoints; whole slices are switched
  // off through the mask.
  std::mt19937_64 rng(4);
  const BasisSpec basis(4);
  const RotorState psi0(basis, oracle::random_amplitudes(rng, 5));
  const RotorState target(basis, oracle::random_amplitudes(rng, 5));
  std::vector<double> amps(8, 2e-4), mask(8, 1.0);
  mask[0] = mask[7] = 0.0;
  const PiecewiseConstantField field(ocs().period(), amps, 0.05, mask);
  const auto g = gradient(field, psi0, target, Hamiltonian::of(ocs()), 10);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g[7], 0.0);
  EXPECT_EQ(field(0.0), 0.0);
  EXPECT_EQ(field(field.duration()), 0.0);
}

TEST(GrapeOptimize, TargetEqualsInitialStopsImmediately) {
  const auto psi = RotorState::eigenstate(BasisSpec(6), 0);
  GrapeConfig cfg;
  cfg.slices = 32;
  cfg.substeps = 4;
  const auto r = optimize(psi, psi, Hamiltonian::of(ocs()), ocs().period(), cfg);
  ASSERT_EQ(r.history.size(), 1u);
  EXPECT_EQ(r.history[0].iteration, 0);
  EXPECT_TRUE(r.converged);
  for (double a : r.field.amplitudes()) EXPECT_EQ(a, 0.0);
  EXPECT_NEAR(r.fidelity.overlap_squared, 1.0, 1e-15);
}

RotorState small_target() {
  WaveformSpec s;
  s.kind = WaveformKind::kSawtooth;
  const auto k = analytic_fourier(s, 3);
  return synthesize_state(k.scaled(0.7 * max_feasible_scale(k))).padded(7);
}

TEST(GrapeOptimize, MonotoneAndConverging) {
  const auto target = small_target();
  const auto psi0 = RotorState::eigenstate(target.basis(), 0);
  for (auto method : {AscentMethod::kLbfgs, AscentMethod::kGradient}) {
    GrapeConfig cfg;
    cfg.slices = 64;
    cfg.substeps = 8;
    cfg.max_iterations = 300;
    cfg.method = method;
    const auto r = optimize(psi0, target, Hamiltonian::of(ocs()), ocs().period(), cfg);
    for (std::size_t i = 1; i < r.history.size(); ++i) {
      EXPECT_GE(r.history[i].real_part, r.history[i - 1].real_part);
    }
    if (method == AscentMethod::kLbfgs) {
      EXPECT_TRUE(r.converged);
      EXPECT_GE(r.fidelity.overlap_squared, 0.999);
    }
    EXPECT_EQ(r.field(0.0), 0.0);
    EXPECT_EQ(r.field(ocs().period()), 0.0);
    for (double a : r.field.amplitudes()) EXPECT_LE(std::abs(a), cfg.amplitude_bound);
  }
}

TEST(GrapeOptimize, DeterministicForSeed) {
  const auto target = small_target();
  const auto psi0 = RotorState::eigenstate(target.basis(), 0);
  GrapeConfig cfg;
  cfg.slices = 32;
  cfg.substeps = 8;
  cfg.max_iterations = 30;
  cfg.seed = 17;
  const auto a = optimize(psi0, target, Hamiltonian::of(ocs()), ocs().period(), cfg);
  const auto b = optimize(psi0, target, Hamiltonian::of(ocs()), ocs().period(), cfg);
  EXPECT_EQ(a.field.amplitudes(), b.field.amplitudes());
  EXPECT_EQ(a.history.size(), b.history.size());
}

TEST(GrapeOptimize, Validation) {
  GrapeConfig cfg;
  cfg.slices = 1;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.amplitude_bound = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  const auto psi = RotorState::eigenstate(BasisSpec(3, 1), 1);
  EXPECT_THROW(optimize_to_target(psi, Hamiltonian::of(ocs()), 1.0, GrapeConfig{}), InvalidArgument);
}

// OCS, j_max = 9, sigma-smoothed sawtooth with A0 = 1 (rescaled to the
// feasibility boundary), control time Tr.
TEST(GrapeOptimize, OcsSmoothedSawtooth) {
  WaveformSpec s;
  s.kind = WaveformKind::kSawtooth;
  s.amplitude = 1.0;
  s.sigma_smoothing = true;
  SynthesisOptions opt;
  opt.policy = FeasibilityPolicy::kRescale;
  const auto target = synthesize(analytic_fourier(s, 9), opt).state;
  const auto r = optimize_to_target(target, Hamiltonian::of(ocs()), ocs().period(), GrapeConfig{});
  EXPECT_GE(r.result.fidelity.overlap_squared, 0.99);
  EXPECT_LE(r.result.history.back().iteration, 1000);
  double peak = 0.0;
  for (double a : r.result.field.amplitudes()) peak = std::max(peak, std::abs(a));
  const double peak_vm = unit_convert(peak, Unit::kAuField, Unit::kVoltPerMeter);
  RecordProperty("peak_field_V_per_m", std::to_string(peak_vm));
  EXPECT_GE(peak_vm, 1e8);
  EXPECT_LE(peak_vm, 8e8);
}

}  // namespace
}  // namespace rotorshape
