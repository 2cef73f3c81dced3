#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rotorshape/error.hpp"
#include "rotorshape/waveform.hpp"

namespace rotorshape {
namespace {

using std::numbers::pi;
constexpr double kR = 0.7071067811865476;

WaveformSpec spec(WaveformKind kind, double a0 = 1.0, double r = kR, bool sigma = false) {
  WaveformSpec s;
  s.kind = kind;
  s.amplitude = a0;
  s.ratio = r;
  s.sigma_smoothing = sigma;
  return s;
}

std::vector<double> grid(int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = double(i) / n;
  return t;
}

TEST(Waveform, RectangularFirstCoefficient) {
  const auto k = analytic_fourier(spec(WaveformKind::kRectangular), 3);
  EXPECT_NEAR(std::abs(k.coefficients[0]), std::sin(pi * kR) / (pi * (1.0 - kR)), 1e-15);
  EXPECT_NEAR(std::abs(k.coefficients[0]), 0.8647, 5e-5);
}

TEST(Waveform, SawtoothCoefficient) {
  const auto k = analytic_fourier(spec(WaveformKind::kSawtooth), 3);
  EXPECT_NEAR(std::abs(k.coefficients[2]), 1.0 / (3.0 * pi), 1e-16);
  EXPECT_NEAR(std::abs(k.coefficients[2]), 0.10610, 5e-6);
}

TEST(Waveform, SigmaFactor) {
  EXPECT_NEAR(sigma_factor(1, 5), std::sin(pi / 5) / (pi / 5), 1e-16);
  EXPECT_NEAR(sigma_factor(1, 5), 0.93549, 5e-6);
  EXPECT_NEAR(sigma_factor(5, 5), 0.0, 1e-16);
  EXPECT_EQ(sinc(0.0), 1.0);
}

TEST(Waveform, SigmaDefaultOrderIsJMaxPlusOne) {
  auto s = spec(WaveformKind::kSawtooth, 1.0, kR, true);
  const auto smoothed = analytic_fourier(s, 9);
  const auto raw = analytic_fourier(spec(WaveformKind::kSawtooth), 9);
  for (int j = 0; j < 9; ++j) {
    const double expected = std::sin((j + 1) * pi / 10) / ((j + 1) * pi / 10);
    EXPECT_NEAR(std::abs(smoothed.coefficients[j]) / std::abs(raw.coefficients[j]), expected, 1e-14);
  }
  s.sigma_order = 4;
  EXPECT_NEAR(std::abs(analytic_fourier(s, 9).coefficients[3]), 0.0, 1e-17);
}

// Coefficients against numerical projection of the piecewise signal.
TEST(Waveform, CoefficientsMatchQuadratureOfSignal) {
  for (auto kind : {WaveformKind::kRectangular, WaveformKind::kTriangular, WaveformKind::kSawtooth}) {
    for (double r : {kR, 0.3183098861837907}) {
      const auto s = spec(kind, 0.8, r);
      const double brk = kind == WaveformKind::kSawtooth ? 0.5 : r;
      const auto k = analytic_fourier(s, 12);
      for (int j = 0; j < 12; ++j) {
        const auto c = oracle::fourier_coefficient([&](double t) { return sample_signal(s, t); }, j + 1,
                                                   {0.0, brk, 1.0});
        EXPECT_NEAR(std::abs(k.coefficients[j] - c), 0.0, 1e-10)
            << waveform_kind_name(kind) << " r=" << r << " j=" << j;
      }
    }
  }
}

TEST(Waveform, SampleValues) {
  const auto rect = spec(WaveformKind::kRectangular, 1.0, 0.5);
  EXPECT_EQ(sample_signal(rect, 0.25), 1.0);
  EXPECT_EQ(sample_signal(rect, 0.75), -1.0);
  EXPECT_EQ(sample_signal(rect, 1.25), 1.0);
  const auto tri = spec(WaveformKind::kTriangular, 1.0, 0.5);
  EXPECT_EQ(sample_signal(tri, 0.0), -1.0);
  EXPECT_NEAR(sample_signal(tri, 0.5), 1.0, 1e-15);
  const auto r2 = spec(WaveformKind::kRectangular, 2.0, 0.25);
  EXPECT_NEAR(sample_signal(r2, 0.5), -0.25 / 0.75 * 2.0, 1e-15);
}

TEST(Waveform, ZeroAreaProperty) {
  for (auto kind : {WaveformKind::kRectangular, WaveformKind::kTriangular, WaveformKind::kSawtooth}) {
    for (double r : {0.2, 0.5, kR, 0.9}) {
      const auto s = spec(kind, 0.7, r);
      const double brk = kind == WaveformKind::kSawtooth ? 0.5 : r;
      auto f = [&](double t) { return sample_signal(s, t); };
      const double area = oracle::simpson(f, 1e-15, brk - 1e-15) + oracle::simpson(f, brk + 1e-15, 1.0 - 1e-15);
      EXPECT_LE(std::abs(area), 1e-10 * 0.7);
      // Dense uniform mean (midpoint values at the jumps keep it exact).
      const auto v = sample_signal(s, grid(100000));
      double mean = 0.0;
      for (double x : v) mean += x;
      EXPECT_LE(std::abs(mean / v.size()), 1e-4 * 0.7);
    }
  }
}

TEST(Waveform, SingleCosine) {
  FourierVector k;
  k.coefficients = {0.5};
  for (double t : grid(64)) EXPECT_NEAR(fourier_to_value(k, t), std::cos(2 * pi * t), 1e-15);
  FourierVector zero;
  zero.coefficients.assign(5, 0.0);
  for (double v : fourier_to_timeseries(zero, grid(10))) EXPECT_EQ(v, 0.0);
}

TEST(Waveform, SmoothedSawtoothTruncationError) {
  // Away from the jump at 1/2 the smoothed 20-term series stays close.
  const auto s = spec(WaveformKind::kSawtooth, 1.0, kR, true);
  const auto k = analytic_fourier(s, 20);
  double worst = 0.0;
  for (double t : grid(2000)) {
    if (std::abs(t - 0.5) < 0.1 || t < 0.02 || t > 0.98) continue;
    worst = std::max(worst, std::abs(fourier_to_value(k, t) - sample_signal(s, t)));
  }
  EXPECT_LT(worst, 0.05);
}

TEST(Waveform, ParsevalProperty) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    FourierVector k;
    for (int j = 0; j < 15; ++j) k.coefficients.emplace_back(g(rng), g(rng));
    const auto v = fourier_to_timeseries(k, grid(64));
    double ms = 0.0;
    for (double x : v) ms += x * x;
    EXPECT_NEAR(std::sqrt(ms / v.size()), std::sqrt(2.0) * k.norm(), 1e-10 * k.norm());
  }
}

TEST(Waveform, ProjectionRoundTrip) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    FourierVector k;
    k.period = 3.7;
    for (int j = 0; j < 20; ++j) k.coefficients.emplace_back(g(rng), g(rng));
    std::vector<double> t;
    for (double x : grid(256)) t.push_back(x * k.period);
    const auto back = project_harmonics(fourier_to_timeseries(k, t), 20, k.period);
    for (int j = 0; j < 20; ++j) EXPECT_NEAR(std::abs(back.coefficients[j] - k.coefficients[j]), 0.0, 1e-8);
  }
  EXPECT_THROW(project_harmonics(std::vector<double>(10, 0.0), 5), InvalidArgument);
}

double series_peak(const FourierVector& k) {
  double peak = 0.0;
  for (double t : grid(20000)) peak = std::max(peak, std::abs(fourier_to_value(k, t)));
  return peak;
}

TEST(Waveform, SigmaReducesOvershootProperty) {
  for (auto kind : {WaveformKind::kRectangular, WaveformKind::kSawtooth}) {
    for (int jm : {5, 10, 20}) {
      const double raw = series_peak(analytic_fourier(spec(kind), jm));
      const double smooth = series_peak(analytic_fourier(spec(kind, 1.0, kR, true), jm));
      EXPECT_LE(smooth, raw) << waveform_kind_name(kind) << " " << jm;
    }
  }
}

TEST(Waveform, VanishingHarmonicsFlagged) {
  EXPECT_EQ(vanishing_harmonics(spec(WaveformKind::kRectangular, 1.0, 0.5), 6), (std::vector<int>{1, 3, 5}));
  EXPECT_TRUE(vanishing_harmonics(spec(WaveformKind::kTriangular), 40).empty());
  EXPECT_TRUE(vanishing_harmonics(spec(WaveformKind::kSawtooth, 1.0, 0.5), 40).empty());
}

TEST(Waveform, Validation) {
  EXPECT_THROW(analytic_fourier(spec(WaveformKind::kSawtooth, 0.0), 3), InvalidArgument);
  EXPECT_THROW(analytic_fourier(spec(WaveformKind::kRectangular, 1.0, 1.0), 3), InvalidArgument);
  EXPECT_NO_THROW(analytic_fourier(spec(WaveformKind::kSawtooth, 1.0, 1.0), 3));
  EXPECT_THROW(analytic_fourier(spec(WaveformKind::kSawtooth), 0), InvalidArgument);
  EXPECT_THROW(parse_waveform_kind("square"), InvalidArgument);
  EXPECT_EQ(parse_waveform_kind("triangular"), WaveformKind::kTriangular);
}

}  // namespace
}  // namespace rotorshape
