#include <gtest/gtest.h>

#include <cmath>

#include "rotorshape/error.hpp"
#include "rotorshape/fit.hpp"

namespace rotorshape {
namespace {

struct Samples {
  std::vector<double> s, v;
};

Samples sample(const AnalyticFieldModel& m, int n) {
  Samples out;
  for (int i = 0; i <= n; ++i) {
    out.s.push_back(double(i) / n);
    out.v.push_back(m.value(out.s.back()));
  }
  return out;
}

TEST(Fit, ResidualOfTruthIsZero) {
  const auto a = AnalyticFieldModel::preset("a");
  const auto d = sample(a, 200);
  EXPECT_EQ(model_residual(a, d.s, d.v), 0.0);
  auto off = a;
  off.e0 += 0.01;
  EXPECT_GT(model_residual(off, d.s, d.v), 0.0);
}

TEST(Fit, RecoversPerturbedPresetA) {
  const auto truth = AnalyticFieldModel::preset("a");
  const auto d = sample(truth, 400);
  auto guess = truth;
  auto p = guess.parameters();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] *= (i % 2 ? 1.05 : 0.95);
  guess.set_parameters(p);
  const auto r = fit_model(d.s, d.v, guess);
  EXPECT_TRUE(r.improved);
  EXPECT_FALSE(r.degenerate);
  EXPECT_LE(r.residual, 1e-8 * truth.em);
  EXPECT_EQ(r.start_residuals.size(), 16u);
  // Only Em * E_i is identifiable.
  EXPECT_NEAR(r.model.em * r.model.e0, truth.em * truth.e0, 1e-6 * truth.em);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.model.em * r.model.amplitude[i], truth.em * truth.amplitude[i], 1e-6 * truth.em);
    EXPECT_NEAR(r.model.frequency[i], truth.frequency[i], 1e-6);
  }
  EXPECT_NEAR(r.model.sigma1, truth.sigma1, 1e-6);
  EXPECT_NEAR(r.model.sigma2, truth.sigma2, 1e-6);
  EXPECT_NEAR(r.model.value(0.37), truth.value(0.37), 1e-8 * truth.em);
}

TEST(Fit, ResidualNotAboveInitial) {
  const auto truth = AnalyticFieldModel::preset("b");
  auto d = sample(truth, 300);
  for (std::size_t i = 0; i < d.v.size(); ++i) d.v[i] += 1e-6 * std::sin(37.0 * i);
  auto guess = truth;
  guess.frequency[1] = 8.0;
  FitOptions opt;
  opt.starts = 4;
  const auto r = fit_model(d.s, d.v, guess, opt);
  EXPECT_LE(r.residual, r.initial_residual);
  for (double s : r.start_residuals) EXPECT_GE(s, r.residual);
}

TEST(Fit, ZeroSamplesAreDegenerate) {
  const std::vector<double> s(50, 0.0), v(50, 0.0);
  std::vector<double> grid(50);
  for (int i = 0; i < 50; ++i) grid[i] = i / 49.0;
  const auto r = fit_model(grid, v, AnalyticFieldModel::preset("a"));
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.model.em, 0.0);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(Fit, NeedsThirteenSamples) {
  std::vector<double> s(12, 0.5), v(12, 1.0);
  EXPECT_THROW(fit_model(s, v, AnalyticFieldModel::preset("a")), InvalidArgument);
  EXPECT_THROW(fit_model(std::vector<double>(20, 0.5), v, AnalyticFieldModel::preset("a")), InvalidArgument);
}

TEST(Fit, DeterministicAcrossThreads) {
  const auto truth = AnalyticFieldModel::preset("a");
  const auto d = sample(truth, 200);
  auto guess = truth;
  guess.frequency[0] = 0.6;
  FitOptions one, four;
  one.starts = four.starts = 6;
  four.threads = 4;
  const auto a = fit_model(d.s, d.v, guess, one);
  const auto b = fit_model(d.s, d.v, guess, four);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.start_residuals, b.start_residuals);
}

}  // namespace
}  // namespace rotorshape
