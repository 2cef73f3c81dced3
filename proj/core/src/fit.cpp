#include "rotorshape/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/LevenbergMarquardt>

#include "rotorshape/error.hpp"
#include "rotorshape/parallel.hpp"

namespace rotorshape {

double model_residual(const AnalyticFieldModel& model, const std::vector<double>& s,
                      const std::vector<double>& values) {
  if (s.size() != values.size() || s.empty()) throw InvalidArgument("sample size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double d = model.value(s[i]) - values[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(s.size()));
}

namespace {

using Params = std::array<double, AnalyticFieldModel::kParameterCount>;

// Residuals scaled by 1/scale; the free parameters skip Em unless it is fitted.
struct ModelFunctor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  using QRSolver = Eigen::ColPivHouseholderQR<JacobianType>;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const std::vector<double>& s;
  const std::vector<double>& y;
  double scale;
  double fixed_em;
  bool fit_em;

  int inputs() const { return fit_em ? 13 : 12; }
  int values() const { return static_cast<int>(s.size()); }

  Params unpack(const Eigen::VectorXd& x) const {
    Params p{};
    const int off = fit_em ? 0 : 1;
    p[0] = fit_em ? x[0] : fixed_em;
    for (int i = 1; i < 13; ++i) p[static_cast<std::size_t>(i)] = x[i - off];
    return p;
  }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
    AnalyticFieldModel m;
    m.set_parameters(unpack(x));
    m.sigma1 = std::abs(m.sigma1);
    m.sigma2 = std::abs(m.sigma2);
    for (std::size_t i = 0; i < s.size(); ++i) fvec[static_cast<Eigen::Index>(i)] = (m.value(s[i]) - y[i]) / scale;
    return 0;
  }

  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& jac) const {
    constexpr double pi = std::numbers::pi;
    const Params p = unpack(x);
    const double em = p[0];
    const double sg1 = std::abs(p[11]);
    const double sg2 = std::abs(p[12]);
    const double sign1 = p[11] < 0.0 ? -1.0 : 1.0;
    const double sign2 = p[12] < 0.0 ? -1.0 : 1.0;
    const int off = fit_em ? 0 : 1;
    jac.setZero(values(), inputs());
    for (std::size_t r = 0; r < s.size(); ++r) {
      const double t = s[r];
      if (t <= 0.0 || t >= 1.0) continue;
      double carrier = p[1];
      std::array<double, 3> sn{}, cs{};
      for (std::size_t i = 0; i < 3; ++i) {
        const double theta = 2.0 * pi * p[5 + i] * t + pi * p[8 + i];
        sn[i] = std::sin(theta);
        cs[i] = std::cos(theta);
        carrier += p[2 + i] * sn[i];
      }
      double w = 0.0, dw1 = 0.0, dw2 = 0.0;
      if (t <= 0.5) {
        const double e = std::exp(-t / sg1);
        w = 1.0 - e;
        dw1 = -e * t / (sg1 * sg1) * sign1;
      } else {
        const double e = std::exp(-(1.0 - t) / sg2);
        w = 1.0 - e;
        dw2 = -e * (1.0 - t) / (sg2 * sg2) * sign2;
      }
      std::array<double, 13> g{};
      g[0] = carrier * w;
      g[1] = em * w;
      for (std::size_t i = 0; i < 3; ++i) {
        g[2 + i] = em * sn[i] * w;
        g[5 + i] = em * p[2 + i] * cs[i] * 2.0 * pi * t * w;
        g[8 + i] = em * p[2 + i] * cs[i] * pi * w;
      }
      g[11] = em * carrier * dw1;
      g[12] = em * carrier * dw2;
      const auto row = static_cast<Eigen::Index>(r);
      if (fit_em) jac(row, 0) = g[0] / scale;
      for (int i = 1; i < 13; ++i) jac(row, i - off) = g[static_cast<std::size_t>(i)] / scale;
    }
    return 0;
  }
};

AnalyticFieldModel perturbed(const AnalyticFieldModel& base, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AnalyticFieldModel m = base;
  m.e0 *= 1.0 + 0.3 * u(rng);
  for (std::size_t i = 0; i < 3; ++i) {
    m.amplitude[i] *= 1.0 + 0.3 * u(rng);
    m.frequency[i] = std::max(0.0, m.frequency[i] + 0.5 * u(rng));
    m.phase[i] += 0.25 * u(rng);
  }
  m.sigma1 *= 1.0 + 0.3 * u(rng);
  m.sigma2 *= 1.0 + 0.3 * u(rng);
  return m;
}

}  // namespace

FitResult fit_model(const std::vector<double>& s, const std::vector<double>& values,
                    const AnalyticFieldModel& initial_guess, const FitOptions& options) {
  if (s.size() != values.size()) throw InvalidArgument("sample size mismatch");
  if (s.size() < AnalyticFieldModel::kParameterCount) {
    throw InvalidArgument("fit needs at least 13 samples");
  }
  if (options.starts < 1) throw InvalidArgument("fit.starts must be >= 1");

  FitResult result;
  result.initial_residual = model_residual(initial_guess, s, values);
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) {
    result.model = initial_guess;
    result.model.em = 0.0;
    result.residual = 0.0;
    result.improved = result.initial_residual > 0.0;
    result.degenerate = true;
    result.start_residuals.assign(1, 0.0);
    return result;
  }
  if (!(initial_guess.em != 0.0) && !options.fit_em) {
    throw InvalidArgument("initial guess has Em = 0 with Em held fixed");
  }

  std::vector<AnalyticFieldModel> starts{initial_guess};
  std::mt19937_64 rng(options.seed);
  for (int k = 1; k < options.starts; ++k) starts.push_back(perturbed(initial_guess, rng));

  std::vector<AnalyticFieldModel> fitted(starts.size());
  std::vector<double> residuals(starts.size());
  parallel_for(starts.size(), options.threads, [&](std::size_t k) {
    ModelFunctor functor{s, values, peak, initial_guess.em, options.fit_em};
    const Params p0 = starts[k].parameters();
    Eigen::VectorXd x(functor.inputs());
    const int off = options.fit_em ? 0 : 1;
    if (options.fit_em) x[0] = p0[0];
    for (int i = 1; i < 13; ++i) x[i - off] = p0[static_cast<std::size_t>(i)];
    Eigen::LevenbergMarquardt<ModelFunctor> lm(functor);
    lm.setMaxfev(options.max_evaluations);
    lm.setFtol(1e-15);
    lm.setXtol(1e-15);
    lm.minimize(x);
    AnalyticFieldModel m = starts[k];
    m.set_parameters(functor.unpack(x));
    m.sigma1 = std::abs(m.sigma1);
    m.sigma2 = std::abs(m.sigma2);
    const double r = model_residual(m, s, values);
    // LM never leaves a start worse than it found it; keep the start if it did.
    const double r0 = model_residual(starts[k], s, values);
    fitted[k] = r <= r0 ? m : starts[k];
    residuals[k] = std::min(r, r0);
  });

  const auto best = static_cast<std::size_t>(
      std::min_element(residuals.begin(), residuals.end()) - residuals.begin());
  result.model = fitted[best];
  result.residual = residuals[best];
  result.start_residuals = residuals;
  result.improved = result.residual < result.initial_residual;
  double model_peak = 0.0;
  for (double t : s) model_peak = std::max(model_peak, std::abs(result.model.value(t)));
  result.degenerate = model_peak <= 1e-12 * peak;
  return result;
}

}  // namespace rotorshape
