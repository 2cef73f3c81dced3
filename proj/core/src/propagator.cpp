#include "rotorshape/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "rotorshape/error.hpp"
#include "rotorshape/observables.hpp"
#include "rotorshape/parallel.hpp"

namespace rotorshape {

double default_time_step(const Molecule& molecule) {
  return molecule.period() / kDefaultStepsPerPeriod;
}

StrangKernel::StrangKernel(const CouplingMatrix& coupling, Hamiltonian hamiltonian, double dt)
    : coupling_(coupling), hamiltonian_(hamiltonian), dt_(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step must be > 0");
  v_ = coupling_.eigenvectors();
  vt_ = v_.transpose();
  const auto n = static_cast<Eigen::Index>(coupling_.basis().dim());
  energies_.resize(n);
  half_cos_.resize(n);
  half_sin_.resize(n);
  full_cos_.resize(n);
  full_sin_.resize(n);
  const int j_min = coupling_.basis().j_min();
  for (Eigen::Index l = 0; l < n; ++l) {
    const double j = j_min + static_cast<double>(l);
    energies_[l] = hamiltonian_.rotational_constant * j * (j + 1.0);
    half_cos_[l] = std::cos(-0.5 * energies_[l] * dt_);
    half_sin_[l] = std::sin(-0.5 * energies_[l] * dt_);
    full_cos_[l] = std::cos(-energies_[l] * dt_);
    full_sin_[l] = std::sin(-energies_[l] * dt_);
  }
}

void StrangKernel::scale_rows(Eigen::MatrixXd& block, const Eigen::VectorXd& c,
                              const Eigen::VectorXd& s) const {
  const Eigen::Index k = block.cols() / 2;
  auto re = block.leftCols(k);
  auto im = block.rightCols(k);
  for (Eigen::Index col = 0; col < k; ++col) {
    for (Eigen::Index l = 0; l < block.rows(); ++l) {
      const double r = re(l, col);
      const double i = im(l, col);
      re(l, col) = c[l] * r - s[l] * i;
      im(l, col) = s[l] * r + c[l] * i;
    }
  }
}

void StrangKernel::free_phase(Eigen::MatrixXd& block, double fraction) const {
  if (fraction == 0.5) {
    scale_rows(block, half_cos_, half_sin_);
  } else if (fraction == 1.0) {
    scale_rows(block, full_cos_, full_sin_);
  } else {
    Eigen::VectorXd c = (-fraction * dt_ * energies_).array().cos();
    Eigen::VectorXd s = (-fraction * dt_ * energies_).array().sin();
    scale_rows(block, c, s);
  }
}

void StrangKernel::couple(Eigen::MatrixXd& block, double field) const {
  if (field == 0.0) return;
  const double a = hamiltonian_.dipole * field * dt_;
  const auto& lambda = coupling_.eigenvalues();
  const Eigen::VectorXd c = (a * lambda).array().cos();
  const Eigen::VectorXd s = (a * lambda).array().sin();
  scratch_.noalias() = vt_ * block;
  scale_rows(scratch_, c, s);
  block.noalias() = v_ * scratch_;
}

void StrangKernel::apply_cos(const Eigen::MatrixXd& block, Eigen::MatrixXd& out) const {
  const auto& off = coupling_.off_diagonal();
  out.setZero(block.rows(), block.cols());
  for (Eigen::Index col = 0; col < block.cols(); ++col) {
    for (Eigen::Index i = 0; i + 1 < block.rows(); ++i) {
      out(i, col) += off[i] * block(i + 1, col);
      out(i + 1, col) += off[i] * block(i, col);
    }
  }
}

void StrangKernel::run(Eigen::MatrixXd& block, const Field& field, double t_start, int steps,
                       const Observer& after_step) const {
  for (int s = 0; s < steps; ++s) {
    const double t_mid = t_start + (s + 0.5) * dt_;
    const double e = field(t_mid);
    if (!std::isfinite(e)) throw NonFiniteField(t_mid, e);
    free_phase(block, 0.5);
    couple(block, e);
    free_phase(block, 0.5);
    if (after_step) after_step(s, t_start + (s + 1) * dt_, block);
  }
}

Eigen::MatrixXd to_block(const Eigen::VectorXcd& amplitudes) {
  Eigen::MatrixXd block(amplitudes.size(), 2);
  block.col(0) = amplitudes.real();
  block.col(1) = amplitudes.imag();
  return block;
}

Eigen::VectorXcd column_state(const Eigen::MatrixXd& block, Eigen::Index column) {
  const Eigen::Index k = block.cols() / 2;
  Eigen::VectorXcd v(block.rows());
  for (Eigen::Index l = 0; l < block.rows(); ++l) v[l] = {block(l, column), block(l, column + k)};
  return v;
}

namespace {

double top_population(const Eigen::MatrixXd& block) {
  const Eigen::Index n = block.rows();
  const Eigen::Index k = block.cols() / 2;
  double worst = 0.0;
  for (Eigen::Index col = 0; col < k; ++col) {
    double p = 0.0;
    for (Eigen::Index l = std::max<Eigen::Index>(0, n - 2); l < n; ++l) {
      p += block(l, col) * block(l, col) + block(l, col + k) * block(l, col + k);
    }
    worst = std::max(worst, p);
  }
  return worst;
}

}  // namespace

int step_count(double t_span, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be > 0");
  if (t_span < 0.0) throw InvalidArgument("time span must be >= 0");
  const double ratio = t_span / dt;
  const double steps = std::round(ratio);
  if (std::abs(steps * dt - t_span) > 1e-9 * std::max(t_span, dt)) {
    throw InvalidArgument("time step does not divide the propagation span");
  }
  return static_cast<int>(steps);
}

RotorState propagate(const RotorState& state, const Field& field, Hamiltonian hamiltonian,
                     double t_start, double t_end, double dt, PropagationReport* report,
                     const StrangKernel::Observer& after_step) {
  const int steps = step_count(t_end - t_start, dt);
  if (steps == 0) return state;
  const CouplingMatrix coupling(state.basis());
  const StrangKernel kernel(coupling, hamiltonian, (t_end - t_start) / steps);
  Eigen::MatrixXd block = to_block(state.amplitudes());
  StrangKernel::Observer observer = after_step;
  if (report) {
    observer = [&](int s, double t, const Eigen::MatrixXd& b) {
      report->max_top_population = std::max(report->max_top_population, top_population(b));
      if (after_step) after_step(s, t, b);
    };
  }
  kernel.run(block, field, t_start, steps, observer);
  return StateAccess::make_unchecked(state.basis(), column_state(block, 0));
}

RotorState free_evolve(const RotorState& state, double rotational_constant, double tau) {
  // B j(j+1) tau = 2 pi (B tau / pi) (j(j+1)/2); reducing the turn count modulo
  // one keeps revivals exact for large j.
  const double turns = rotational_constant * tau / std::numbers::pi;
  Eigen::VectorXcd amps = state.amplitudes();
  const int j_min = state.basis().j_min();
  for (Eigen::Index l = 0; l < amps.size(); ++l) {
    const long j = j_min + l;
    const double cycles = turns * static_cast<double>(j * (j + 1) / 2);
    const double frac = cycles - std::floor(cycles);
    amps[l] *= std::polar(1.0, -2.0 * std::numbers::pi * frac);
  }
  return StateAccess::make_unchecked(state.basis(), std::move(amps));
}

EnsemblePropagator::EnsemblePropagator(const ThermalEnsemble& ensemble, EnsembleOptions options)
    : ensemble_(ensemble), options_(options) {
  if (options_.steps_per_period < 1) throw InvalidArgument("steps_per_period must be >= 1");
  std::map<int, std::map<int, double>> grouped;  // |m| -> j0 -> weight
  for (const auto& c : ensemble_.channels) grouped[std::abs(c.m0)][c.j0] += c.weight;
  for (const auto& [m, levels] : grouped) {
    Block b;
    b.m = m;
    for (const auto& [j0, w] : levels) {
      b.j0.push_back(j0);
      b.weight.push_back(w);
    }
    const BasisSpec basis(ensemble_.j_max, m);
    const auto k = static_cast<Eigen::Index>(b.j0.size());
    b.initial = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(basis.dim()), 2 * k);
    for (Eigen::Index col = 0; col < k; ++col) {
      b.initial(static_cast<Eigen::Index>(basis.index(b.j0[static_cast<std::size_t>(col)])), col) = 1.0;
    }
    blocks_.push_back(std::move(b));
    couplings_.emplace_back(basis);
  }
}

double EnsemblePropagator::time_step(double duration) const {
  const double dt = ensemble_.molecule.period() / options_.steps_per_period;
  const double steps = std::max(1.0, std::ceil(duration / dt - 1e-9));
  return duration / steps;
}

std::vector<Eigen::MatrixXd> EnsemblePropagator::run_blocks(const Field& field,
                                                            PropagationReport* report) const {
  const double duration = field.duration();
  const double dt = time_step(duration);
  const int steps = step_count(duration, dt);
  const Hamiltonian h = Hamiltonian::of(ensemble_.molecule);
  std::vector<Eigen::MatrixXd> out(blocks_.size());
  std::vector<double> top(blocks_.size(), 0.0);
  parallel_for(blocks_.size(), options_.threads, [&](std::size_t i) {
    const StrangKernel kernel(couplings_[i], h, dt);
    out[i] = blocks_[i].initial;
    StrangKernel::Observer watch;
    if (report) {
      watch = [&top, i](int, double, const Eigen::MatrixXd& b) {
        top[i] = std::max(top[i], top_population(b));
      };
    }
    kernel.run(out[i], field, 0.0, steps, watch);
  });
  if (report) {
    for (double t : top) report->max_top_population = std::max(report->max_top_population, t);
  }
  return out;
}

ThermalEnsemble EnsemblePropagator::propagate(const Field& field, PropagationReport* report) const {
  const auto results = run_blocks(field, report);
  ThermalEnsemble out = ensemble_;
  for (auto& c : out.channels) {
    const auto bit = std::find_if(blocks_.begin(), blocks_.end(),
                                  [&](const Block& b) { return b.m == std::abs(c.m0); });
    const auto col = std::find(bit->j0.begin(), bit->j0.end(), c.j0) - bit->j0.begin();
    c.state = StateAccess::make_unchecked(c.state.basis(),
                                          column_state(results[bit - blocks_.begin()], col));
  }
  return out;
}

FourierVector EnsemblePropagator::fourier_after(const Field& field, PropagationReport* report) const {
  const auto results = run_blocks(field, report);
  FourierVector k;
  k.period = ensemble_.molecule.period();
  k.coefficients.assign(static_cast<std::size_t>(ensemble_.j_max), {0.0, 0.0});
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& w = results[b];
    const Eigen::Index cols = w.cols() / 2;
    const int m = blocks_[b].m;
    for (Eigen::Index col = 0; col < cols; ++col) {
      const double weight = blocks_[b].weight[static_cast<std::size_t>(col)];
      for (Eigen::Index l = 0; l + 1 < w.rows(); ++l) {
        const int j = m + static_cast<int>(l);
        const Complex lo(w(l, col), w(l, col + cols));
        const Complex hi(w(l + 1, col), w(l + 1, col + cols));
        k.coefficients[static_cast<std::size_t>(j)] +=
            weight * coupling_element(j, m) * std::conj(hi) * lo;
      }
    }
  }
  return k;
}

std::vector<std::pair<double, double>> EnsemblePropagator::trace_during(const Field& field,
                                                                        int stride) const {
  if (stride < 1) throw InvalidArgument("stride must be >= 1");
  const double duration = field.duration();
  const double dt = time_step(duration);
  const int steps = step_count(duration, dt);
  const Hamiltonian h = Hamiltonian::of(ensemble_.molecule);
  const int samples = steps / stride + 1;
  std::vector<std::vector<double>> partial(blocks_.size(), std::vector<double>(samples, 0.0));
  parallel_for(blocks_.size(), options_.threads, [&](std::size_t i) {
    const auto& blk = blocks_[i];
    const StrangKernel kernel(couplings_[i], h, dt);
    auto orientation = [&](const Eigen::MatrixXd& w) {
      const Eigen::Index cols = w.cols() / 2;
      double sum = 0.0;
      for (Eigen::Index col = 0; col < cols; ++col) {
        double c = 0.0;
        for (Eigen::Index l = 0; l + 1 < w.rows(); ++l) {
          c += coupling_element(blk.m + static_cast<int>(l), blk.m) *
               (w(l, col) * w(l + 1, col) + w(l, col + cols) * w(l + 1, col + cols));
        }
        sum += blk.weight[static_cast<std::size_t>(col)] * 2.0 * c;
      }
      return sum;
    };
    Eigen::MatrixXd w = blk.initial;
    partial[i][0] = orientation(w);
    kernel.run(w, field, 0.0, steps, [&](int s, double, const Eigen::MatrixXd& b) {
      if ((s + 1) % stride == 0) partial[i][static_cast<std::size_t>((s + 1) / stride)] = orientation(b);
    });
  });
  std::vector<std::pair<double, double>> out(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    double v = 0.0;
    for (const auto& p : partial) v += p[static_cast<std::size_t>(s)];
    out[static_cast<std::size_t>(s)] = {s * stride * dt, v};
  }
  return out;
}

ThermalEnsemble propagate_ensemble(const ThermalEnsemble& ensemble, const Field& field,
                                   const EnsembleOptions& options, PropagationReport* report) {
  return EnsemblePropagator(ensemble, options).propagate(field, report);
}

std::vector<double> post_pulse_orientation(const ThermalEnsemble& post_pulse,
                                           std::span<const double> tau) {
  std::vector<double> out;
  out.reserve(tau.size());
  const double b = post_pulse.molecule.rotational_constant();
  for (double t : tau) {
    double v = 0.0;
    for (const auto& c : post_pulse.channels) v += c.weight * expectation_cos(free_evolve(c.state, b, t));
    out.push_back(v);
  }
  return out;
}

std::vector<double> ensemble_orientation(const ThermalEnsemble& ensemble, const Field& field,
                                         std::span<const double> tau, const EnsembleOptions& options) {
  return post_pulse_orientation(propagate_ensemble(ensemble, field, options), tau);
}

FourierVector measure_fourier(const ThermalEnsemble& post_pulse, std::size_t harmonics) {
  FourierVector k;
  k.period = post_pulse.molecule.period();
  const auto n = harmonics > 0 ? harmonics : static_cast<std::size_t>(post_pulse.j_max);
  k.coefficients.assign(n, {0.0, 0.0});
  for (const auto& c : post_pulse.channels) {
    const auto& basis = c.state.basis();
    const auto& amps = c.state.amplitudes();
    for (int j = basis.j_min(); j < basis.j_max() && static_cast<std::size_t>(j) < n; ++j) {
      const auto l = static_cast<Eigen::Index>(basis.index(j));
      k.coefficients[static_cast<std::size_t>(j)] +=
          c.weight * coupling_element(j, basis.m()) * std::conj(amps[l + 1]) * amps[l];
    }
  }
  return k;
}

}  // namespace rotorshape
