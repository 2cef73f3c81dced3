#include "rotorshape/grape.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <random>

#include "rotorshape/error.hpp"

namespace rotorshape {

Fidelity fidelity(const RotorState& final_state, const RotorState& target) {
  if (!(final_state.basis() == target.basis())) throw InvalidArgument("basis mismatch");
  const Complex overlap = final_state.amplitudes().dot(target.amplitudes());  // <final|target>
  return {overlap.real(), std::norm(overlap)};
}

void GrapeConfig::validate() const {
  if (slices < 2) throw InvalidArgument("grape.slices must be >= 2");
  if (substeps < 1) throw InvalidArgument("grape.substeps must be >= 1");
  if (max_iterations < 0) throw InvalidArgument("grape.max_iterations must be >= 0");
  if (!(amplitude_bound > 0.0)) throw InvalidArgument("grape.amplitude_bound must be > 0");
  if (!(initial_scale >= 0.0)) throw InvalidArgument("grape.initial_scale must be >= 0");
  if (!(ramp_fraction >= 0.0 && ramp_fraction <= 0.5)) {
    throw InvalidArgument("grape.ramp_fraction must lie in [0, 0.5]");
  }
  if (stagnation_window < 1) throw InvalidArgument("grape.stagnation_window must be >= 1");
  if (lbfgs_memory < 1) throw InvalidArgument("grape.lbfgs_memory must be >= 1");
}

GrapeProblem::GrapeProblem(Hamiltonian hamiltonian, RotorState initial, RotorState target,
                           double duration, int slices, int substeps, double ramp_fraction)
    : hamiltonian_(hamiltonian),
      initial_(std::move(initial)),
      target_(std::move(target)),
      duration_(duration),
      slices_(slices),
      substeps_(substeps),
      ramp_fraction_(ramp_fraction),
      coupling_(initial_.basis()) {
  if (!(initial_.basis() == target_.basis())) throw InvalidArgument("basis mismatch");
  if (!(duration_ > 0.0)) throw InvalidArgument("control duration must be > 0");
  if (slices_ < 2 || substeps_ < 1) throw InvalidArgument("invalid slice discretization");
}

PiecewiseConstantField GrapeProblem::field(std::vector<double> amplitudes) const {
  return PiecewiseConstantField(duration_, std::move(amplitudes), ramp_fraction_);
}

GrapeProblem::Evaluation GrapeProblem::evaluate(const std::vector<double>& amplitudes,
                                                bool with_gradient) const {
  if (amplitudes.size() != static_cast<std::size_t>(slices_)) {
    throw InvalidArgument("amplitude count does not match slice count");
  }
  const PiecewiseConstantField fld = field(amplitudes);
  const int total = slices_ * substeps_;
  const double dt = duration_ / total;
  const StrangKernel kernel(coupling_, hamiltonian_, dt);

  std::vector<double> e(static_cast<std::size_t>(total));
  for (int s = 0; s < total; ++s) {
    const double t = (s + 0.5) * dt;
    e[static_cast<std::size_t>(s)] = fld(t);
    if (!std::isfinite(e[static_cast<std::size_t>(s)])) throw NonFiniteField(t, e[static_cast<std::size_t>(s)]);
  }

  // phi[s]: state right after the coupling factor of step s.
  std::vector<Eigen::MatrixXd> phi;
  if (with_gradient) phi.reserve(static_cast<std::size_t>(total));
  Eigen::MatrixXd w = to_block(initial_.amplitudes());
  for (int s = 0; s < total; ++s) {
    kernel.free_phase(w, 0.5);
    kernel.couple(w, e[static_cast<std::size_t>(s)]);
    if (with_gradient) phi.push_back(w);
    kernel.free_phase(w, 0.5);
  }
  RotorState final_state = StateAccess::make_unchecked(initial_.basis(), column_state(w, 0));
  Evaluation out{fidelity(final_state, target_), {}, std::move(final_state)};
  if (!with_gradient) return out;

  // chi[s] = (ops after coupling s)^dagger psi_T, swept backwards:
  //   dF0/dE_s = Re <chi_s| i mu0 dt C |phi_s> = -mu0 dt Im(chi_s^dagger C phi_s).
  out.gradient.assign(static_cast<std::size_t>(slices_), 0.0);
  Eigen::MatrixXd chi = to_block(target_.amplitudes());
  kernel.free_phase(chi, -0.5);
  Eigen::MatrixXd c_phi;
  for (int s = total - 1; s >= 0; --s) {
    const auto& p = phi[static_cast<std::size_t>(s)];
    kernel.apply_cos(p, c_phi);
    const double im = chi.col(0).dot(c_phi.col(1)) - chi.col(1).dot(c_phi.col(0));
    const double d_e = -hamiltonian_.dipole * dt * im;
    const double t = (s + 0.5) * dt;
    out.gradient[fld.slice_of(t)] += fld.chain_factor(t) * d_e;
    kernel.couple(chi, -e[static_cast<std::size_t>(s)]);
    kernel.free_phase(chi, -1.0);
  }
  return out;
}

std::vector<double> gradient(const PiecewiseConstantField& field, const RotorState& psi0,
                             const RotorState& psi_target, Hamiltonian hamiltonian, int substeps) {
  // The mask enters via the chain factor; rebuild with the field's own mask.
  const GrapeProblem problem(hamiltonian, psi0, psi_target, field.duration(),
                             static_cast<int>(field.slices()), substeps, field.ramp_fraction());
  auto g = problem.evaluate(field.amplitudes(), true).gradient;
  for (std::size_t k = 0; k < g.size(); ++k) g[k] *= field.mask()[k];
  return g;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double inf_norm(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho;
};

// Two-loop recursion for an ascent direction H * g, g = grad F0.
std::vector<double> lbfgs_direction(const std::vector<double>& g,
                                    const std::deque<CurvaturePair>& memory) {
  std::vector<double> q = g;
  std::vector<double> alpha(memory.size());
  for (std::size_t i = memory.size(); i-- > 0;) {
    alpha[i] = memory[i].rho * dot(memory[i].s, q);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] -= alpha[i] * memory[i].y[k];
  }
  if (!memory.empty()) {
    const auto& last = memory.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t i = 0; i < memory.size(); ++i) {
    const double beta = memory[i].rho * dot(memory[i].y, q);
    for (std::size_t k = 0; k < q.size(); ++k) q[k] += (alpha[i] - beta) * memory[i].s[k];
  }
  return q;
}

}  // namespace

GrapeResult optimize(const RotorState& psi0, const RotorState& psi_target, Hamiltonian hamiltonian,
                     double duration, const GrapeConfig& config) {
  config.validate();
  const GrapeProblem problem(hamiltonian, psi0, psi_target, duration, config.slices,
                             config.substeps, config.ramp_fraction);
  const auto m = static_cast<std::size_t>(config.slices);
  const double bound = config.amplitude_bound;

  std::vector<double> u(m, 0.0);
  auto current = problem.evaluate(u, true);
  std::vector<GrapeIteration> history;
  int evaluations = 1;

  auto finish = [&](bool converged, bool stagnated) {
    PropagationReport report;
    propagate(psi0, problem.field(u), hamiltonian, 0.0, duration,
              duration / (config.slices * config.substeps), &report);
    return GrapeResult{problem.field(u), history, current.final_state, current.fidelity,
                       converged, stagnated, report};
  };

  // Trivial problem: the free evolution already lands on the target.
  if (current.fidelity.real_part >= 1.0 - 1e-12) {
    history.push_back({0, current.fidelity.real_part, current.fidelity.overlap_squared, 0.0, 1});
    return finish(true, false);
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> init(-config.initial_scale, config.initial_scale);
  for (double& v : u) v = init(rng);
  current = problem.evaluate(u, true);
  ++evaluations;
  history.push_back({0, current.fidelity.real_part, current.fidelity.overlap_squared, 0.0, evaluations});

  std::deque<CurvaturePair> memory;
  double gradient_step = config.initial_scale > 0.0 ? config.initial_scale : 1e-6;
  int stagnant = 0;
  bool converged = false;
  bool stagnated = false;

  for (int it = 1; it <= config.max_iterations; ++it) {
    if (current.fidelity.overlap_squared >= config.target_overlap ||
        inf_norm(current.gradient) * bound < config.gradient_tolerance) {
      converged = true;
      break;
    }
    const auto& g = current.gradient;
    const bool quasi_newton = config.method == AscentMethod::kLbfgs && !memory.empty();
    std::vector<double> dir = quasi_newton ? lbfgs_direction(g, memory) : g;
    if (dot(dir, g) <= 0.0) {
      dir = g;
      memory.clear();
    }
    double alpha = (config.method == AscentMethod::kLbfgs && !memory.empty())
                       ? 1.0
                       : gradient_step / std::max(inf_norm(dir), 1e-300);

    bool accepted = false;
    std::vector<double> trial(m);
    std::optional<GrapeProblem::Evaluation> next;
    for (int attempt = 0; attempt < 60; ++attempt) {
      for (std::size_t k = 0; k < m; ++k) trial[k] = std::clamp(u[k] + alpha * dir[k], -bound, bound);
      next.emplace(problem.evaluate(trial, true));
      ++evaluations;
      double predicted = 0.0;
      for (std::size_t k = 0; k < m; ++k) predicted += g[k] * (trial[k] - u[k]);
      if (next->fidelity.real_part > current.fidelity.real_part &&
          next->fidelity.real_part >= current.fidelity.real_part + 1e-4 * predicted) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (!memory.empty()) {
        memory.clear();  // retry once along the plain gradient
        --it;
        continue;
      }
      stagnated = true;
      break;
    }

    CurvaturePair pair{std::vector<double>(m), std::vector<double>(m), 0.0};
    double max_move = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      pair.s[k] = trial[k] - u[k];
      // Minimizing -F0: y = (-g_new) - (-g_old).
      pair.y[k] = g[k] - next->gradient[k];
      max_move = std::max(max_move, std::abs(pair.s[k]));
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-12 * std::sqrt(dot(pair.s, pair.s) * dot(pair.y, pair.y))) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (memory.size() > static_cast<std::size_t>(config.lbfgs_memory)) memory.pop_front();
    }
    gradient_step = 2.0 * max_move;

    const double improvement = (next->fidelity.real_part - current.fidelity.real_part) /
                               std::max(std::abs(current.fidelity.real_part), 1e-12);
    u = trial;
    current = std::move(*next);
    history.push_back({it, current.fidelity.real_part, current.fidelity.overlap_squared, alpha, evaluations});
    stagnant = improvement < config.stagnation_tolerance ? stagnant + 1 : 0;
    if (stagnant >= config.stagnation_window) {
      stagnated = true;
      break;
    }
  }
  if (!converged && !stagnated) {
    converged = current.fidelity.overlap_squared >= config.target_overlap;
  }
  return finish(converged, stagnated);
}

PaddedGrapeResult optimize_to_target(const RotorState& target, Hamiltonian hamiltonian,
                                     double duration, const GrapeConfig& config, int padding,
                                     int padding_step, int max_padding) {
  if (target.basis().m() != 0) throw InvalidArgument("target must be an m = 0 state");
  if (padding < 0 || padding_step < 1) throw InvalidArgument("invalid basis padding");
  for (;;) {
    const RotorState goal = target.padded(target.basis().j_max() + padding);
    const RotorState start = RotorState::eigenstate(goal.basis(), 0);
    GrapeResult r = optimize(start, goal, hamiltonian, duration, config);
    if (!r.report.truncation_warning() || padding + padding_step > max_padding) {
      return {std::move(r), padding};
    }
    padding += padding_step;
  }
}

}  // namespace rotorshape
