#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rotorshape/coupling.hpp"
#include "rotorshape/field.hpp"
#include "rotorshape/molecule.hpp"
#include "rotorshape/rotor_state.hpp"
#include "rotorshape/thermal.hpp"
#include "rotorshape/waveform.hpp"

namespace rotorshape {

inline constexpr int kDefaultStepsPerPeriod = 20000;

/// Tr / 20000.
double default_time_step(const Molecule& molecule);

/// One second-order Strang step of H = B J^2 - mu0 E cos(theta) for a fixed
/// channel basis and step size:
///   exp(-i B J^2 dt/2) exp(+i mu0 E(t_mid) dt C) exp(-i B J^2 dt/2),
/// the coupling factor applied through C = V diag(lambda) V^T.
///
/// States are processed as blocks W = [Re Psi | Im Psi] (dim x 2k, one column
/// pair per state) so that ensembles propagate with real matrix products.
class StrangKernel {
 public:
  StrangKernel(const CouplingMatrix& coupling, Hamiltonian hamiltonian, double dt);

  const BasisSpec& basis() const noexcept { return coupling_.basis(); }
  double dt() const noexcept { return dt_; }
  Hamiltonian hamiltonian() const noexcept { return hamiltonian_; }

  /// Multiplies row l by exp(-i B j_l (j_l+1) fraction dt).
  void free_phase(Eigen::MatrixXd& block, double fraction) const;
  /// Applies exp(+i mu0 field dt C).
  void couple(Eigen::MatrixXd& block, double field) const;
  /// Applies C (no exponential) to a block; used by adjoint gradients.
  void apply_cos(const Eigen::MatrixXd& block, Eigen::MatrixXd& out) const;

  /// Runs `steps` steps starting at t_start with midpoint field samples.
  /// `after_step(s, t, block)` is called after each full step when set.
  using Observer = std::function<void(int, double, const Eigen::MatrixXd&)>;
  void run(Eigen::MatrixXd& block, const Field& field, double t_start, int steps,
           const Observer& after_step = {}) const;

 private:
  void scale_rows(Eigen::MatrixXd& block, const Eigen::VectorXd& cos_part,
                  const Eigen::VectorXd& sin_part) const;

  CouplingMatrix coupling_;
  Hamiltonian hamiltonian_;
  double dt_;
  Eigen::MatrixXd v_;
  Eigen::MatrixXd vt_;
  Eigen::VectorXd energies_;  // B j (j+1)
  Eigen::VectorXd half_cos_, half_sin_, full_cos_, full_sin_;
  mutable Eigen::MatrixXd scratch_;
};

/// State <-> block conversion (one column pair).
Eigen::MatrixXd to_block(const Eigen::VectorXcd& amplitudes);
Eigen::VectorXcd column_state(const Eigen::MatrixXd& block, Eigen::Index column);

struct PropagationReport {
  /// Largest population seen in the two highest levels of the basis.
  double max_top_population = 0.0;
  bool truncation_warning() const noexcept { return max_top_population > kTruncationLimit; }
  static constexpr double kTruncationLimit = 1e-4;
};

/// Number of steps of size dt covering t_span; throws InvalidArgument when dt
/// does not divide the span within 1e-9 relative.
int step_count(double t_span, double dt);

/// Evolves `state` under `field` from t_start to t_end with step dt.
/// Throws NonFiniteField when the field evaluates to inf/nan.
RotorState propagate(const RotorState& state, const Field& field, Hamiltonian hamiltonian,
                     double t_start, double t_end, double dt, PropagationReport* report = nullptr,
                     const StrangKernel::Observer& after_step = {});

/// Exact field-free evolution C_j -> C_j exp(-i B j(j+1) tau).
RotorState free_evolve(const RotorState& state, double rotational_constant, double tau);

struct EnsembleOptions {
  int steps_per_period = kDefaultStepsPerPeriod;
  int threads = 1;
};

/// Propagates every channel of an ensemble under one field over
/// [0, field.duration()]. Channels (j0, m0) and (j0, -m0) evolve identically
/// and are propagated once. Kernels are built once and reused, which is what
/// the optimizers rely on.
class EnsemblePropagator {
 public:
  EnsemblePropagator(const ThermalEnsemble& ensemble, EnsembleOptions options = {});

  /// Ensemble with post-pulse channel states.
  ThermalEnsemble propagate(const Field& field, PropagationReport* report = nullptr) const;
  /// Fourier coefficients of the post-pulse orientation signal.
  FourierVector fourier_after(const Field& field, PropagationReport* report = nullptr) const;
  /// Weighted <cos theta> after every `stride` steps during the pulse,
  /// as (t, value) pairs starting with t = 0.
  std::vector<std::pair<double, double>> trace_during(const Field& field, int stride) const;

  const ThermalEnsemble& initial() const noexcept { return ensemble_; }
  double time_step(double duration) const;

 private:
  struct Block {
    int m = 0;
    std::vector<int> j0;           // one column pair per j0
    std::vector<double> weight;    // summed over +-m
    Eigen::MatrixXd initial;
  };
  std::vector<Eigen::MatrixXd> run_blocks(const Field& field, PropagationReport* report) const;

  ThermalEnsemble ensemble_;
  EnsembleOptions options_;
  std::vector<Block> blocks_;
  std::vector<CouplingMatrix> couplings_;
};

ThermalEnsemble propagate_ensemble(const ThermalEnsemble& ensemble, const Field& field,
                                   const EnsembleOptions& options = {},
                                   PropagationReport* report = nullptr);

/// sum_c w_c <cos theta>_c at the given post-pulse times tau (a.u.), each
/// channel free-evolved from the end of the pulse.
std::vector<double> ensemble_orientation(const ThermalEnsemble& ensemble, const Field& field,
                                         std::span<const double> tau,
                                         const EnsembleOptions& options = {});

/// Same for an ensemble whose channel states are already post-pulse.
std::vector<double> post_pulse_orientation(const ThermalEnsemble& post_pulse,
                                           std::span<const double> tau);

/// K_j = sum_c w_c alpha^{m}_{j,j+1} C*_{j+1} C_j over post-pulse channels,
/// truncated or zero-padded to `harmonics` entries (0 keeps j_max).
/// The period of the result is Tr in atomic units.
FourierVector measure_fourier(const ThermalEnsemble& post_pulse, std::size_t harmonics = 0);

}  // namespace rotorshape
