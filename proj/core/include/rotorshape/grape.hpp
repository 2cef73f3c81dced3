#pragma once

#include <cstdint>
#include <vector>

#include "rotorshape/field.hpp"
#include "rotorshape/molecule.hpp"
#include "rotorshape/propagator.hpp"
#include "rotorshape/rotor_state.hpp"

namespace rotorshape {

struct Fidelity {
  double real_part = 0.0;        // F0 = Re <psi|psi_T>
  double overlap_squared = 0.0;  // |<psi|psi_T>|^2
};

/// Throws InvalidArgument when the two states live in different bases.
Fidelity fidelity(const RotorState& final_state, const RotorState& target);

enum class AscentMethod { kLbfgs, kGradient };

struct GrapeConfig {
  int slices = 512;
  int substeps = 40;  // Strang steps per slice; 512 * 40 ~ Tr / 20000
  int max_iterations = 1000;
  /// Stop once ||dF0/du||_inf * amplitude_bound falls below this.
  double gradient_tolerance = 1e-10;
  /// Relative F0 improvement counted as stagnation...
  double stagnation_tolerance = 1e-9;
  /// ...for this many consecutive iterations.
  int stagnation_window = 20;
  double amplitude_bound = 2e-3;  // a.u.
  double ramp_fraction = 0.05;
  double initial_scale = 1e-5;    // a.u., uniform in +-scale
  std::uint64_t seed = 1;
  /// Stop once |<psi(t0)|psi_T>|^2 reaches this value.
  double target_overlap = 0.999;
  AscentMethod method = AscentMethod::kLbfgs;
  int lbfgs_memory = 12;

  void validate() const;
};

/// Control problem: steer psi0 to psi_target within [0, duration] using a
/// sin^2-ramped piecewise-constant field.
class GrapeProblem {
 public:
  GrapeProblem(Hamiltonian hamiltonian, RotorState initial, RotorState target, double duration,
               int slices, int substeps, double ramp_fraction);

  struct Evaluation {
    Fidelity fidelity;
    std::vector<double> gradient;  // dF0/du_k
    RotorState final_state;
  };

  /// Forward propagation (and, if requested, one backward costate sweep).
  Evaluation evaluate(const std::vector<double>& amplitudes, bool with_gradient) const;

  PiecewiseConstantField field(std::vector<double> amplitudes) const;
  const RotorState& initial() const noexcept { return initial_; }
  const RotorState& target() const noexcept { return target_; }
  double duration() const noexcept { return duration_; }
  int slices() const noexcept { return slices_; }
  int substeps() const noexcept { return substeps_; }

 private:
  Hamiltonian hamiltonian_;
  RotorState initial_;
  RotorState target_;
  double duration_;
  int slices_;
  int substeps_;
  double ramp_fraction_;
  CouplingMatrix coupling_;
};

/// dF0/du_k of `field` (in GRAPE parameterization) for psi0 -> psi_target.
std::vector<double> gradient(const PiecewiseConstantField& field, const RotorState& psi0,
                             const RotorState& psi_target, Hamiltonian hamiltonian,
                             int substeps = 40);

struct GrapeIteration {
  int iteration = 0;
  double real_part = 0.0;
  double overlap_squared = 0.0;
  double step = 0.0;
  int evaluations = 0;
};

struct GrapeResult {
  PiecewiseConstantField field;
  std::vector<GrapeIteration> history;
  RotorState final_state;
  Fidelity fidelity;
  bool converged = false;
  bool stagnated = false;
  PropagationReport report;
};

/// Monotone ascent on F0: every accepted step strictly improves it.
GrapeResult optimize(const RotorState& psi0, const RotorState& psi_target, Hamiltonian hamiltonian,
                     double duration, const GrapeConfig& config);

struct PaddedGrapeResult {
  GrapeResult result;
  int padding = 0;  // extra levels above the target's j_max
};

/// Steers |0,0> to `target` (an m = 0 state), propagating in the target basis
/// enlarged by `padding` levels. While the truncation guard fires the padding
/// grows by `padding_step` (up to `max_padding`) and the run is repeated.
PaddedGrapeResult optimize_to_target(const RotorState& target, Hamiltonian hamiltonian,
                                     double duration, const GrapeConfig& config,
                                     int padding = 6, int padding_step = 3, int max_padding = 24);

}  // namespace rotorshape
