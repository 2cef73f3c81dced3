#pragma once

#include "rotorshape/rotor_state.hpp"
#include "rotorshape/waveform.hpp"

namespace rotorshape {

/// What to do with a target that no normalized state can realize.
enum class FeasibilityPolicy {
  kError,    // throw InfeasibleAmplitude
  kRescale,  // shrink K to the feasibility boundary (double root)
};

struct SynthesisOptions {
  /// |K_j| below this fraction of max |K| counts as zero.
  double zero_threshold = 1e-9;
  FeasibilityPolicy policy = FeasibilityPolicy::kError;
};

struct SynthesisResult {
  RotorState state;
  /// Factor applied to K (1 unless the target was rescaled).
  double applied_scale = 1.0;
};

/// Largest factor s such that s*K is realizable; >= 1 means K itself is.
double max_feasible_scale(const FourierVector& k);

/// m = 0 wave packet with alpha_{j,j+1} |C_j||C_{j+1}| = |K_j| and
/// phi_j - phi_{j+1} = arg K_j, phi_0 = 0, j_max = K.size(). Of the two
/// normalization roots for |C_0|^2 the larger is taken.
SynthesisResult synthesize(const FourierVector& k, const SynthesisOptions& options = {});
RotorState synthesize_state(const FourierVector& k, const SynthesisOptions& options = {});

/// K_j = alpha^m_{j,j+1} C*_{j+1} C_j for j = 0 ... j_max-1; zero below |m|.
FourierVector state_to_fourier(const RotorState& state);

}  // namespace rotorshape
