#pragma once

#include <cstdint>
#include <vector>

#include "rotorshape/field_model.hpp"

namespace rotorshape {

struct FitOptions {
  int starts = 16;          // the initial guess plus starts-1 perturbations
  std::uint64_t seed = 1;
  int max_evaluations = 4000;  // per start
  /// Em sets the normalization of E0..E3 and is held at the initial value
  /// unless this is set (the product Em*Ei is what the data determine).
  bool fit_em = false;
  int threads = 1;
};

struct FitResult {
  AnalyticFieldModel model;
  double residual = 0.0;          // RMS(model - samples), a.u.
  double initial_residual = 0.0;  // of the unperturbed initial guess
  bool improved = false;          // residual < initial_residual
  /// The fitted field is (numerically) identically zero.
  bool degenerate = false;
  std::vector<double> start_residuals;
};

/// Root-mean-square deviation of the model from samples at s_i = t_i/Tr.
double model_residual(const AnalyticFieldModel& model, const std::vector<double>& s,
                      const std::vector<double>& values);

/// Damped (Levenberg-Marquardt) least squares from several starts.
/// Requires at least 13 samples.
FitResult fit_model(const std::vector<double>& s, const std::vector<double>& values,
                    const AnalyticFieldModel& initial_guess, const FitOptions& options = {});

}  // namespace rotorshape
