#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rotorshape/field.hpp"

namespace rotorshape {

/// E(t) = Em (E1 sin(2 pi f1 t + phi1) + E2 sin(...) + E3 sin(...) + E0) W(t)
/// with W(t) = 1 - exp(-t/sigma1) on (0, Tr/2] and 1 - exp(-(Tr-t)/sigma2) on
/// (Tr/2, Tr). Frequencies are in units of f_r = 1/Tr, phases in units of pi,
/// rise/fall times in units of Tr.
struct AnalyticFieldModel {
  double em = 0.0;  // a.u.
  double e0 = 0.0;
  std::array<double, 3> amplitude{};  // E1..E3
  std::array<double, 3> frequency{};  // f/f_r
  std::array<double, 3> phase{};      // phi/pi
  double sigma1 = 0.05;               // /Tr
  double sigma2 = 0.05;               // /Tr
  std::string note;

  static constexpr std::size_t kParameterCount = 13;
  /// (em, e0, E1..3, f1..3, phi1..3, sigma1, sigma2)
  std::array<double, kParameterCount> parameters() const;
  void set_parameters(const std::array<double, kParameterCount>& p);

  /// Fitted presets "a" (sawtooth, 30 K) and "b" (rectangular, 30 K).
  static AnalyticFieldModel preset(std::string_view name);
  static std::vector<std::string> preset_names();

  /// Value at s = t/Tr in [0, 1]; zero outside [0, 1].
  double value(double s) const;
  /// Periodic extension: the window is re-applied on every period.
  double periodic_value(double s) const;
  double window(double s) const;

  bool operator==(const AnalyticFieldModel&) const = default;
};

std::string to_key_value(const AnalyticFieldModel& model);
/// Parses the format written by to_key_value; unknown keys are rejected.
AnalyticFieldModel parse_key_value(std::string_view text);

/// Adapter evaluating a model over [0, Tr] in atomic time.
class ModelField final : public Field {
 public:
  ModelField(AnalyticFieldModel model, double period) : model_(std::move(model)), period_(period) {}
  double operator()(double t) const override { return model_.value(t / period_); }
  double duration() const override { return period_; }
  const AnalyticFieldModel& model() const noexcept { return model_; }

 private:
  AnalyticFieldModel model_;
  double period_;
};

}  // namespace rotorshape
