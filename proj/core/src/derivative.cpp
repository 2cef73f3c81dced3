#include "rotorshape/derivative.hpp"

#include <algorithm>
#include <cmath>

#include "rotorshape/error.hpp"

namespace rotorshape {

std::vector<double> orientation_derivative(std::span<const double> values, double dt, bool periodic) {
  const std::size_t n = values.size();
  if (n < 3) throw InvalidArgument("derivative needs at least 3 samples");
  if (!(dt > 0.0)) throw InvalidArgument("sample spacing must be > 0");
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (values[i + 1] - values[i - 1]) / (2.0 * dt);
  if (periodic) {
    d[0] = (values[1] - values[n - 1]) / (2.0 * dt);
    d[n - 1] = (values[0] - values[n - 2]) / (2.0 * dt);
  } else {
    d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * dt);
    d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * dt);
  }
  return d;
}

double CombReport::mean_fwhm() const {
  if (peaks.empty()) return 0.0;
  double s = 0.0;
  for (const auto& p : peaks) s += p.fwhm;
  return s / static_cast<double>(peaks.size());
}

double CombReport::mean_spacing() const {
  if (peaks.size() < 2) return 0.0;
  return (peaks.back().time - peaks.front().time) / static_cast<double>(peaks.size() - 1);
}

CombReport find_comb_peaks(std::span<const double> derivative, double dt, bool periodic) {
  const auto n = static_cast<long>(derivative.size());
  if (n < 3) throw InvalidArgument("derivative needs at least 3 samples");
  CombReport report;
  const auto extreme = std::max_element(derivative.begin(), derivative.end(),
                                        [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*extreme == 0.0) return report;
  report.sign = *extreme > 0.0 ? 1 : -1;

  std::vector<double> y(derivative.begin(), derivative.end());
  for (double& v : y) v *= report.sign;
  std::vector<double> sorted = y;
  std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
  report.baseline = sorted[static_cast<std::size_t>(n / 2)];
  const double top = std::abs(*extreme);
  const double global_level = report.baseline + 0.5 * (top - report.baseline);

  auto at = [&](long i) -> double {
    if (periodic) return y[static_cast<std::size_t>(((i % n) + n) % n)];
    return y[static_cast<std::size_t>(i)];
  };
  auto inside = [&](long i) { return periodic || (i >= 0 && i < n); };

  // Start scanning at a sample below the level so periodic regions are whole.
  long start = 0;
  if (periodic) {
    while (start < n && y[static_cast<std::size_t>(start)] >= global_level) ++start;
    if (start == n) return report;
  }
  long i = start;
  const long end = start + n;
  while (i < end) {
    if (!inside(i) || at(i) < global_level) {
      ++i;
      continue;
    }
    long j = i;
    long arg = i;
    while (j < end && inside(j) && at(j) >= global_level) {
      if (at(j) > at(arg)) arg = j;
      ++j;
    }
    i = j;
    const double height = at(arg);
    const double level = report.baseline + 0.5 * (height - report.baseline);
    long l = arg;
    while (inside(l - 1) && at(l - 1) >= level && arg - l < n) --l;
    long r = arg;
    while (inside(r + 1) && at(r + 1) >= level && r - arg < n) ++r;
    if (!inside(l - 1) || !inside(r + 1)) continue;
    const double left = (l - 1) + (level - at(l - 1)) / (at(l) - at(l - 1));
    const double right = r + (at(r) - level) / (at(r) - at(r + 1));

    double offset = 0.0;  // parabolic refinement of the apex
    if (inside(arg - 1) && inside(arg + 1)) {
      const double a = at(arg - 1), b = at(arg), c = at(arg + 1);
      const double denom = a - 2.0 * b + c;
      if (denom != 0.0) offset = 0.5 * (a - c) / denom;
    }
    double t = (static_cast<double>(arg) + offset) * dt;
    if (periodic) t = std::fmod(t, static_cast<double>(n) * dt);
    report.peaks.push_back({t, report.sign * height, (right - left) * dt});
  }
  std::sort(report.peaks.begin(), report.peaks.end(),
            [](const Peak& a, const Peak& b) { return a.time < b.time; });
  return report;
}

}  // namespace rotorshape
