#include "rotorshape/spline_field.hpp"

#include <algorithm>
#include <cmath>

#include "rotorshape/error.hpp"

namespace rotorshape {

NaturalCubicSpline::NaturalCubicSpline(double span, std::vector<double> values)
    : span_(span), y_(std::move(values)) {
  const std::size_t n = y_.size();
  if (n < 3) throw InvalidArgument("spline needs at least 3 knots");
  if (!(span_ > 0.0)) throw InvalidArgument("spline span must be > 0");
  h_ = span_ / static_cast<double>(n - 1);
  m_.assign(n, 0.0);

  // Interior equations M_{i-1} + 4 M_i + M_{i+1} = 6 (y_{i-1} - 2 y_i + y_{i+1}) / h^2,
  // solved with the Thomas algorithm; M_0 = M_{n-1} = 0.
  const std::size_t k = n - 2;
  std::vector<double> c(k), d(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double rhs = 6.0 * (y_[i] - 2.0 * y_[i + 1] + y_[i + 2]) / (h_ * h_);
    const double denom = 4.0 - (i > 0 ? c[i - 1] : 0.0);
    c[i] = 1.0 / denom;
    d[i] = (rhs - (i > 0 ? d[i - 1] : 0.0)) / denom;
  }
  for (std::size_t i = k; i-- > 0;) {
    m_[i + 1] = d[i] - (i + 1 < k ? c[i] * m_[i + 2] : 0.0);
  }
}

double NaturalCubicSpline::operator()(double t) const {
  const std::size_t n = y_.size();
  const double u = std::clamp(t, 0.0, span_) / h_;
  const auto i = std::min(static_cast<std::size_t>(u), n - 2);
  const double a = static_cast<double>(i + 1) - u;  // weight of knot i
  const double b = 1.0 - a;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h_ * h_) / 6.0;
}

double NaturalCubicSpline::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < y_.size(); ++i) {
    s += 0.5 * h_ * (y_[i] + y_[i + 1]) - h_ * h_ * h_ * (m_[i] + m_[i + 1]) / 24.0;
  }
  return s;
}

SplineField::SplineField(double duration, std::vector<double> knot_values)
    : spline_(duration, [&] {
        if (knot_values.size() < 3) throw InvalidArgument("spline field needs >= 3 knots");
        if (knot_values.front() != 0.0 || knot_values.back() != 0.0) {
          throw InvalidArgument("spline field endpoints must be zero");
        }
        for (double v : knot_values) {
          if (!std::isfinite(v)) throw InvalidArgument("non-finite knot value");
        }
        return std::move(knot_values);
      }()) {}

SplineField SplineField::from_interior(double duration, const std::vector<double>& interior) {
  std::vector<double> knots;
  knots.reserve(interior.size() + 2);
  knots.push_back(0.0);
  knots.insert(knots.end(), interior.begin(), interior.end());
  knots.push_back(0.0);
  return SplineField(duration, std::move(knots));
}

double SplineField::operator()(double t) const {
  if (t < 0.0 || t > spline_.span()) return 0.0;
  return spline_(t);
}

}  // namespace rotorshape
