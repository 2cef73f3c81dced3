#include "rotorshape/observables.hpp"

#include "rotorshape/coupling.hpp"
#include "rotorshape/error.hpp"

namespace rotorshape {

double expectation_cos(const RotorState& state) {
  const auto& c = state.amplitudes();
  const int j_min = state.basis().j_min();
  double sum = 0.0;
  for (Eigen::Index i = 0; i + 1 < c.size(); ++i) {
    const double alpha = coupling_element(j_min + static_cast<int>(i), state.basis().m());
    sum += alpha * (std::conj(c[i + 1]) * c[i]).real();
  }
  return 2.0 * sum;
}

double expectation_cos_power(const RotorState& state, int p) {
  if (p != 1 && p != 3 && p != 5) throw InvalidArgument("cos power must be 1, 3 or 5");
  const CouplingMatrix coupling(state.basis());
  Eigen::VectorXcd v = state.amplitudes();
  for (int k = 0; k < p; ++k) v = coupling.apply(v);
  return state.amplitudes().dot(v).real();
}

}  // namespace rotorshape
