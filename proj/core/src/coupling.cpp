#include "rotorshape/coupling.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "rotorshape/rotor_state.hpp"
#include "rotorshape/error.hpp"

namespace rotorshape {

double coupling_element(int j, int m) {
  const double jj = j;
  const double mm = m;
  return std::sqrt((jj + 1.0 - mm) * (jj + 1.0 + mm)) /
         std::sqrt((2.0 * jj + 1.0) * (2.0 * jj + 3.0));
}

CouplingMatrix::CouplingMatrix(BasisSpec basis)
    : basis_(basis), cache_(std::make_shared<Cache>()) {
  const auto n = static_cast<Eigen::Index>(basis_.dim());
  off_.resize(n > 0 ? n - 1 : 0);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    off_[i] = coupling_element(basis_.j_min() + static_cast<int>(i), basis_.m());
  }
}

Eigen::MatrixXd CouplingMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(basis_.dim());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    c(i, i + 1) = off_[i];
    c(i + 1, i) = off_[i];
  }
  return c;
}

const CouplingMatrix::Eigensystem& CouplingMatrix::eigensystem() const {
  std::call_once(cache_->once, [this] {
    // Solved in extended precision so that the rounded eigenvectors are
    // orthonormal to ~1 ulp; long propagations depend on it.
    using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const auto n = static_cast<Eigen::Index>(basis_.dim());
    VectorL diag = VectorL::Zero(n);
    VectorL sub = off_.cast<long double>();
    if (n == 1) {
      cache_->system.values = Eigen::VectorXd::Zero(1);
      cache_->system.vectors = Eigen::MatrixXd::Identity(1, 1);
      return;
    }
    Eigen::SelfAdjointEigenSolver<MatrixL> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigendecomposition of the coupling matrix failed");
    }
    cache_->system.values = solver.eigenvalues().cast<double>();
    cache_->system.vectors = solver.eigenvectors().cast<double>();
  });
  return cache_->system;
}

const Eigen::VectorXd& CouplingMatrix::eigenvalues() const { return eigensystem().values; }
const Eigen::MatrixXd& CouplingMatrix::eigenvectors() const { return eigensystem().vectors; }

Eigen::VectorXcd CouplingMatrix::apply(const Eigen::VectorXcd& v) const {
  const auto n = v.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    out[i] += off_[i] * v[i + 1];
    out[i + 1] += off_[i] * v[i];
  }
  return out;
}

}  // namespace rotorshape
