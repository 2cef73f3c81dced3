#pragma once

#include <memory>
#include <mutex>

#include <Eigen/Core>

#include "rotorshape/basis.hpp"

namespace rotorshape {

/// <j+1, m| cos(theta) |j, m>.
double coupling_element(int j, int m);

/// cos(theta) restricted to one m channel: symmetric tridiagonal with zero
/// diagonal. The eigendecomposition is computed on first request and shared
/// between copies.
class CouplingMatrix {
 public:
  explicit CouplingMatrix(BasisSpec basis);

  const BasisSpec& basis() const noexcept { return basis_; }
  /// off_diagonal()[i] couples rows i and i+1 (levels j_min+i, j_min+i+1).
  const Eigen::VectorXd& off_diagonal() const noexcept { return off_; }
  Eigen::MatrixXd dense() const;

  const Eigen::VectorXd& eigenvalues() const;
  /// Orthonormal columns; dense() == V diag(eigenvalues) V^T.
  const Eigen::MatrixXd& eigenvectors() const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

 private:
  struct Eigensystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
  };
  const Eigensystem& eigensystem() const;

  BasisSpec basis_;
  Eigen::VectorXd off_;
  struct Cache {
    std::once_flag once;
    Eigensystem system;
  };
  std::shared_ptr<Cache> cache_;
};

}  // namespace rotorshape
