#pragma once

#include <vector>

#include "quditchain/types.hpp"

namespace quditchain {

/// Eigenvalues ascending; eigenvectors are the columns of a unitary matrix.
struct EigenDecomposition {
  RealVector values;
  Matrix vectors;
};

/// Cyclic complex Jacobi rotations until off(M) <= 1e-13 ||M||_F, run
/// separately on each block of the nonzero pattern.
/// Throws InvalidArgument when ||M - M^H|| > 1e-9 ||M||.
EigenDecomposition hermitian_eig(const Matrix& m);

/// Same iteration without accumulating eigenvectors.
RealVector hermitian_eigenvalues(const Matrix& m);

/// U = exp(-i H t).
Matrix unitary_exp(const Matrix& h, double t);

/// Caches one eigendecomposition of a constant Hamiltonian so that
/// exp(-i H t) can be applied at many times.
class Propagator {
 public:
  explicit Propagator(const Matrix& h);

  Matrix unitary(double t) const;
  StateVector apply(const StateVector& psi, double t) const;
  /// U rho U^H.
  Matrix conjugate(const Matrix& rho, double t) const;
  const EigenDecomposition& eig() const noexcept { return eig_; }

 private:
  EigenDecomposition eig_;
};

/// sqrt(Tr((A-B)^H (A-B))).
double frobenius_distance(const Matrix& a, const Matrix& b);

/// Largest pairwise deviation after sorting both multisets; sizes must agree.
double multiset_deviation(std::vector<double> a, std::vector<double> b);

}  // namespace quditchain
