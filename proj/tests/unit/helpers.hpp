#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "quditchain/basis.hpp"
#include "quditchain/linalg.hpp"

namespace testing {

using quditchain::Complex;
using quditchain::DensityMatrix;
using quditchain::Matrix;
using quditchain::StateVector;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240517);
  return gen;
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Matrix random_matrix(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(uniform(), uniform());
  return m;
}

inline Matrix random_hermitian(int n) {
  const Matrix a = random_matrix(n);
  return 0.5 * (a + a.adjoint());
}

inline Matrix random_unitary(int n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

inline StateVector random_vector(int n) {
  StateVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(uniform(), uniform());
  return v / v.norm();
}

/// A A^H / Tr, full rank with probability one.
inline DensityMatrix random_density(const std::vector<int>& dims) {
  const int n = static_cast<int>(quditchain::total_dim(dims));
  const Matrix a = random_matrix(n);
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(rho, dims);
}

inline DensityMatrix random_pure(const std::vector<int>& dims) {
  return DensityMatrix::from_pure(random_vector(static_cast<int>(quditchain::total_dim(dims))),
                                  dims);
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
