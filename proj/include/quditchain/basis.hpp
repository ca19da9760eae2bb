#pragma once

#include <array>
#include <vector>

#include "quditchain/types.hpp"

namespace quditchain {

/// Spin matrices S1, S2, S3 in the |s>, |s-1>, ..., |-s> basis.
std::array<Matrix, 3> spin_matrices(SpinQuantum s);

Matrix identity(int dim);

/// Standard Kronecker product; dimensions multiply.
Matrix kron(const Matrix& a, const Matrix& b);

/// Complete trace-orthogonal Hermitian operator basis of one qudit.
///
/// Element 0 is proportional to the identity and elements 1..3 coincide with
/// S1, S2, S3. All elements share the norm Tr(C_a^2) = norm_const, which is
/// chosen as Tr(S1^2) of the spin.
class OperatorBasis {
 public:
  OperatorBasis(SpinQuantum spin, std::vector<Matrix> elements, double norm_const);

  SpinQuantum spin() const noexcept { return spin_; }
  int dim() const noexcept { return spin_.dim(); }
  std::size_t size() const noexcept { return elements_.size(); }
  double norm_const() const noexcept { return norm_const_; }
  const Matrix& operator[](std::size_t a) const { return elements_.at(a); }
  const std::vector<Matrix>& elements() const noexcept { return elements_; }

 private:
  SpinQuantum spin_;
  std::vector<Matrix> elements_;
  double norm_const_;
};

OperatorBasis hermitian_basis(SpinQuantum s);

/// Real structure constants e_ijl of the traceless part of a basis,
/// [C_i, C_j] = i e_ijl C_l. Indices run over 1 .. d^2-1 as in the basis.
class StructureConstants {
 public:
  explicit StructureConstants(int dim);

  int dim() const noexcept { return dim_; }
  /// Number of traceless generators, d^2 - 1.
  int generators() const noexcept { return n_; }

  double operator()(int i, int j, int l) const { return data_[index(i, j, l)]; }
  double& operator()(int i, int j, int l) { return data_[index(i, j, l)]; }

 private:
  std::size_t index(int i, int j, int l) const;

  int dim_;
  int n_;
  std::vector<double> data_;
};

/// e_ijl = Tr([C_i, C_j] C_l) / (i c). Throws NumericQualityError when an
/// imaginary part exceeds 1e-10 (basis not closed under commutation).
StructureConstants structure_constants(const OperatorBasis& b);

/// i * sum_l e_ijl C_l, the commutator rebuilt from the tensor.
Matrix commutator_from_constants(const StructureConstants& e, const OperatorBasis& b, int i,
                                 int j);

/// Hermitian, unit-trace operator over a product of sites.
class DensityMatrix {
 public:
  /// Checks shape, Hermiticity (1e-12) and trace (1e-12). Positivity is
  /// checked separately by validate() because it needs an eigensolve.
  DensityMatrix(Matrix data, std::vector<int> site_dims);

  static DensityMatrix from_pure(const StateVector& psi, std::vector<int> site_dims);
  /// Builds without the Hermiticity/trace check; used for intermediate
  /// integrator states that are projected afterwards.
  static DensityMatrix unchecked(Matrix data, std::vector<int> site_dims);

  const Matrix& data() const noexcept { return data_; }
  const std::vector<int>& site_dims() const noexcept { return site_dims_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  std::size_t sites() const noexcept { return site_dims_.size(); }

  double purity() const;
  /// Full invariant check including the smallest eigenvalue >= -1e-9.
  void validate() const;

 private:
  struct NoCheck {};
  DensityMatrix(Matrix data, std::vector<int> site_dims, NoCheck);

  Matrix data_;
  std::vector<int> site_dims_;
};

/// Single-site reduced density matrix with all other sites traced out.
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep);
/// Same reduction computed directly from a pure state vector.
DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& site_dims,
                            std::size_t keep);

/// Transposes the indices of one site of a two-site operator.
Matrix partial_transpose(const DensityMatrix& rho, std::size_t site);
Matrix partial_transpose(const Matrix& m, const std::vector<int>& site_dims, std::size_t site);

/// Permutes two sites of an operator (SWAP conjugation).
Matrix swap_sites(const Matrix& m, const std::vector<int>& site_dims, std::size_t a,
                  std::size_t b);

/// Real expansion coefficients over the product basis C_a1 (x) ... (x) C_aN,
/// flattened row-major (first site most significant), with r[0] = 1.
struct BlochState {
  std::vector<int> site_dims;
  RealVector r;
};

BlochState bloch_from_rho(const DensityMatrix& rho, const OperatorBasis& b);
DensityMatrix rho_from_bloch(const BlochState& r, const OperatorBasis& b);

/// Tr(M (C_a1 (x) ... (x) C_aN)) for every composite index; the raw overlaps
/// behind bloch_from_rho. Exposed for Hamiltonian component extraction.
std::vector<Complex> product_basis_overlaps(const Matrix& m, const OperatorBasis& b,
                                            std::size_t sites);

}  // namespace quditchain
