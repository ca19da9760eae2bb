#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "quditchain/basis.hpp"
#include "quditchain/linalg.hpp"

using namespace quditchain;
using namespace testing;

namespace {

void check_decomposition(const Matrix& m) {
  const EigenDecomposition e = hermitian_eig(m);
  const double scale = std::max(1.0, m.norm());
  const Matrix& v = e.vectors;
  CHECK((m * v - v * e.values.cast<Complex>().asDiagonal()).norm() <= 1e-10 * scale);
  CHECK((v.adjoint() * v - identity(static_cast<int>(m.rows()))).norm() <= 1e-11);
  CHECK((v * e.values.cast<Complex>().asDiagonal() * v.adjoint() - m).norm() <= 1e-10 * scale);
  for (Eigen::Index i = 1; i < e.values.size(); ++i) CHECK(e.values(i - 1) <= e.values(i));
  // Independent oracle.
  const Eigen::SelfAdjointEigenSolver<Matrix> oracle(m);
  CHECK((e.values - oracle.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-11 * scale);
  CHECK((hermitian_eigenvalues(m) - oracle.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-11 * scale);
}

}  // namespace

TEST_CASE("Jacobi eigensolver on a diagonal matrix") {
  Matrix m = Matrix::Zero(3, 3);
  m.diagonal() << 3.0, 1.0, 2.0;
  const EigenDecomposition e = hermitian_eig(m);
  CHECK(e.values(0) == 1.0);
  CHECK(e.values(1) == 2.0);
  CHECK(e.values(2) == 3.0);
}

TEST_CASE("Jacobi eigensolver on random Hermitian matrices") {
  for (int n : {3, 4, 5, 9, 16, 25, 81}) {
    const int reps = n >= 25 ? 3 : 30;
    for (int rep = 0; rep < reps; ++rep) check_decomposition(random_hermitian(n));
  }
}

TEST_CASE("Jacobi eigensolver on degenerate and block-structured matrices") {
  SUBCASE("degenerate spectrum") {
    const Matrix u = random_unitary(9);
    RealVector d(9);
    d << -2, -1, -1, -1, 1, 1, 1, 1, 1;
    check_decomposition(u * d.cast<Complex>().asDiagonal() * u.adjoint());
  }
  SUBCASE("permuted blocks") {
    // Three interleaved blocks; splitting must find them regardless of order.
    Matrix m = Matrix::Zero(12, 12);
    for (int block = 0; block < 3; ++block) {
      const Matrix h = random_hermitian(4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(block + 3 * i, block + 3 * j) = h(i, j);
    }
    check_decomposition(m);
  }
  SUBCASE("isolated zeros and a 1x1 block") {
    Matrix m = random_hermitian(6);
    m.row(2).setZero();
    m.col(2).setZero();
    m(2, 2) = 0.7;
    check_decomposition(m);
  }
  SUBCASE("zero matrix") {
    const EigenDecomposition e = hermitian_eig(Matrix::Zero(4, 4));
    CHECK(e.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(max_abs(e.vectors - identity(4)) == 0.0);
  }
}

TEST_CASE("Jacobi eigensolver rejects non-Hermitian input") {
  Matrix m = random_hermitian(4);
  m(0, 1) += 0.5;
  CHECK_THROWS_AS(hermitian_eig(m), InvalidArgument);
  CHECK_THROWS_AS(hermitian_eig(random_matrix(3).leftCols(2)), InvalidArgument);
}

TEST_CASE("unitary_exp") {
  CHECK(max_abs(unitary_exp(random_hermitian(5), 0.0) - identity(5)) < 1e-14);
  const auto s = spin_matrices(SpinQuantum(2));
  Matrix expected = Matrix::Zero(3, 3);
  expected.diagonal() << -1.0, 1.0, -1.0;
  CHECK(max_abs(unitary_exp(s[2], std::numbers::pi) - expected) < 1e-14);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix h = random_hermitian(9);
    const Matrix u = unitary_exp(h, 0.3);
    CHECK((u.adjoint() * u - identity(9)).norm() <= 1e-10);
    CHECK((u * unitary_exp(h, 0.7) - unitary_exp(h, 1.0)).norm() <= 1e-10);
    const DensityMatrix rho = random_density({9});
    const Matrix conj = u * rho.data() * u.adjoint();
    const RealVector a = hermitian_eigenvalues(conj);
    const RealVector b = hermitian_eigenvalues(rho.data());
    CHECK(multiset_deviation({a.begin(), a.end()}, {b.begin(), b.end()}) < 1e-10);
  }
}

TEST_CASE("Propagator matches unitary_exp") {
  const Matrix h = random_hermitian(16);
  const Propagator p(h);
  const StateVector psi = random_vector(16);
  const DensityMatrix rho = random_density({16});
  for (double t : {0.0, 0.5, 3.7}) {
    const Matrix u = unitary_exp(h, t);
    CHECK(max_abs(p.unitary(t) - u) < 1e-12);
    CHECK((p.apply(psi, t) - u * psi).norm() < 1e-12);
    CHECK(max_abs(p.conjugate(rho.data(), t) - u * rho.data() * u.adjoint()) < 1e-12);
  }
}

TEST_CASE("frobenius_distance") {
  const Matrix a = random_matrix(4);
  CHECK(frobenius_distance(a, a) == 0.0);
  Matrix pure = Matrix::Zero(3, 3);
  pure(0, 0) = 1.0;
  CHECK(std::abs(frobenius_distance(identity(3) / 3.0, pure) - std::sqrt(2.0 / 3.0)) < 1e-15);
  CHECK_THROWS_AS(frobenius_distance(identity(3), identity(4)), InvalidArgument);
}

TEST_CASE("multiset_deviation pairs after sorting") {
  CHECK(multiset_deviation({1.0, 2.0, 2.0}, {2.0, 1.0, 2.0}) == 0.0);
  CHECK(multiset_deviation({0.0, 1.0}, {1.5, 0.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(multiset_deviation({1.0}, {1.0, 2.0}), InvalidArgument);
}
