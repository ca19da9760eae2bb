#include "quditchain/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace quditchain {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kOffTolerance = 1e-13;

double off_norm(const Matrix& a) {
  double off = 0.0;
  const Eigen::Index n = a.rows();
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index p = 0; p < n; ++p)
      if (p != q) off += std::norm(a(p, q));
  return std::sqrt(off);
}

// Runs the sweeps in place on `a` (column-major, full Hermitian storage);
// accumulates rotations into `v` when it is non-null.
void jacobi_sweeps(Matrix& a, Matrix* v) {
  const Eigen::Index n = a.rows();
  const double fro = a.norm();
  if (fro == 0.0 || n < 2) return;
  Complex* A = a.data();
  Complex* V = v ? v->data() : nullptr;
  auto at = [n](Complex* base, Eigen::Index r, Eigen::Index c) -> Complex& {
    return base[r + c * n];
  };

  double previous_off = off_norm(a);
  for (int sweep = 0;; ++sweep) {
    const double off = off_norm(a);
    if (off <= kOffTolerance * fro) return;
    // Stalled at the rounding floor of a large matrix.
    if (sweep > 0 && off > 0.5 * previous_off && off <= 1e-11 * fro) return;
    previous_off = off;
    if (sweep == kMaxSweeps)
      throw NumericQualityError("Jacobi eigensolver did not converge");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = at(A, p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const double app = at(A, p, p).real();
        const double aqq = at(A, q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * g == std::abs(app) &&
            std::abs(aqq) + 100.0 * g == std::abs(aqq)) {
          at(A, p, q) = 0.0;
          at(A, q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * g);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex e = std::conj(apq) / g;  // exp(-i arg a_pq)
        const Complex se = s * e;
        const Complex ce = c * e;

        Complex* colp = A + p * n;
        Complex* colq = A + q * n;
        for (Eigen::Index r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const Complex arp = colp[r];
          const Complex arq = colq[r];
          const Complex np = c * arp - se * arq;
          const Complex nq = s * arp + ce * arq;
          colp[r] = np;
          colq[r] = nq;
          at(A, p, r) = std::conj(np);
          at(A, q, r) = std::conj(nq);
        }
        at(A, p, p) = app - t * g;
        at(A, q, q) = aqq + t * g;
        at(A, p, q) = 0.0;
        at(A, q, p) = 0.0;

        if (V) {
          Complex* vp = V + p * n;
          Complex* vq = V + q * n;
          for (Eigen::Index r = 0; r < n; ++r) {
            const Complex vrp = vp[r];
            const Complex vrq = vq[r];
            vp[r] = c * vrp - se * vrq;
            vq[r] = s * vrp + ce * vrq;
          }
        }
      }
    }
  }
}

Matrix hermitian_part_checked(const Matrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("eigensolver needs a square matrix");
  const double norm = m.norm();
  if ((m - m.adjoint()).norm() > 1e-9 * norm)
    throw InvalidArgument("eigensolver input is not Hermitian");
  return 0.5 * (m + m.adjoint());
}

// Index sets of the connected components of the nonzero pattern; a matrix
// that conserves some quantum number splits into independent blocks.
std::vector<std::vector<Eigen::Index>> diagonal_blocks(const Matrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&parent](Eigen::Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (Eigen::Index q = 0; q < n; ++q)
    for (Eigen::Index p = q + 1; p < n; ++p)
      if (a(p, q) != Complex(0.0)) parent[find(p)] = find(q);
  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

// Diagonalizes block by block; on return `a` is diagonal up to the Jacobi
// tolerance and `v` (when given) holds the accumulated rotations.
void block_jacobi(Matrix& a, Matrix* v) {
  const auto blocks = diagonal_blocks(a);
  if (blocks.size() == 1) {
    jacobi_sweeps(a, v);
    return;
  }
  for (const auto& idx : blocks) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    if (k == 1) continue;
    Matrix sub(k, k);
    for (Eigen::Index c = 0; c < k; ++c)
      for (Eigen::Index r = 0; r < k; ++r) sub(r, c) = a(idx[r], idx[c]);
    Matrix w = Matrix::Identity(k, k);
    jacobi_sweeps(sub, v ? &w : nullptr);
    for (Eigen::Index c = 0; c < k; ++c)
      for (Eigen::Index r = 0; r < k; ++r) a(idx[r], idx[c]) = sub(r, c);
    if (v)
      for (Eigen::Index c = 0; c < k; ++c)
        for (Eigen::Index r = 0; r < k; ++r) (*v)(idx[r], idx[c]) = w(r, c);
  }
}

}  // namespace

EigenDecomposition hermitian_eig(const Matrix& m) {
  Matrix a = hermitian_part_checked(m);
  const Eigen::Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);
  block_jacobi(a, &v);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() < a(y, y).real();
  });
  EigenDecomposition out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = a(order[i], order[i]).real();
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  Matrix a = hermitian_part_checked(m);
  block_jacobi(a, nullptr);
  RealVector values = a.diagonal().real();
  std::sort(values.begin(), values.end());
  return values;
}

Matrix unitary_exp(const Matrix& h, double t) { return Propagator(h).unitary(t); }

Propagator::Propagator(const Matrix& h) : eig_(hermitian_eig(h)) {}

Matrix Propagator::unitary(double t) const {
  const Eigen::Index n = eig_.values.size();
  Eigen::VectorXcd phases(n);
  for (Eigen::Index i = 0; i < n; ++i) phases(i) = std::exp(-kI * eig_.values(i) * t);
  return eig_.vectors * phases.asDiagonal() * eig_.vectors.adjoint();
}

StateVector Propagator::apply(const StateVector& psi, double t) const {
  StateVector coeff = eig_.vectors.adjoint() * psi;
  for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) *= std::exp(-kI * eig_.values(i) * t);
  return eig_.vectors * coeff;
}

Matrix Propagator::conjugate(const Matrix& rho, double t) const {
  const Matrix u = unitary(t);
  return u * rho * u.adjoint();
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument("frobenius_distance: shape mismatch");
  return (a - b).norm();
}

double multiset_deviation(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw InvalidArgument("multiset_deviation: size mismatch");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace quditchain
