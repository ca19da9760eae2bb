#include "quditchain/basis.hpp"

#include <cmath>
#include <string>

#include "quditchain/linalg.hpp"

namespace quditchain {

namespace {

double hermitian_inner(const Matrix& a, const Matrix& b) {
  // Tr(AB) is real for Hermitian A, B.
  return (a.cwiseProduct(b.transpose())).sum().real();
}

double max_anti_hermitian(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void check_same_dims(const std::vector<int>& site_dims, std::size_t rows) {
  if (site_dims.empty()) throw InvalidArgument("density matrix needs at least one site");
  for (int d : site_dims)
    if (d < 2) throw InvalidArgument("site dimension must be >= 2");
  if (total_dim(site_dims) != rows)
    throw InvalidArgument("site dimensions do not multiply to the matrix size");
}

// Row-major composite index decomposition helpers.
struct SiteSplit {
  std::size_t left;   // product of dims before the site
  std::size_t local;  // dim of the site
  std::size_t right;  // product of dims after the site
};

SiteSplit split_at(const std::vector<int>& site_dims, std::size_t site) {
  SiteSplit s{1, static_cast<std::size_t>(site_dims[site]), 1};
  for (std::size_t i = 0; i < site; ++i) s.left *= site_dims[i];
  for (std::size_t i = site + 1; i < site_dims.size(); ++i) s.right *= site_dims[i];
  return s;
}

}  // namespace

std::array<Matrix, 3> spin_matrices(SpinQuantum spin) {
  const int d = spin.dim();
  const double s = spin.s();
  Matrix raise = Matrix::Zero(d, d);
  for (int i = 1; i < d; ++i) {
    const double m = spin.m(i);
    raise(i - 1, i) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  Matrix s3 = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) s3(i, i) = spin.m(i);
  Matrix s1 = 0.5 * (raise + raise.adjoint());
  Matrix s2 = (raise - raise.adjoint()) / (2.0 * kI);
  return {s1, s2, s3};
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

OperatorBasis::OperatorBasis(SpinQuantum spin, std::vector<Matrix> elements, double norm_const)
    : spin_(spin), elements_(std::move(elements)), norm_const_(norm_const) {
  const auto d = static_cast<std::size_t>(spin_.dim());
  if (elements_.size() != d * d)
    throw InvalidArgument("operator basis needs d^2 elements");
  if (!(norm_const_ > 0.0)) throw InvalidArgument("basis norm must be positive");
}

OperatorBasis hermitian_basis(SpinQuantum spin) {
  const int d = spin.dim();
  const double s = spin.s();
  const auto [s1, s2, s3] = spin_matrices(spin);
  const Matrix e = identity(d);
  const double c = hermitian_inner(s1, s1);

  // Seeds in order of physical meaning: identity, dipole, quadrupole, then
  // matrix units to complete the space for d > 3.
  std::vector<Matrix> seeds{e, s1, s2, s3};
  seeds.push_back(3.0 * s3 * s3 - s * (s + 1.0) * e);
  seeds.push_back(s1 * s1 - s2 * s2);
  seeds.push_back(s1 * s3 + s3 * s1);
  seeds.push_back(s2 * s3 + s3 * s2);
  seeds.push_back(s1 * s2 + s2 * s1);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix u = Matrix::Zero(d, d);
      if (i == j) {
        u(i, i) = 1.0;
      } else if (i < j) {
        u(i, j) = 1.0;
        u(j, i) = 1.0;
      } else {
        u(i, j) = kI;
        u(j, i) = -kI;
      }
      seeds.push_back(u);
    }
  }

  std::vector<Matrix> elements;
  for (Matrix m : seeds) {
    // Modified Gram-Schmidt, twice for numerical orthogonality.
    for (int pass = 0; pass < 2; ++pass)
      for (const Matrix& q : elements) m -= (hermitian_inner(q, m) / hermitian_inner(q, q)) * q;
    const double n2 = hermitian_inner(m, m);
    if (n2 > 1e-10 * c) elements.push_back(m * std::sqrt(c / n2));
    if (elements.size() == static_cast<std::size_t>(d * d)) break;
  }
  // S_i already carry norm c; restore them exactly against rounding.
  elements[1] = s1;
  elements[2] = s2;
  elements[3] = s3;
  return OperatorBasis(spin, std::move(elements), c);
}

StructureConstants::StructureConstants(int dim)
    : dim_(dim), n_(dim * dim - 1), data_(static_cast<std::size_t>(n_) * n_ * n_, 0.0) {}

std::size_t StructureConstants::index(int i, int j, int l) const {
  if (i < 1 || j < 1 || l < 1 || i > n_ || j > n_ || l > n_)
    throw InvalidArgument("structure constant index out of range");
  return (static_cast<std::size_t>(i - 1) * n_ + (j - 1)) * n_ + (l - 1);
}

StructureConstants structure_constants(const OperatorBasis& b) {
  StructureConstants e(b.dim());
  const int n = e.generators();
  const double c = b.norm_const();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const Matrix comm = b[i] * b[j] - b[j] * b[i];
      for (int l = 1; l <= n; ++l) {
        const Complex v = (comm.cwiseProduct(b[l].transpose())).sum() / (kI * c);
        if (std::abs(v.imag()) > 1e-10)
          throw NumericQualityError("structure constant e_" + std::to_string(i) + "," +
                                    std::to_string(j) + "," + std::to_string(l) +
                                    " has an imaginary part; basis not closed");
        e(i, j, l) = v.real();
        e(j, i, l) = -v.real();
      }
    }
  }
  return e;
}

Matrix commutator_from_constants(const StructureConstants& e, const OperatorBasis& b, int i,
                                 int j) {
  Matrix out = Matrix::Zero(b.dim(), b.dim());
  for (int l = 1; l <= e.generators(); ++l) out += e(i, j, l) * b[l];
  return kI * out;
}

DensityMatrix::DensityMatrix(Matrix data, std::vector<int> site_dims)
    : data_(std::move(data)), site_dims_(std::move(site_dims)) {
  if (data_.rows() != data_.cols()) throw InvalidArgument("density matrix must be square");
  check_same_dims(site_dims_, static_cast<std::size_t>(data_.rows()));
  if (max_anti_hermitian(data_) > 1e-12)
    throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(data_.trace() - Complex(1.0)) > 1e-12)
    throw InvalidArgument("density matrix trace differs from 1");
}

DensityMatrix::DensityMatrix(Matrix data, std::vector<int> site_dims, NoCheck)
    : data_(std::move(data)), site_dims_(std::move(site_dims)) {
  if (data_.rows() != data_.cols()) throw InvalidArgument("density matrix must be square");
  check_same_dims(site_dims_, static_cast<std::size_t>(data_.rows()));
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi, std::vector<int> site_dims) {
  const double n = psi.squaredNorm();
  if (std::abs(n - 1.0) > 1e-12) throw InvalidArgument("state vector is not normalized");
  Matrix m = psi * psi.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(std::move(m), std::move(site_dims), NoCheck{});
}

DensityMatrix DensityMatrix::unchecked(Matrix data, std::vector<int> site_dims) {
  return DensityMatrix(std::move(data), std::move(site_dims), NoCheck{});
}

double DensityMatrix::purity() const { return (data_ * data_).trace().real(); }

void DensityMatrix::validate() const {
  if (max_anti_hermitian(data_) > 1e-12)
    throw NumericQualityError("density matrix is not Hermitian");
  if (std::abs(data_.trace() - Complex(1.0)) > 1e-12)
    throw NumericQualityError("density matrix trace differs from 1");
  const RealVector ev = hermitian_eigenvalues(data_);
  if (ev.minCoeff() < -1e-9) throw NumericQualityError("density matrix is not positive");
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep) {
  if (keep >= rho.sites()) throw InvalidArgument("partial_trace: invalid site index");
  const SiteSplit sp = split_at(rho.site_dims(), keep);
  const Matrix& m = rho.data();
  Matrix out = Matrix::Zero(sp.local, sp.local);
  for (std::size_t l = 0; l < sp.left; ++l)
    for (std::size_t a = 0; a < sp.local; ++a)
      for (std::size_t b = 0; b < sp.local; ++b) {
        const std::size_t row0 = (l * sp.local + a) * sp.right;
        const std::size_t col0 = (l * sp.local + b) * sp.right;
        Complex acc = 0.0;
        for (std::size_t r = 0; r < sp.right; ++r) acc += m(row0 + r, col0 + r);
        out(a, b) += acc;
      }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::unchecked(std::move(out), {static_cast<int>(sp.local)});
}

DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& site_dims,
                            std::size_t keep) {
  if (keep >= site_dims.size()) throw InvalidArgument("partial_trace: invalid site index");
  if (total_dim(site_dims) != static_cast<std::size_t>(psi.size()))
    throw InvalidArgument("partial_trace: state size does not match site dimensions");
  const SiteSplit sp = split_at(site_dims, keep);
  Matrix out = Matrix::Zero(sp.local, sp.local);
  for (std::size_t l = 0; l < sp.left; ++l)
    for (std::size_t a = 0; a < sp.local; ++a)
      for (std::size_t b = a; b < sp.local; ++b) {
        const std::size_t ia = (l * sp.local + a) * sp.right;
        const std::size_t ib = (l * sp.local + b) * sp.right;
        Complex acc = 0.0;
        for (std::size_t r = 0; r < sp.right; ++r) acc += psi(ia + r) * std::conj(psi(ib + r));
        out(a, b) += acc;
      }
  for (std::size_t a = 0; a < sp.local; ++a) {
    out(a, a) = out(a, a).real();
    for (std::size_t b = a + 1; b < sp.local; ++b) out(b, a) = std::conj(out(a, b));
  }
  return DensityMatrix::unchecked(std::move(out), {static_cast<int>(sp.local)});
}

Matrix partial_transpose(const Matrix& m, const std::vector<int>& site_dims, std::size_t site) {
  if (site_dims.size() != 2)
    throw InvalidArgument("partial_transpose supports two-site operators only");
  if (site > 1) throw InvalidArgument("partial_transpose: invalid site index");
  if (total_dim(site_dims) != static_cast<std::size_t>(m.rows()))
    throw InvalidArgument("partial_transpose: size does not match site dimensions");
  const int da = site_dims[0];
  const int db = site_dims[1];
  Matrix out(m.rows(), m.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) {
          const int row = a * db + b;
          const int col = a2 * db + b2;
          if (site == 0)
            out(row, col) = m(a2 * db + b, a * db + b2);
          else
            out(row, col) = m(a * db + b2, a2 * db + b);
        }
  return out;
}

Matrix partial_transpose(const DensityMatrix& rho, std::size_t site) {
  return partial_transpose(rho.data(), rho.site_dims(), site);
}

Matrix swap_sites(const Matrix& m, const std::vector<int>& site_dims, std::size_t a,
                  std::size_t b) {
  const std::size_t n = site_dims.size();
  if (a >= n || b >= n) throw InvalidArgument("swap_sites: invalid site index");
  if (site_dims[a] != site_dims[b]) throw InvalidArgument("swap_sites: unequal site dims");
  const std::size_t dim = total_dim(site_dims);
  std::vector<std::size_t> perm(dim);
  std::vector<int> digits(n);
  for (std::size_t x = 0; x < dim; ++x) {
    std::size_t rem = x;
    for (std::size_t i = n; i-- > 0;) {
      digits[i] = static_cast<int>(rem % site_dims[i]);
      rem /= site_dims[i];
    }
    std::swap(digits[a], digits[b]);
    std::size_t y = 0;
    for (std::size_t i = 0; i < n; ++i) y = y * site_dims[i] + digits[i];
    perm[x] = y;
  }
  Matrix out(m.rows(), m.cols());
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y) out(perm[x], perm[y]) = m(x, y);
  return out;
}

namespace {

// Contracts the leading site with each basis element and recurses, so no
// full-size Kronecker product is ever formed.
void overlaps_into(const Matrix& m, const OperatorBasis& b, std::size_t sites,
                   std::vector<Complex>& out) {
  const Eigen::Index d = b.dim();
  if (sites == 1) {
    for (const Matrix& a : b.elements()) out.push_back(m.cwiseProduct(a.transpose()).sum());
    return;
  }
  const Eigen::Index rest = m.rows() / d;
  for (const Matrix& a : b.elements()) {
    Matrix t = Matrix::Zero(rest, rest);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        if (a(j, i) != Complex(0.0)) t += a(j, i) * m.block(i * rest, j * rest, rest, rest);
    overlaps_into(t, b, sites - 1, out);
  }
}

}  // namespace

std::vector<Complex> product_basis_overlaps(const Matrix& m, const OperatorBasis& b,
                                            std::size_t sites) {
  if (sites == 0) throw InvalidArgument("product basis needs at least one site");
  std::size_t dim = 1;
  std::size_t count = 1;
  for (std::size_t i = 0; i < sites; ++i) {
    dim *= b.dim();
    count *= b.size();
  }
  if (static_cast<std::size_t>(m.rows()) != dim)
    throw InvalidArgument("operator size does not match basis dimension");
  std::vector<Complex> out;
  out.reserve(count);
  overlaps_into(m, b, sites, out);
  return out;
}

BlochState bloch_from_rho(const DensityMatrix& rho, const OperatorBasis& b) {
  for (int d : rho.site_dims())
    if (d != b.dim()) throw InvalidArgument("bloch_from_rho: site dimension differs from basis");
  const std::size_t n = rho.sites();
  const double scale =
      std::sqrt(static_cast<double>(rho.dim()) / std::pow(b.norm_const(), static_cast<double>(n)));
  const auto ov = product_basis_overlaps(rho.data(), b, n);
  BlochState out{rho.site_dims(), RealVector(static_cast<Eigen::Index>(ov.size()))};
  for (std::size_t i = 0; i < ov.size(); ++i) out.r(static_cast<Eigen::Index>(i)) = ov[i].real() * scale;
  return out;
}

DensityMatrix rho_from_bloch(const BlochState& r, const OperatorBasis& b) {
  const std::size_t n = r.site_dims.size();
  for (int d : r.site_dims)
    if (d != b.dim()) throw InvalidArgument("rho_from_bloch: site dimension differs from basis");
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= b.size();
  if (static_cast<std::size_t>(r.r.size()) != count)
    throw InvalidArgument("rho_from_bloch: vector length does not match basis");
  const std::size_t dim = total_dim(r.site_dims);
  const double scale =
      1.0 / std::sqrt(static_cast<double>(dim) * std::pow(b.norm_const(), static_cast<double>(n)));
  Matrix m = Matrix::Zero(dim, dim);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t flat = 0; flat < count; ++flat) {
    const double coeff = r.r(static_cast<Eigen::Index>(flat));
    if (coeff == 0.0) continue;
    std::size_t rem = flat;
    for (std::size_t i = n; i-- > 0;) {
      idx[i] = rem % b.size();
      rem /= b.size();
    }
    Matrix k = b[idx[0]];
    for (std::size_t i = 1; i < n; ++i) k = kron(k, b[idx[i]]);
    m += (coeff * scale) * k;
  }
  return DensityMatrix::unchecked(std::move(m), r.site_dims);
}

}  // namespace quditchain
