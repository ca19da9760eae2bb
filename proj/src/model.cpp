#include "quditchain/model.hpp"

#include <cmath>

namespace quditchain {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Digit decomposition of composite indices, site 0 most significant.
struct IndexCodec {
  std::vector<int> dims;
  std::vector<std::size_t> strides;

  explicit IndexCodec(std::vector<int> d) : dims(std::move(d)), strides(dims.size(), 1) {
    for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  }
  int digit(std::size_t x, std::size_t site) const {
    return static_cast<int>((x / strides[site]) % dims[site]);
  }
  std::size_t replace(std::size_t x, std::size_t site, int value) const {
    return x + (static_cast<long long>(value) - digit(x, site)) * strides[site];
  }
};

Matrix embed_two_site(const Matrix& a, const Matrix& b, const IndexCodec& codec, std::size_t i,
                      std::size_t j) {
  const std::size_t dim = total_dim(codec.dims);
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const int xi = codec.digit(x, i);
    const int xj = codec.digit(x, j);
    for (int yi = 0; yi < codec.dims[i]; ++yi) {
      const Complex av = a(xi, yi);
      if (av == Complex(0.0)) continue;
      const std::size_t yb = codec.replace(x, i, yi);
      for (int yj = 0; yj < codec.dims[j]; ++yj) {
        const Complex bv = b(xj, yj);
        if (bv == Complex(0.0)) continue;
        out(x, codec.replace(yb, j, yj)) += av * bv;
      }
    }
  }
  return out;
}

void check_dim(std::size_t dim) {
  if (dim > kMaxChainDim)
    throw DimensionError("chain Hilbert space dimension " + std::to_string(dim) +
                         " exceeds the limit of " + std::to_string(kMaxChainDim));
}

}  // namespace

Vec3 consistent_field(double t, const ConsistentField& f) {
  const JacobiTriple j = jacobi_sn_cn_dn(f.omega * t, EllipticModulus(f.k));
  return {f.omega1 * j.cn, f.omega1 * j.sn, f.omega0 * j.dn};
}

Vec3 field_at(const Field& f, double t) {
  return std::visit(Overloaded{
                        [](const ConstantField& c) { return c.h; },
                        [t](const ConsistentField& c) { return consistent_field(t, c); },
                        [t](const PiecewiseField& p) {
                          std::size_t i = 0;
                          while (i < p.breaks.size() && t >= p.breaks[i]) ++i;
                          return p.values.at(i);
                        },
                    },
                    f);
}

std::vector<double> field_breakpoints(const Field& f) {
  if (const auto* p = std::get_if<PiecewiseField>(&f)) return p->breaks;
  return {};
}

Field scaled(const Field& f, double factor) {
  return std::visit(Overloaded{
                        [factor](ConstantField c) -> Field {
                          for (double& x : c.h) x *= factor;
                          return c;
                        },
                        [factor](ConsistentField c) -> Field {
                          c.omega0 *= factor;
                          c.omega1 *= factor;
                          return c;
                        },
                        [factor](PiecewiseField p) -> Field {
                          for (Vec3& v : p.values)
                            for (double& x : v) x *= factor;
                          return p;
                        },
                    },
                    f);
}

std::vector<int> ChainSpec::site_dims() const {
  std::vector<int> dims;
  dims.reserve(sites.size());
  for (const SiteSpec& s : sites) dims.push_back(s.spin.dim());
  return dims;
}

std::size_t ChainSpec::dim() const { return total_dim(site_dims()); }

ChainSpec ChainSpec::uniform(SpinQuantum spin, std::size_t n_sites, double J, Field field,
                             AnisotropySpec anisotropy) {
  ChainSpec c;
  c.J = J;
  c.sites.assign(n_sites, SiteSpec{spin, std::move(field), anisotropy});
  return c;
}

Matrix site_hamiltonian(const Vec3& h, const AnisotropySpec& a, SpinQuantum spin) {
  const auto [s1, s2, s3] = spin_matrices(spin);
  const double s = spin.s();
  const Matrix e = identity(spin.dim());
  Matrix out = h[0] * s1 + h[1] * s2 + h[2] * s3;
  if (a.Q != 0.0) out += a.Q * (s3 * s3 - (s * (s + 1.0) / 3.0) * e);
  if (a.d != 0.0) out += a.d * (s1 * s1 - s2 * s2);
  return out;
}

Matrix pair_hamiltonian(const Vec3& h, const Vec3& h_bar, const AnisotropySpec& a,
                        const AnisotropySpec& a_bar, double J, SpinQuantum s) {
  const Matrix e = identity(s.dim());
  const auto sp = spin_matrices(s);
  Matrix out = kron(site_hamiltonian(h, a, s), e) + kron(e, site_hamiltonian(h_bar, a_bar, s));
  for (const Matrix& si : sp) out += J * kron(si, si);
  return out;
}

Matrix embed_site_operator(const Matrix& op, const std::vector<int>& site_dims, std::size_t site) {
  if (site >= site_dims.size()) throw InvalidArgument("embed: invalid site index");
  std::size_t left = 1;
  std::size_t right = 1;
  for (std::size_t i = 0; i < site; ++i) left *= site_dims[i];
  for (std::size_t i = site + 1; i < site_dims.size(); ++i) right *= site_dims[i];
  const auto local = static_cast<std::size_t>(site_dims[site]);
  const std::size_t dim = left * local * right;
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t a = 0; a < local; ++a)
      for (std::size_t b = 0; b < local; ++b) {
        const Complex v = op(a, b);
        if (v == Complex(0.0)) continue;
        for (std::size_t r = 0; r < right; ++r)
          out((l * local + a) * right + r, (l * local + b) * right + r) = v;
      }
  return out;
}

Matrix exchange_hamiltonian(const ChainSpec& c) {
  const std::vector<int> dims = c.site_dims();
  const std::size_t dim = total_dim(dims);
  check_dim(dim);
  Matrix out = Matrix::Zero(dim, dim);
  if (c.J == 0.0) return out;
  const IndexCodec codec(dims);
  for (std::size_t i = 0; i < dims.size(); ++i)
    for (std::size_t j = i + 1; j < dims.size(); ++j) {
      const auto si = spin_matrices(c.sites[i].spin);
      const auto sj = spin_matrices(c.sites[j].spin);
      for (int a = 0; a < 3; ++a) out += c.J * embed_two_site(si[a], sj[a], codec, i, j);
    }
  return out;
}

ChainHamiltonian::ChainHamiltonian(ChainSpec c) : spec_(std::move(c)) {
  if (spec_.sites.empty()) throw InvalidArgument("chain needs at least one site");
  const std::vector<int> dims = spec_.site_dims();
  check_dim(total_dim(dims));
  exchange_ = exchange_hamiltonian(spec_);
  anisotropy_ = Matrix::Zero(exchange_.rows(), exchange_.cols());
  for (std::size_t i = 0; i < spec_.sites.size(); ++i) {
    const SiteSpec& site = spec_.sites[i];
    const auto s = spin_matrices(site.spin);
    spins_.push_back({embed_site_operator(s[0], dims, i), embed_site_operator(s[1], dims, i),
                      embed_site_operator(s[2], dims, i)});
    anisotropy_ +=
        embed_site_operator(site_hamiltonian({0.0, 0.0, 0.0}, site.anisotropy, site.spin), dims, i);
  }
}

Matrix ChainHamiltonian::operator()(double t) const {
  Matrix out = exchange_ + anisotropy_;
  for (std::size_t i = 0; i < spec_.sites.size(); ++i) {
    const Vec3 h = field_at(spec_.sites[i].field, t);
    for (int a = 0; a < 3; ++a)
      if (h[a] != 0.0) out += h[a] * spins_[i][a];
  }
  return out;
}

bool ChainHamiltonian::time_independent() const {
  for (const SiteSpec& s : spec_.sites) {
    if (std::holds_alternative<ConstantField>(s.field)) continue;
    if (const auto* f = std::get_if<ConsistentField>(&s.field);
        f && f->omega1 == 0.0 && (f->omega0 == 0.0 || f->k == 0.0))
      continue;
    return false;
  }
  return true;
}

Matrix chain_hamiltonian(const ChainSpec& c, double t) { return ChainHamiltonian(c)(t); }

Matrix gauge_matrix(SpinQuantum s, double t, double omega, EllipticModulus k) {
  const double am = jacobi_sn_cn_dn(omega * t, k).am;
  const int d = s.dim();
  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) out(i, i) = std::exp(kI * (s.m(i) * am));
  return out;
}

std::optional<ConsistentField> common_consistent_field(const ChainSpec& c) {
  if (c.sites.empty()) return std::nullopt;
  const auto* first = std::get_if<ConsistentField>(&c.sites.front().field);
  if (!first) return std::nullopt;
  for (const SiteSpec& s : c.sites) {
    const auto* f = std::get_if<ConsistentField>(&s.field);
    if (!f || f->omega0 != first->omega0 || f->omega1 != first->omega1 ||
        f->omega != first->omega || f->k != first->k)
      return std::nullopt;
  }
  return *first;
}

Matrix chain_gauge_matrix(const ChainSpec& c, double t) {
  const auto f = common_consistent_field(c);
  if (!f) throw InvalidArgument("gauge transformation needs a common consistent field");
  const EllipticModulus k(f->k);
  Matrix out = gauge_matrix(c.sites.front().spin, t, f->omega, k);
  for (std::size_t i = 1; i < c.sites.size(); ++i)
    out = kron(out, gauge_matrix(c.sites[i].spin, t, f->omega, k));
  return out;
}

Matrix transformed_hamiltonian(const ChainSpec& c, double t) {
  const auto f = common_consistent_field(c);
  if (!f) throw InvalidArgument("transformed Hamiltonian needs a common consistent field");
  for (const SiteSpec& s : c.sites)
    if (s.anisotropy.d != 0.0)
      throw InvalidArgument("the d (S1^2 - S2^2) anisotropy does not commute with the gauge");
  const double dn = jacobi_sn_cn_dn(f->omega * t, EllipticModulus(f->k)).dn;
  ChainSpec rotating = c;
  for (SiteSpec& s : rotating.sites)
    s.field = ConstantField{{f->omega1, 0.0, f->detuning() * dn}};
  return chain_hamiltonian(rotating, t);
}

RealVector hamiltonian_components(const Matrix& h, const OperatorBasis& b) {
  const auto n = static_cast<Eigen::Index>(b.size()) - 1;
  RealVector out(n);
  for (Eigen::Index i = 1; i <= n; ++i)
    out(i - 1) = (h.cwiseProduct(b[static_cast<std::size_t>(i)].transpose())).sum().real() /
                 b.norm_const();
  return out;
}

}  // namespace quditchain
