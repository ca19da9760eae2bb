#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

#include "quditchain/basis.hpp"
#include "quditchain/elliptic.hpp"

namespace quditchain {

using Vec3 = std::array<double, 3>;

/// h(t) = (w1 cn(wt|k), w1 sn(wt|k), w0 dn(wt|k)), all in frequency units.
struct ConsistentField {
  double omega0 = 0.0;
  double omega1 = 0.0;
  double omega = 0.0;
  double k = 0.0;

  double detuning() const noexcept { return omega0 - omega; }
};

struct ConstantField {
  Vec3 h{0.0, 0.0, 0.0};
};

/// Piecewise-constant field: values[i] holds on [breaks[i-1], breaks[i]),
/// with breaks sorted; values.size() == breaks.size() + 1.
struct PiecewiseField {
  std::vector<double> breaks;
  std::vector<Vec3> values;
};

using Field = std::variant<ConstantField, ConsistentField, PiecewiseField>;

Vec3 consistent_field(double t, const ConsistentField& f);
Vec3 field_at(const Field& f, double t);
/// Discontinuity times of the field (empty for smooth fields).
std::vector<double> field_breakpoints(const Field& f);
Field scaled(const Field& f, double factor);

struct AnisotropySpec {
  double Q = 0.0;
  double d = 0.0;
};

struct SiteSpec {
  SpinQuantum spin{2};
  Field field{ConstantField{}};
  AnisotropySpec anisotropy{};
};

/// N sites with all-pairs isotropic exchange J S_i.S_j.
struct ChainSpec {
  std::vector<SiteSpec> sites;
  double J = 0.0;

  std::vector<int> site_dims() const;
  std::size_t dim() const;
  /// Identical spin, field and anisotropy on every site.
  static ChainSpec uniform(SpinQuantum spin, std::size_t n_sites, double J, Field field = {},
                           AnisotropySpec anisotropy = {});
};

inline constexpr std::size_t kMaxChainDim = 1024;

/// H(h) = h.S + Q (S3^2 - s(s+1)/3 E) + d (S1^2 - S2^2).
Matrix site_hamiltonian(const Vec3& h, const AnisotropySpec& a, SpinQuantum s);

/// H(h) (x) E + E (x) H(hbar) + J S_i (x) S_i.
Matrix pair_hamiltonian(const Vec3& h, const Vec3& h_bar, const AnisotropySpec& a,
                        const AnisotropySpec& a_bar, double J, SpinQuantum s);

/// Embeds a single-site operator at `site` of a product space.
Matrix embed_site_operator(const Matrix& op, const std::vector<int>& site_dims, std::size_t site);

/// J sum_{i<j} S_i . S_j over the chain.
Matrix exchange_hamiltonian(const ChainSpec& c);

/// Hamiltonian of a chain with its time-independent pieces precomputed.
class ChainHamiltonian {
 public:
  explicit ChainHamiltonian(ChainSpec c);

  Matrix operator()(double t) const;
  const ChainSpec& spec() const noexcept { return spec_; }
  const Matrix& exchange() const noexcept { return exchange_; }
  bool time_independent() const;

 private:
  ChainSpec spec_;
  Matrix exchange_;
  Matrix anisotropy_;
  // Embedded S1, S2, S3 per site.
  std::vector<std::array<Matrix, 3>> spins_;
};

Matrix chain_hamiltonian(const ChainSpec& c, double t);

/// diag(f^s, f^(s-1), ..., f^-s) with f = cn + i sn = exp(i am(wt|k)).
Matrix gauge_matrix(SpinQuantum s, double t, double omega, EllipticModulus k);
/// Tensor product of per-site gauge matrices for a consistent-field chain.
Matrix chain_gauge_matrix(const ChainSpec& c, double t);

/// Parameters shared by every site of a chain driven by one consistent field
/// at a common frequency; nullopt when the chain is not of that form.
std::optional<ConsistentField> common_consistent_field(const ChainSpec& c);

/// Gauge-transformed Hamiltonian: per site w1 S1 + delta dn(wt|k) S3 plus the
/// Q anisotropy term, plus the unchanged exchange. Requires a common
/// consistent field and d = 0 on every site.
Matrix transformed_hamiltonian(const ChainSpec& c, double t);

/// Bloch-equation field coefficients h_i = Tr(H C_i) / c, i = 1 .. d^2-1.
RealVector hamiltonian_components(const Matrix& h, const OperatorBasis& b);

}  // namespace quditchain
