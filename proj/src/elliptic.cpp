#include "quditchain/elliptic.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace quditchain {

namespace {

constexpr int kMaxAgmSteps = 40;

}  // namespace

EllipticModulus::EllipticModulus(double k) : k_(k) {
  if (!(k >= 0.0 && k <= 1.0)) throw InvalidArgument("elliptic modulus must lie in [0, 1]");
}

double complete_K(EllipticModulus k) {
  if (k.k() >= 1.0) throw InvalidArgument("complete_K diverges at k = 1");
  double a = 1.0;
  double b = std::sqrt(1.0 - k.m());
  for (int i = 0; i < kMaxAgmSteps && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (2.0 * a);
}

JacobiTriple jacobi_sn_cn_dn(double u, EllipticModulus k) {
  const double m = k.m();
  if (m == 0.0) return {std::sin(u), std::cos(u), 1.0, u};
  if (k.k() == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    // Gudermannian.
    return {std::tanh(u), sech, sech, 2.0 * std::atan(std::tanh(0.5 * u))};
  }

  // Reduce to |u| <= K: am(u + 2nK) = am(u) + n pi.
  const double big_k = complete_K(k);
  const double n_half = std::nearbyint(u / (2.0 * big_k));
  const double ur = u - n_half * 2.0 * big_k;

  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  c[0] = std::sqrt(m);
  int n = 0;
  while (std::abs(c[n]) > 1e-16 && n < kMaxAgmSteps) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  std::array<double, kMaxAgmSteps + 1> phi{};
  phi[n] = std::ldexp(1.0, n) * a[n] * ur;
  for (int i = n; i > 0; --i)
    phi[i - 1] = 0.5 * (phi[i] + std::asin(c[i] / a[i] * std::sin(phi[i])));

  const double am_r = phi[0];
  const double sn = std::sin(am_r);
  const double cn = std::cos(am_r);
  const double dn = n > 0 ? cn / std::cos(phi[1] - phi[0]) : std::sqrt(1.0 - m * sn * sn);
  const double sign = std::fmod(std::abs(n_half), 2.0) == 1.0 ? -1.0 : 1.0;
  return {sign * sn, sign * cn, dn, am_r + n_half * std::numbers::pi};
}

}  // namespace quditchain
