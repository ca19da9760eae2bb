#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "quditchain/dynamics.hpp"
#include "quditchain/elliptic.hpp"
#include "quditchain/model.hpp"

using namespace quditchain;
using namespace testing;

namespace {

std::vector<double> spectrum(const Matrix& h) {
  const RealVector ev = hermitian_eigenvalues(h);
  return {ev.begin(), ev.end()};
}

ChainSpec resonant_pair(double J, double omega1, double omega0, double k) {
  return ChainSpec::uniform(SpinQuantum(2), 2, J, ConsistentField{omega0, omega1, omega0, k});
}

}  // namespace

TEST_CASE("consistent field") {
  const ConsistentField circ{2.0, 0.5, 1.3, 0.0};
  for (double t : {0.0, 0.4, 3.1}) {
    const Vec3 h = consistent_field(t, circ);
    CHECK(std::abs(h[0] - 0.5 * std::cos(1.3 * t)) < 1e-14);
    CHECK(std::abs(h[1] - 0.5 * std::sin(1.3 * t)) < 1e-14);
    CHECK(std::abs(h[2] - 2.0) < 1e-14);
  }
  for (double k : {0.0, 0.3, 0.9, 1.0}) {
    const Vec3 h = consistent_field(0.0, ConsistentField{2.0, 0.5, 1.3, k});
    CHECK(h[0] == 0.5);
    CHECK(h[1] == 0.0);
    CHECK(h[2] == 2.0);
  }
  const ConsistentField pulse{2.0, 0.5, 1.3, 1.0};
  const double t = 0.8;
  const Vec3 h = consistent_field(t, pulse);
  CHECK(std::abs(h[0] - 0.5 / std::cosh(1.3 * t)) < 1e-12);
  CHECK(std::abs(h[1] - 0.5 * std::tanh(1.3 * t)) < 1e-12);
  CHECK(std::abs(h[2] - 2.0 / std::cosh(1.3 * t)) < 1e-12);
  CHECK(ConsistentField{2.0, 0.5, 1.3, 0.0}.detuning() == doctest::Approx(0.7));
}

TEST_CASE("piecewise field and scaling") {
  const PiecewiseField p{{1.0, 2.0}, {{0, 0, 1}, {0, 0, 0}, {0, 0, 3}}};
  CHECK(field_at(p, 0.5)[2] == 1.0);
  CHECK(field_at(p, 1.0)[2] == 0.0);
  CHECK(field_at(p, std::nextafter(1.0, 0.0))[2] == 1.0);
  CHECK(field_at(p, 2.5)[2] == 3.0);
  CHECK(field_breakpoints(p) == std::vector<double>{1.0, 2.0});
  CHECK(field_breakpoints(ConstantField{}).empty());
  CHECK(field_at(scaled(p, -1.0), 2.5)[2] == -3.0);
  const Field c = scaled(ConsistentField{1.0, 0.5, 1.0, 0.3}, -1.0);
  CHECK(field_at(c, 0.0)[0] == -0.5);
  CHECK(field_at(c, 0.0)[2] == -1.0);
}

TEST_CASE("site Hamiltonian") {
  const SpinQuantum one(2);
  Matrix expected = Matrix::Zero(3, 3);
  expected.diagonal() << 1.5, 0.0, -1.5;
  CHECK(max_abs(site_hamiltonian({0, 0, 1.5}, {}, one) - expected) < 1e-15);
  expected.diagonal() << 1.0 / 3.0, -2.0 / 3.0, 1.0 / 3.0;
  CHECK(max_abs(site_hamiltonian({0, 0, 0}, {1.0, 0.0}, one) - expected) < 1e-15);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix h =
        site_hamiltonian({uniform(), uniform(), uniform()}, {uniform(), uniform()}, SpinQuantum(3));
    CHECK(std::abs(h.trace()) < 1e-14);
    CHECK(max_abs(h - h.adjoint()) < 1e-15);
  }
}

TEST_CASE("pair Hamiltonian") {
  const SpinQuantum one(2);
  SUBCASE("non-interacting spectrum is the Minkowski sum") {
    const Vec3 h{0.3, -0.2, 0.7};
    const Vec3 hb{-0.1, 0.4, 0.2};
    const AnisotropySpec a{0.2, 0.1};
    const AnisotropySpec ab{-0.3, 0.05};
    const auto e1 = spectrum(site_hamiltonian(h, a, one));
    const auto e2 = spectrum(site_hamiltonian(hb, ab, one));
    std::vector<double> sum;
    for (double x : e1)
      for (double y : e2) sum.push_back(x + y);
    CHECK(multiset_deviation(spectrum(pair_hamiltonian(h, hb, a, ab, 0.0, one)), sum) < 1e-13);
  }
  SUBCASE("pure exchange spectrum") {
    const double J = 0.37;
    const std::vector<double> expected{-2 * J, -J, -J, -J, J, J, J, J, J};
    CHECK(multiset_deviation(spectrum(pair_hamiltonian({}, {}, {}, {}, J, one)), expected) < 1e-13);
  }
  SUBCASE("permutation symmetry with equal fields") {
    const Vec3 h{0.3, -0.2, 0.7};
    const AnisotropySpec a{0.2, 0.1};
    const Matrix hp = pair_hamiltonian(h, h, a, a, 0.4, one);
    CHECK(max_abs(swap_sites(hp, {3, 3}, 0, 1) - hp) < 1e-15);
    const Matrix asym = pair_hamiltonian(h, {0, 0, 0}, a, a, 0.4, one);
    CHECK(max_abs(swap_sites(asym, {3, 3}, 0, 1) - asym) > 0.1);
  }
}

TEST_CASE("chain Hamiltonian") {
  SUBCASE("two sites reduce to the pair Hamiltonian") {
    const Vec3 h{0.3, -0.2, 0.7};
    const AnisotropySpec a{0.2, 0.1};
    const ChainSpec c = ChainSpec::uniform(SpinQuantum(2), 2, 0.4, ConstantField{h}, a);
    CHECK(max_abs(chain_hamiltonian(c, 0.0) - pair_hamiltonian(h, h, a, a, 0.4, SpinQuantum(2))) <
          1e-15);
  }
  SUBCASE("zero-field qutrit triple commutes with every swap") {
    const ChainSpec c = ChainSpec::uniform(SpinQuantum(2), 3, 0.1);
    const Matrix h = chain_hamiltonian(c, 0.0);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a + 1; b < 3; ++b)
        CHECK(max_abs(swap_sites(h, {3, 3, 3}, a, b) - h) < 1e-12);
  }
  SUBCASE("identical fields commute with the exchange part") {
    const ChainSpec c = ChainSpec::uniform(SpinQuantum(2), 3, 0.1,
                                           ConsistentField{1.0, 0.5, 1.0, 0.7});
    const ChainHamiltonian ham(c);
    for (double t : {0.0, 1.3, 4.4}) {
      const Matrix h = ham(t);
      const Matrix free = h - ham.exchange();
      CHECK(max_abs(free * ham.exchange() - ham.exchange() * free) < 1e-11);
    }
  }
  SUBCASE("time independence") {
    CHECK(ChainHamiltonian(ChainSpec::uniform(SpinQuantum(2), 2, 0.1, ConstantField{{0, 0, 1}}))
              .time_independent());
    CHECK_FALSE(ChainHamiltonian(ChainSpec::uniform(SpinQuantum(2), 2, 0.1,
                                                    ConsistentField{1.0, 0.5, 1.0, 0.0}))
                    .time_independent());
  }
  SUBCASE("dimension guard") {
    CHECK_NOTHROW(ChainHamiltonian(ChainSpec::uniform(SpinQuantum(2), 6, 0.1)));
    CHECK_THROWS_AS(ChainHamiltonian(ChainSpec::uniform(SpinQuantum(2), 7, 0.1)), DimensionError);
    CHECK_THROWS_AS(ChainHamiltonian(ChainSpec{}), InvalidArgument);
  }
}

TEST_CASE("gauge matrix") {
  const SpinQuantum one(2);
  CHECK(max_abs(gauge_matrix(one, 0.0, 1.3, EllipticModulus(0.7)) - identity(3)) < 1e-15);
  for (double t = 0.0; t < 20.0; t += 0.37) {
    const Matrix a = gauge_matrix(one, t, 1.3, EllipticModulus(0.7));
    CHECK(max_abs(a.adjoint() * a - identity(3)) < 1e-12);
    const Matrix c = gauge_matrix(one, t, 1.3, EllipticModulus(0.0));
    CHECK(std::abs(c(0, 0) - std::exp(kI * 1.3 * t)) < 1e-12);
    CHECK(std::abs(c(1, 1) - 1.0) < 1e-15);
    CHECK(std::abs(c(2, 2) - std::exp(-kI * 1.3 * t)) < 1e-12);
    // f = cn + i sn for every spin, with half-integer powers via the amplitude.
    const JacobiTriple j = jacobi_sn_cn_dn(1.3 * t, EllipticModulus(0.7));
    CHECK(std::abs(a(0, 0) - Complex(j.cn, j.sn)) < 1e-12);
    const Matrix half = gauge_matrix(SpinQuantum(3), t, 1.3, EllipticModulus(0.7));
    CHECK(std::abs(half(0, 0) * std::conj(half(1, 1)) - Complex(j.cn, j.sn)) < 1e-12);
  }
}

TEST_CASE("exchange is gauge invariant") {
  const auto s = spin_matrices(SpinQuantum(2));
  Matrix ex = Matrix::Zero(9, 9);
  for (int a = 0; a < 3; ++a) ex += kron(s[a], s[a]);
  for (double k : {0.0, 0.5, 0.95})
    for (double t : {0.0, 0.7, 5.2}) {
      const Matrix g = gauge_matrix(SpinQuantum(2), t, 1.1, EllipticModulus(k));
      const Matrix a = kron(g, g);
      CHECK(max_abs(a * ex * a.adjoint() - ex) < 1e-12);
    }
}

TEST_CASE("transformed Hamiltonian") {
  SUBCASE("resonance makes it constant for every k") {
    for (double k : {0.0, 0.5, 0.99}) {
      const ChainSpec c = resonant_pair(0.1, 0.7, 1.0, k);
      CHECK(max_abs(transformed_hamiltonian(c, 0.0) - transformed_hamiltonian(c, 3.3)) < 1e-15);
    }
  }
  SUBCASE("off resonance with k = 0") {
    const ChainSpec c = ChainSpec::uniform(SpinQuantum(2), 2, 0.1,
                                           ConsistentField{1.0, 0.7, 0.8, 0.0});
    const auto s = spin_matrices(SpinQuantum(2));
    const Matrix e = identity(3);
    Matrix expected = 0.7 * (kron(s[0], e) + kron(e, s[0])) + 0.2 * (kron(s[2], e) + kron(e, s[2]));
    for (int a = 0; a < 3; ++a) expected += 0.1 * kron(s[a], s[a]);
    CHECK(max_abs(transformed_hamiltonian(c, 2.0) - expected) < 1e-14);
  }
  SUBCASE("resonance spectrum") {
    for (double J : {0.1, 0.3})
      for (double w1 : {0.5, 1.0}) {
        const std::vector<double> expected{-2 * J,  -J,      J,       J - 2 * w1, -J - w1,
                                           J - w1, -J + w1, J + w1, J + 2 * w1};
        CHECK(multiset_deviation(spectrum(transformed_hamiltonian(resonant_pair(J, w1, 1.0, 0.5),
                                                                  0.0)),
                                 expected) < 1e-10);
      }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(transformed_hamiltonian(ChainSpec::uniform(SpinQuantum(2), 2, 0.1), 0.0),
                    InvalidArgument);
    ChainSpec mixed = resonant_pair(0.1, 0.5, 1.0, 0.0);
    std::get<ConsistentField>(mixed.sites[1].field).omega1 = 0.6;
    CHECK_FALSE(common_consistent_field(mixed).has_value());
    ChainSpec aniso = ChainSpec::uniform(SpinQuantum(2), 2, 0.1,
                                         ConsistentField{1.0, 0.5, 1.0, 0.0}, {0.0, 0.2});
    CHECK_THROWS_AS(transformed_hamiltonian(aniso, 0.0), InvalidArgument);
  }
}

TEST_CASE("gauge solution satisfies the equation of motion") {
  // Single qutrit: rho = a^-1 exp(-i H~ t) rho0 exp(i H~ t) a; check
  // i d(rho)/dt = [H, rho] by centered differences.
  for (double k : {0.0, 0.6}) {
    const ChainSpec c{{SiteSpec{SpinQuantum(2), ConsistentField{1.2, 0.4, 1.2, k}, {0.3, 0.0}}},
                      0.0};
    const ResonancePropagator prop(c);
    const ChainHamiltonian ham(c);
    const DensityMatrix rho0 = random_density({3});
    const double dt = 1e-4;
    for (double t : {0.5, 2.0, 7.5}) {
      const Matrix drho =
          (prop.evolve(rho0, t + dt).data() - prop.evolve(rho0, t - dt).data()) / (2.0 * dt);
      const Matrix rho = prop.evolve(rho0, t).data();
      const Matrix h = ham(t);
      CHECK(max_abs(kI * drho - (h * rho - rho * h)) < 1e-6);
    }
  }
}

TEST_CASE("Hamiltonian components reconstruct the traceless part") {
  for (int d : {3, 4, 5}) {
    const OperatorBasis b = hermitian_basis(SpinQuantum::from_dim(d));
    const Matrix h = site_hamiltonian({0.3, -0.5, 0.8}, {0.2, 0.1}, SpinQuantum::from_dim(d));
    const RealVector comp = hamiltonian_components(h, b);
    Matrix rebuilt = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < comp.size(); ++i)
      rebuilt += comp(i) * b[static_cast<std::size_t>(i) + 1];
    CHECK(max_abs(rebuilt - h) < 1e-13);
    CHECK(std::abs(comp(0) - 0.3) < 1e-14);
    CHECK(std::abs(comp(2) - 0.8) < 1e-14);
  }
}
