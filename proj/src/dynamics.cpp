#include "quditchain/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace quditchain {

TimeGrid::TimeGrid(double t0, double t1, std::size_t n_steps, std::vector<double> breakpoints)
    : t0_(t0), t1_(t1) {
  if (!(t0 < t1)) throw InvalidArgument("time grid needs t0 < t1");
  if (n_steps == 0) throw InvalidArgument("time grid needs at least one step");
  std::sort(breakpoints.begin(), breakpoints.end());
  for (double b : breakpoints)
    if (b > t0 && b < t1 && (breakpoints_.empty() || b != breakpoints_.back()))
      breakpoints_.push_back(b);

  std::vector<double> edges{t0};
  edges.insert(edges.end(), breakpoints_.begin(), breakpoints_.end());
  edges.push_back(t1);
  const double span = t1 - t0;
  nodes_.push_back(t0);
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double len = edges[s + 1] - edges[s];
    const auto n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(n_steps) * len / span)));
    for (std::size_t i = 1; i < n; ++i)
      nodes_.push_back(edges[s] + len * static_cast<double>(i) / static_cast<double>(n));
    nodes_.push_back(edges[s + 1]);
  }
}

std::size_t default_steps(const ChainSpec& c, double t0, double t1) {
  double shortest = 0.0;
  auto consider = [&shortest](double freq) {
    if (freq == 0.0) return;
    const double period = 2.0 * std::numbers::pi / std::abs(freq);
    if (shortest == 0.0 || period < shortest) shortest = period;
  };
  // J sum S_i.S_j = (J/2)(S_tot^2 - const) spans (J/2) Ns (Ns + 1).
  double ns = 0.0;
  for (const SiteSpec& s : c.sites) ns += s.spin.s();
  const double exchange = 0.5 * std::abs(c.J) * ns * (ns + 1.0);
  auto norm = [](const Vec3& h) { return std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]); };
  // Zeeman spans 2 s |h| add up over the sites.
  double zeeman = 0.0;
  for (const SiteSpec& s : c.sites) {
    const double span = 2.0 * s.spin.s();
    double peak = 0.0;
    if (const auto* f = std::get_if<ConsistentField>(&s.field)) {
      consider(f->omega);
      peak = std::hypot(f->omega0, f->omega1);
    } else if (const auto* f = std::get_if<ConstantField>(&s.field)) {
      peak = norm(f->h);
    } else if (const auto* f = std::get_if<PiecewiseField>(&s.field)) {
      for (const Vec3& v : f->values) peak = std::max(peak, norm(v));
    }
    zeeman += span * peak;
  }
  // The spectral width of H bounds every frequency of the Liouvillian.
  consider(exchange + zeeman);
  if (shortest == 0.0) return 1;
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(200.0 * (t1 - t0) / shortest)));
}

namespace {

// For Hermitian h and rho, rho h = (h rho)^H, so one product suffices. Every
// RK4 stage argument is Hermitian because the update -i[h, rho] is.
Matrix lvn_rhs(const Matrix& h, const Matrix& rho) {
  const Matrix x = h * rho;
  return -kI * (x - x.adjoint());
}

}  // namespace

Trajectory integrate_lvn(const HamiltonianFn& h, const DensityMatrix& rho0, const TimeGrid& grid,
                         const IntegratorOptions& opts) {
  const std::vector<int>& dims = rho0.site_dims();
  const std::size_t stride = std::max<std::size_t>(1, opts.stride);
  const auto& nodes = grid.nodes();

  Trajectory out;
  out.times.push_back(nodes.front());
  out.states.push_back(rho0);

  Matrix rho = rho0.data();
  double purity = rho0.purity();
  for (std::size_t step = 0; step + 1 < nodes.size(); ++step) {
    const double t = nodes[step];
    const double dt = nodes[step + 1] - t;
    // Evaluate H strictly inside the step so piecewise fields never straddle
    // a breakpoint: the end-point stage uses the left limit. An additive
    // offset would round back onto the breakpoint for small dt.
    const double t_end = std::nextafter(nodes[step + 1], t);
    const Matrix h0 = h(t);
    const Matrix hm = h(t + 0.5 * dt);
    const Matrix h1 = h(t_end);
    const Matrix k1 = lvn_rhs(h0, rho);
    const Matrix k2 = lvn_rhs(hm, rho + (0.5 * dt) * k1);
    const Matrix k3 = lvn_rhs(hm, rho + (0.5 * dt) * k2);
    const Matrix k4 = lvn_rhs(h1, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const Complex tr = rho.trace();
    out.max_trace_drift = std::max(out.max_trace_drift, std::abs(tr - Complex(1.0)));
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();

    const double next_purity = (rho * rho).trace().real();
    if (std::abs(next_purity - purity) > opts.purity_drift_limit)
      throw NumericQualityError("integrate_lvn: purity drift " +
                                std::to_string(std::abs(next_purity - purity)) + " at t = " +
                                std::to_string(nodes[step + 1]) + "; step too large");
    purity = next_purity;

    const bool last = step + 2 == nodes.size();
    if ((step + 1) % stride == 0 || last) {
      out.times.push_back(nodes[step + 1]);
      out.states.push_back(DensityMatrix::unchecked(rho, dims));
    }
  }
  return out;
}

BlochTrajectory integrate_bloch(const ComponentFn& h, const BlochState& r0,
                                const StructureConstants& e, const TimeGrid& grid,
                                const IntegratorOptions& opts) {
  const int n = e.generators();
  if (r0.site_dims.size() != 1 || r0.r.size() != n + 1)
    throw InvalidArgument("integrate_bloch: single-site Bloch vector expected");
  // Dense generator matrix G(h)_{lj} = sum_i e_ijl h_i, so dR/dt = G R.
  auto generator = [&](const RealVector& hv) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i <= n; ++i) {
      const double hi = hv(i - 1);
      if (hi == 0.0) continue;
      for (int j = 1; j <= n; ++j)
        for (int l = 1; l <= n; ++l) g(l - 1, j - 1) += e(i, j, l) * hi;
    }
    return g;
  };

  const std::size_t stride = std::max<std::size_t>(1, opts.stride);
  const auto& nodes = grid.nodes();
  BlochTrajectory out;
  out.times.push_back(nodes.front());
  out.states.push_back(r0);
  RealVector r = r0.r.tail(n);
  for (std::size_t step = 0; step + 1 < nodes.size(); ++step) {
    const double t = nodes[step];
    const double dt = nodes[step + 1] - t;
    const Eigen::MatrixXd g0 = generator(h(t));
    const Eigen::MatrixXd gm = generator(h(t + 0.5 * dt));
    const Eigen::MatrixXd g1 = generator(h(std::nextafter(nodes[step + 1], t)));
    const RealVector k1 = g0 * r;
    const RealVector k2 = gm * (r + 0.5 * dt * k1);
    const RealVector k3 = gm * (r + 0.5 * dt * k2);
    const RealVector k4 = g1 * (r + dt * k3);
    r += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const bool last = step + 2 == nodes.size();
    if ((step + 1) % stride == 0 || last) {
      BlochState s{r0.site_dims, RealVector(n + 1)};
      s.r(0) = 1.0;
      s.r.tail(n) = r;
      out.times.push_back(nodes[step + 1]);
      out.states.push_back(std::move(s));
    }
  }
  return out;
}

namespace {

Matrix checked_transformed_hamiltonian(const ChainSpec& c) {
  const auto f = common_consistent_field(c);
  if (!f) throw InvalidArgument("resonance propagation needs a common consistent field");
  if (f->detuning() != 0.0 && f->k != 0.0)
    throw InvalidArgument(
        "off-resonance consistent field with k != 0 has no constant-coefficient reduction");
  return transformed_hamiltonian(c, 0.0);
}

}  // namespace

ResonancePropagator::ResonancePropagator(const ChainSpec& c)
    : spec_(c), h_tilde_(checked_transformed_hamiltonian(c)), propagator_(h_tilde_) {}

DensityMatrix ResonancePropagator::evolve(const DensityMatrix& rho0, double t) const {
  if (rho0.site_dims() != spec_.site_dims())
    throw InvalidArgument("state dimensions do not match the chain");
  // rho = a^-1 r a with r(t) = exp(-i H~ t) rho0 exp(i H~ t); a is unitary.
  const Matrix a = chain_gauge_matrix(spec_, t);
  Matrix rho = a.adjoint() * propagator_.conjugate(rho0.data(), t) * a;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::unchecked(std::move(rho), rho0.site_dims());
}

StateVector ResonancePropagator::evolve(const StateVector& psi0, double t) const {
  if (static_cast<std::size_t>(psi0.size()) != spec_.dim())
    throw InvalidArgument("state dimension does not match the chain");
  const Matrix a = chain_gauge_matrix(spec_, t);
  return a.diagonal().conjugate().cwiseProduct(propagator_.apply(psi0, t));
}

DensityMatrix resonance_propagate(const DensityMatrix& rho0, const ChainSpec& c, double t) {
  return ResonancePropagator(c).evolve(rho0, t);
}

StateVector maximally_entangled_vector(int d, std::size_t n_sites) {
  if (d < 3 || d > 5) throw InvalidArgument("maximally entangled state supports d = 3, 4, 5");
  if (n_sites < 2) throw InvalidArgument("maximally entangled state needs N >= 2");
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n_sites; ++i) dim *= static_cast<std::size_t>(d);
  if (dim > kMaxChainDim) throw DimensionError("maximally entangled state exceeds size limit");
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(dim));
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    std::size_t idx = 0;
    for (std::size_t s = 0; s < n_sites; ++s) idx = idx * d + static_cast<std::size_t>(i);
    psi(static_cast<Eigen::Index>(idx)) = amp;
  }
  return psi;
}

DensityMatrix maximally_entangled_state(int d, std::size_t n_sites) {
  return DensityMatrix::from_pure(maximally_entangled_vector(d, n_sites),
                                  std::vector<int>(n_sites, d));
}

}  // namespace quditchain
