#pragma once

#include <functional>
#include <vector>

#include "quditchain/basis.hpp"
#include "quditchain/linalg.hpp"
#include "quditchain/model.hpp"

namespace quditchain {

/// Fixed-step grid over [t0, t1], split so every breakpoint is a node.
class TimeGrid {
 public:
  TimeGrid(double t0, double t1, std::size_t n_steps, std::vector<double> breakpoints = {});

  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t1_; }
  std::size_t steps() const noexcept { return nodes_.size() - 1; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

 private:
  double t0_;
  double t1_;
  std::vector<double> breakpoints_;
  std::vector<double> nodes_;
};

/// 200 steps per shortest period among the drive frequency and the spectral
/// width of H, bounded by the exchange span plus the Zeeman spans 2 s |h| of
/// the sites (zero frequencies are ignored), at least 1 step.
std::size_t default_steps(const ChainSpec& c, double t0, double t1);

struct IntegratorOptions {
  /// Keep every stride-th step (the final node is always kept).
  std::size_t stride = 10;
  /// Purity change between consecutive steps above this is reported as a
  /// NumericQualityError.
  double purity_drift_limit = 1e-4;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  /// Largest |Tr rho - 1| seen before the per-step projection.
  double max_trace_drift = 0.0;
};

using HamiltonianFn = std::function<Matrix(double)>;

/// Classic RK4 on i d(rho)/dt = [H(t), rho]; each step is followed by
/// Hermitization and trace renormalization.
Trajectory integrate_lvn(const HamiltonianFn& h, const DensityMatrix& rho0, const TimeGrid& grid,
                         const IntegratorOptions& opts = {});

struct BlochTrajectory {
  std::vector<double> times;
  std::vector<BlochState> states;
};

/// h(t) returns the components Tr(H C_i)/c for i = 1 .. d^2-1.
using ComponentFn = std::function<RealVector(double)>;

/// RK4 on dR_l/dt = e_ijl h_i R_j for one site, with R_0 frozen at 1.
BlochTrajectory integrate_bloch(const ComponentFn& h, const BlochState& r0,
                                const StructureConstants& e, const TimeGrid& grid,
                                const IntegratorOptions& opts = {});

/// Exact evolution of a chain driven by a common consistent field, at
/// resonance (any k) or off resonance with k = 0, via one eigendecomposition
/// of the constant gauge-transformed Hamiltonian.
class ResonancePropagator {
 public:
  explicit ResonancePropagator(const ChainSpec& c);

  DensityMatrix evolve(const DensityMatrix& rho0, double t) const;
  StateVector evolve(const StateVector& psi0, double t) const;
  const Matrix& transformed_hamiltonian() const noexcept { return h_tilde_; }

 private:
  ChainSpec spec_;
  Matrix h_tilde_;
  Propagator propagator_;
};

DensityMatrix resonance_propagate(const DensityMatrix& rho0, const ChainSpec& c, double t);

/// (1/sqrt(d)) sum_i |i>^(x)N as a state vector.
StateVector maximally_entangled_vector(int d, std::size_t n_sites);
DensityMatrix maximally_entangled_state(int d, std::size_t n_sites);

}  // namespace quditchain
