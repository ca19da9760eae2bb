#pragma once

#include <map>
#include <string>
#include <vector>

#include "quditchain/basis.hpp"
#include "quditchain/dynamics.hpp"

namespace quditchain {

/// Sum of |negative eigenvalues| of the partial transpose on site 0;
/// eigenvalues below -1e-12 count as negative.
double negativity(const DensityMatrix& rho);

/// Schlienz-Mahler correlation measure of two equal-dimension sites:
/// sqrt(kappa/(D-1) sum_ij (R_ij - R_i0 R_0j)^2), D = d^2, with kappa fixed
/// per dimension so the maximally entangled state scores exactly 1.
double schlienz_mahler(const DensityMatrix& rho, const OperatorBasis& b);
double schlienz_mahler(const DensityMatrix& rho);

/// Calibration constant kappa for single-site dimension d.
double schlienz_mahler_calibration(int d);

/// -Tr rho log_b rho with 0 log 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho, double base);

/// (1/N) sum_i S_i with log base equal to each site's dimension.
double mean_entropy(const DensityMatrix& rho);
double mean_entropy(const StateVector& psi, const std::vector<int>& site_dims);

/// sqrt(d/(d-1)) sqrt(1 - Tr rho_1^2) from the reduction to site 0.
double i_concurrence(const DensityMatrix& rho);
double i_concurrence(const StateVector& psi, const std::vector<int>& site_dims);

/// Frobenius distance of every state to the first one.
std::vector<double> state_distance(const Trajectory& traj);

enum class Measure { Negativity, SchlienzMahler, MeanEntropy, IConcurrence, Distance };

/// Column names used in CSV output: m_VW, m_SM, eta_N, m_I, dist.
std::string measure_name(Measure m);
Measure measure_from_name(const std::string& name);

struct MeasureSeries {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> columns;

  /// Normalized measures must lie in [0, 1] (1e-9 slack); dist >= 0.
  void validate() const;
};

MeasureSeries measure_series(const Trajectory& traj, const std::vector<Measure>& which);

}  // namespace quditchain
