#include "quditchain/measures.hpp"

#include <cmath>
#include <mutex>

#include "quditchain/linalg.hpp"

namespace quditchain {

namespace {

constexpr double kNegativeThreshold = -1e-12;

void require_two_sites(const DensityMatrix& rho, const char* what) {
  if (rho.sites() != 2) throw InvalidArgument(std::string(what) + " needs a two-site state");
}

double entropy_of(const RealVector& eigenvalues, double base) {
  double s = 0.0;
  for (double l : eigenvalues)
    if (l > 0.0) s -= l * std::log(l);
  return s / std::log(base);
}

double correlation_sum(const DensityMatrix& rho, const OperatorBasis& b) {
  const BlochState r = bloch_from_rho(rho, b);
  const auto n = static_cast<Eigen::Index>(b.size());
  double sum = 0.0;
  for (Eigen::Index i = 1; i < n; ++i)
    for (Eigen::Index j = 1; j < n; ++j) {
      const double c = r.r(i * n + j) - r.r(i * n) * r.r(j);
      sum += c * c;
    }
  return sum;
}

const OperatorBasis& cached_basis(int d) {
  static std::mutex mu;
  static std::map<int, OperatorBasis> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, hermitian_basis(SpinQuantum::from_dim(d))).first;
  return it->second;
}

}  // namespace

double negativity(const DensityMatrix& rho) {
  require_two_sites(rho, "negativity");
  const RealVector ev = hermitian_eigenvalues(partial_transpose(rho, 0));
  double sum = 0.0;
  for (double e : ev)
    if (e < kNegativeThreshold) sum -= e;
  return sum;
}

double schlienz_mahler_calibration(int d) {
  static std::mutex mu;
  static std::map<int, double> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  const OperatorBasis& b = cached_basis(d);
  const double raw = correlation_sum(maximally_entangled_state(d, 2), b);
  const double kappa = static_cast<double>(d * d - 1) / raw;
  cache.emplace(d, kappa);
  return kappa;
}

double schlienz_mahler(const DensityMatrix& rho, const OperatorBasis& b) {
  require_two_sites(rho, "schlienz_mahler");
  const int d = b.dim();
  if (rho.site_dims()[0] != d || rho.site_dims()[1] != d)
    throw InvalidArgument("schlienz_mahler: site dimensions differ from the basis");
  const double kappa = schlienz_mahler_calibration(d);
  return std::sqrt(kappa * correlation_sum(rho, b) / static_cast<double>(d * d - 1));
}

double schlienz_mahler(const DensityMatrix& rho) {
  require_two_sites(rho, "schlienz_mahler");
  return schlienz_mahler(rho, cached_basis(rho.site_dims()[0]));
}

double von_neumann_entropy(const DensityMatrix& rho, double base) {
  return entropy_of(hermitian_eigenvalues(rho.data()), base);
}

double mean_entropy(const DensityMatrix& rho) {
  double total = 0.0;
  for (std::size_t i = 0; i < rho.sites(); ++i)
    total += von_neumann_entropy(partial_trace(rho, i), rho.site_dims()[i]);
  return total / static_cast<double>(rho.sites());
}

double mean_entropy(const StateVector& psi, const std::vector<int>& site_dims) {
  double total = 0.0;
  for (std::size_t i = 0; i < site_dims.size(); ++i)
    total += von_neumann_entropy(partial_trace(psi, site_dims, i), site_dims[i]);
  return total / static_cast<double>(site_dims.size());
}

namespace {

double i_concurrence_of(const DensityMatrix& reduced) {
  const double d = static_cast<double>(reduced.dim());
  const double p = reduced.purity();
  return std::sqrt(d / (d - 1.0)) * std::sqrt(std::max(0.0, 1.0 - p));
}

}  // namespace

double i_concurrence(const DensityMatrix& rho) {
  require_two_sites(rho, "i_concurrence");
  return i_concurrence_of(partial_trace(rho, 0));
}

double i_concurrence(const StateVector& psi, const std::vector<int>& site_dims) {
  if (site_dims.size() != 2) throw InvalidArgument("i_concurrence needs a two-site state");
  return i_concurrence_of(partial_trace(psi, site_dims, 0));
}

std::vector<double> state_distance(const Trajectory& traj) {
  if (traj.states.empty()) throw InvalidArgument("state_distance: empty trajectory");
  std::vector<double> out;
  out.reserve(traj.states.size());
  const Matrix& first = traj.states.front().data();
  for (const DensityMatrix& s : traj.states) out.push_back(frobenius_distance(s.data(), first));
  return out;
}

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::Negativity:
      return "m_VW";
    case Measure::SchlienzMahler:
      return "m_SM";
    case Measure::MeanEntropy:
      return "eta_N";
    case Measure::IConcurrence:
      return "m_I";
    case Measure::Distance:
      return "dist";
  }
  throw InvalidArgument("unknown measure");
}

Measure measure_from_name(const std::string& name) {
  for (Measure m : {Measure::Negativity, Measure::SchlienzMahler, Measure::MeanEntropy,
                    Measure::IConcurrence, Measure::Distance})
    if (measure_name(m) == name) return m;
  throw InvalidArgument("unknown measure name '" + name + "'");
}

void MeasureSeries::validate() const {
  for (const auto& [name, values] : columns) {
    if (values.size() != times.size())
      throw NumericQualityError("measure column " + name + " has the wrong length");
    for (double v : values) {
      if (!std::isfinite(v)) throw NumericQualityError("measure " + name + " is not finite");
      if (v < -1e-9) throw NumericQualityError("measure " + name + " is negative");
      // Negativity is bounded by (d-1)/2, not 1.
      if (name != "dist" && name != "m_VW" && v > 1.0 + 1e-9)
        throw NumericQualityError("measure " + name + " exceeds 1");
    }
  }
}

MeasureSeries measure_series(const Trajectory& traj, const std::vector<Measure>& which) {
  MeasureSeries out;
  out.times = traj.times;
  for (Measure m : which) {
    std::vector<double> col;
    col.reserve(traj.states.size());
    if (m == Measure::Distance) {
      col = state_distance(traj);
    } else {
      for (const DensityMatrix& s : traj.states) {
        switch (m) {
          case Measure::Negativity:
            col.push_back(negativity(s));
            break;
          case Measure::SchlienzMahler:
            col.push_back(schlienz_mahler(s));
            break;
          case Measure::MeanEntropy:
            col.push_back(mean_entropy(s));
            break;
          case Measure::IConcurrence:
            col.push_back(i_concurrence(s));
            break;
          case Measure::Distance:
            break;
        }
      }
    }
    out.columns.emplace(measure_name(m), std::move(col));
  }
  return out;
}

}  // namespace quditchain
