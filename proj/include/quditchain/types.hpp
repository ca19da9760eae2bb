#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace quditchain {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Base of all library errors; the C API maps each subclass to a status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument, bad index, unsupported combination.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Hilbert-space size guard tripped.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Integrator or eigensolver quality check failed.
class NumericQualityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Missing input file or unwritable output.
class IoError : public Error {
 public:
  using Error::Error;
};

class CrosscheckError : public Error {
 public:
  using Error::Error;
};

/// Spin quantum number stored as 2s, so half-integer spins stay exact.
class SpinQuantum {
 public:
  explicit SpinQuantum(int twice_s) : twice_s_(twice_s) {
    if (twice_s < 1) throw InvalidArgument("spin must satisfy 2s >= 1");
  }

  static SpinQuantum from_dim(int dim) { return SpinQuantum(dim - 1); }

  int twice_s() const noexcept { return twice_s_; }
  int dim() const noexcept { return twice_s_ + 1; }
  double s() const noexcept { return 0.5 * twice_s_; }
  /// m value of basis index i, ordered s, s-1, ..., -s.
  double m(int i) const noexcept { return s() - i; }

  friend bool operator==(SpinQuantum a, SpinQuantum b) noexcept {
    return a.twice_s_ == b.twice_s_;
  }

 private:
  int twice_s_;
};

/// Product of per-site dimensions.
inline std::size_t total_dim(const std::vector<int>& site_dims) {
  std::size_t d = 1;
  for (int s : site_dims) d *= static_cast<std::size_t>(s);
  return d;
}

}  // namespace quditchain
