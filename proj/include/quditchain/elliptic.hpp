#pragma once

#include "quditchain/types.hpp"

namespace quditchain {

/// Elliptic modulus k (not the parameter m = k^2), 0 <= k <= 1.
class EllipticModulus {
 public:
  explicit EllipticModulus(double k);
  double k() const noexcept { return k_; }
  double m() const noexcept { return k_ * k_; }

 private:
  double k_;
};

/// Complete elliptic integral of the first kind via the AGM. Rejects k = 1.
double complete_K(EllipticModulus k);

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
  /// Jacobi amplitude am(u|k), continuous in u; sn = sin(am), cn = cos(am).
  double am;
};

/// sn, cn, dn and am evaluated together by descending Landen / AGM with the
/// backward amplitude recurrence. Closed forms at k = 0 and k = 1.
JacobiTriple jacobi_sn_cn_dn(double u, EllipticModulus k);

}  // namespace quditchain
