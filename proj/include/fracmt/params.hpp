#pragma once

#include <cmath>

#include "fracmt/errors.hpp"

namespace fracmt {

// ============================================================
// The critical pair (s, p) with s*p = 1.  p is always derived
// from s, never stored separately, so the product is exact by
// construction.
// ============================================================

class Params {
 public:
  explicit Params(double s) : s_(s) {
    if (!(s > 0.0) || !(s < 1.0))
      throw input_error("s must lie strictly inside (0,1)");
  }

  double s() const { return s_; }
  double p() const { return 1.0 / s_; }

  // sigma = (1-s)/s = p-1, the exponent of the concentration function.
  double sigma() const { return (1.0 - s_) / s_; }

 private:
  double s_;
};

inline Params make_params(double s) { return Params(s); }

}  // namespace fracmt
