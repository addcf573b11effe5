#pragma once

#include <cmath>

namespace fracmt {

// |d|^p with fast paths for the small integer exponents that the critical
// pairing p = 1/s hits most often (s = 1/2, 1/3, 1/4).  Hot inner loops of
// the pairwise quadratures go through this.
class PowAbs {
 public:
  explicit PowAbs(double p) : p_(p) {
    if (p == 2.0)
      k_ = 2;
    else if (p == 3.0)
      k_ = 3;
    else if (p == 4.0)
      k_ = 4;
    else
      k_ = 0;
  }

  double operator()(double d) const {
    const double a = std::fabs(d);
    switch (k_) {
      case 2:
        return a * a;
      case 3:
        return a * a * a;
      case 4: {
        const double q = a * a;
        return q * q;
      }
      default:
        return std::pow(a, p_);
    }
  }

  double exponent() const { return p_; }

 private:
  double p_;
  int k_;
};

}  // namespace fracmt
