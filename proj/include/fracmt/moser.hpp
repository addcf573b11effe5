#pragma once

#include <cmath>

#include "fracmt/grid_function.hpp"
#include "fracmt/params.hpp"

namespace fracmt {

// ============================================================
// The truncated-logarithm concentration family
//   u_eps(x) = L^{1-s}          for |x| <= eps
//            = |log|x|| / L^s   for eps < |x| < 1
//            = 0                for |x| >= 1
// with L = log(1/eps).  Even, non-increasing in |x|, continuous.
// ============================================================

struct MoserFunction {
  Params params;
  double eps;

  MoserFunction(const Params& prm, double e) : params(prm), eps(e) {
    if (!(e > 0.0) || !(e < 1.0))
      throw input_error("Moser eps must lie strictly inside (0,1)");
  }

  // log(1/eps), the family's single scale.
  double big_l() const { return -std::log(eps); }

  // Plateau height L^{1-s}.
  double peak() const { return std::pow(big_l(), 1.0 - params.s()); }
};

double moser_eval(const MoserFunction& f, double x);

// Sample on the symmetric log-spaced ladder (see log_spaced_nodes); the
// resulting GridFunction is conforming (exact zeros at +-1).
GridFunction sample_moser(const MoserFunction& f, int per_decade = 64);

}  // namespace fracmt
