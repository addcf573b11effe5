#pragma once

#include "fracmt/errors.hpp"

namespace fracmt {

// ============================================================
// Special functions: Euler Gamma and the odd-denominator zeta
// series lambda(p) = sum_{k>=0} (2k+1)^{-p}.
// ============================================================

// Gamma(x) for x in (0, 171.62); relative error well below 1e-12 on (0, 50].
// Throws input_error outside the domain (x <= 0 or overflow range).
double gamma_fn(double x);

struct LambdaResult {
  double value = 0.0;
  double tail_bound = 0.0;   // certified bound on the dropped tail
  long long terms = 0;       // explicitly summed terms
  bool accelerated = false;  // Euler-Maclaurin tail in use
};

// lambda(p) with certified absolute error <= tol.  Direct descending partial
// sum when the integral-comparison bound int_K^inf (1+2t)^{-p} dt <= tol is
// reachable within ~2e6 terms; otherwise a short partial sum plus the
// Euler-Maclaurin tail (remainder bounded by the first omitted correction).
// Throws input_error for p <= 1 (series diverges) or tol <= 0.
LambdaResult dirichlet_lambda(double p, double tol);

}  // namespace fracmt
