#pragma once

#include "fracmt/grid_function.hpp"
#include "fracmt/moser.hpp"
#include "fracmt/params.hpp"
#include "fracmt/quadrature.hpp"

namespace fracmt {

// ============================================================
// L^p masses (p-th powers, not roots) and the full W^{s,p}
// norm power  ||u||^p = ||u||_{L^p}^p + [u]^p.
// ============================================================

// int |u|^p dx for the piecewise-linear interpolant, exact per segment via
// the antiderivative |v|^{p+1} sgn(v) / (m (p+1)).  Requires p >= 1.
double lp_norm_p(const GridFunction& u, double p);

// Closed-form reduction for the Moser family:
//   2 eps L^{p-1} + (2/L) int_0^L t^p e^{-t} dt,   L = log(1/eps).
double lp_norm_p(const MoserFunction& u, const QuadratureSpec& spec = {});

// lp part + Gagliardo part (delegates to the seminorm evaluators).
double full_norm_p(const GridFunction& u, const Params& params,
                   const QuadratureSpec& spec = {});
double full_norm_p(const MoserFunction& u, const QuadratureSpec& spec = {});

}  // namespace fracmt
