#pragma once

#include <functional>

#include "fracmt/grid_function.hpp"
#include "fracmt/params.hpp"
#include "fracmt/quadrature.hpp"

namespace fracmt {

// ============================================================
// Symmetric decreasing rearrangement of the staircase profile
// carried by a uniform grid: node values are sorted by magnitude
// and replanted center-out.  Exact at the cell level; the
// piecewise-linear interpolant inherits O(h) model error, which
// downstream tolerances account for.
// ============================================================

struct RearrangedPair {
  GridFunction original;
  GridFunction rearranged;
  double lp_drift = 0.0;      // |cell-mass p-sum difference|, fp-roundoff size
  double seminorm_gap = 0.0;  // NaN until polya_szego_gap fills it
};

// Sorts |values| descending and places them about the center: odd length
// puts the largest at the middle node then alternates right, left, ...;
// even length fills the two central nodes (largest on the right) then
// alternates outward.  Nodes are re-centered at 0.  `p` only enters the
// lp_drift diagnostic.  Non-uniform grids are rejected.
RearrangedPair rearrange(const GridFunction& u, double p = 2.0);

struct EquimeasurabilityResult {
  bool ok = false;
  double lhs = 0.0;      // h * sum F(|original values|)
  double rhs = 0.0;      // h * sum F(rearranged values)
  double rel_dev = 0.0;
};

// Layer-cake invariance of cell-value sums: h * sum F(|v_i|) agrees across
// the pair for any F, up to summation-order roundoff.
EquimeasurabilityResult equimeasurability_check(
    const RearrangedPair& pair, const std::function<double(double)>& F,
    double rel_tol = 1e-10);

// gagliardo_p_pl(original) - gagliardo_p_pl(rearranged); also stored into
// pair.seminorm_gap.  Nonnegative up to combined quadrature error plus the
// piecewise-linear model error.
double polya_szego_gap(RearrangedPair& pair, const Params& params,
                       const QuadratureSpec& spec = {});

}  // namespace fracmt
