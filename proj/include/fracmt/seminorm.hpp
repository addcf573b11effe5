#pragma once

#include <functional>
#include <vector>

#include "fracmt/grid_function.hpp"
#include "fracmt/moser.hpp"
#include "fracmt/params.hpp"
#include "fracmt/quadrature.hpp"
#include "fracmt/report.hpp"

namespace fracmt {

// ============================================================
// Gagliardo seminorm powers at the critical pair (kernel
// |x-y|^{-2}):
//   [u]^p = iint |u(x)-u(y)|^p / (x-y)^2 dx dy.
// Three routes: exact-cellwise for piecewise-linear inputs, the
// radial quadrant formula for even evaluables, and the
// four-part reduction for the Moser family.
// ============================================================

struct SeminormResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long long panels = 0;
};

// Piecewise-linear route.  Same-cell mass in closed form
// 2|m|^p h^p/(p(p-1)); the touching-cell corner square by an exact dyadic
// self-similarity identity (the corner integrand is homogeneous of degree
// p-2); everything else adaptive tensor-Gauss on smooth rectangles; the
// exterior tails have closed inner integrals (1/dist).  Cell pairs evaluate
// in parallel into slot-indexed storage; reduction is a fixed pairwise tree,
// so results do not depend on the worker count.
// Requires conforming u (zero boundary values).
SeminormResult gagliardo_p_pl(const GridFunction& u, const Params& params,
                              const QuadratureSpec& spec = {});

// Radial route (even u):  [u]^p = 4 int_0^inf int_0^inf
// |u(x)-u(y)|^p (x^2+y^2)/(x^2-y^2)^2 dx dy, integrated over
// (0, support_radius)^2 with the exact outer tail
// |u(x)|^p * S/(S^2-x^2) (antiderivative -y/(y^2-x^2)).  `hints` lists
// radii where u changes character (kinks); they become outer breakpoints.
// Support beyond spec.domain_cut is truncated at the cut.
SeminormResult gagliardo_p_radial(const std::function<double(double)>& u,
                                  double support_radius, const Params& params,
                                  const QuadratureSpec& spec = {},
                                  const std::vector<double>& hints = {});

struct DecompositionReport {
  double eps = 0.0;
  double i1 = 0.0, i2 = 0.0, i3 = 0.0, i4 = 0.0;
  double total = 0.0;
  double gamma_gap = 0.0;  // total - gamma_s
  double log_rate = 0.0;   // log(1/eps) * gamma_gap
};

// Four-part split of [u_eps]^p over the regions carved by |x|, |y| vs eps
// and 1, each reduced to a benign 1D integral (L = log(1/eps)):
//   i1 = i4 = (8/L) int_0^L t^p / (2 sinh t) dt
//   i2 = (4/L) [ L^p/(p(p-1)) + int_0^L t^p (L-t) (cosh t/sinh^2 t - 1/t^2) dt ]
//   i3 = 8 L^{p-1} int_0^1 eps/(1 - eps^2 w^2) dw
//        (closed form 4 L^{p-1} log((1+eps)/(1-eps))).
// Requires eps in (0, 0.5).
DecompositionReport moser_decomposition(double eps, const Params& params,
                                        const QuadratureSpec& spec = {});

enum class NormMode { seminorm, full_norm };

// Convergence scan of the Moser family: columns eps,value,gap,log_rate with
// value = [u_eps]^p (seminorm mode) or ||u_eps||^p (full mode), gap against
// series-mode gamma_s.  eps_grid must be strictly decreasing in (0, 0.5).
Report rate_check(const std::vector<double>& eps_grid, const Params& params,
                  NormMode mode, const QuadratureSpec& spec = {});

struct TailBoundReport {
  bool ok = false;
  double worst_margin = 0.0;  // max over probes of |u(x)|^p - bound(x)
  long long violations = 0;
  long long probes = 0;
};

// Decay bound for even non-increasing u:  |u(x)|^p <= ||u||_p^p / (2|x|),
// checked at each probe with 1e-12 slack.  Probes must be nonzero; u must
// be even and non-increasing in |x| (input_error otherwise).
TailBoundReport tail_bound_check(const GridFunction& u, const Params& params,
                                 const std::vector<double>& probes);

struct EmbeddingReport {
  Report table;  // columns q,ratio
  double sup_ratio = 0.0;
};

// Empirical probe of ||u||_{L^q} <= C q^{1-s} [u]: tabulates
// ||u||_q / (q^{1-s} ([u]^p)^{1/p}) over the q grid (each q > 1) and reports
// the sup.  Zero seminorm -> input_error.
EmbeddingReport embedding_ratio(const GridFunction& u,
                                const std::vector<double>& q_grid,
                                const Params& params,
                                const QuadratureSpec& spec = {});

}  // namespace fracmt
