#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracmt/grid_function.hpp"
#include "fracmt/moser.hpp"
#include "fracmt/params.hpp"
#include "fracmt/quadrature.hpp"
#include "fracmt/report.hpp"

namespace fracmt {

// ============================================================
// Exponential-class functionals at the critical exponent
// 1/(1-s): interval variant integrates e^{alpha |u|^{1/(1-s)}},
// line variant integrates the truncated exponential Phi (the
// series with the first ceil(p-2)+1 terms removed), optionally
// weighted by f(|u|) and normalized by the seminorm or the full
// norm.
// ============================================================

enum class MTVariant { exp_interval, phi_line };
enum class MTNormalization { seminorm, full_norm, none };

struct MTConfig {
  Params params;
  double alpha = 0.0;
  MTNormalization normalization = MTNormalization::none;
  std::function<double(double)> weight;  // empty: identically 1
  MTVariant variant = MTVariant::exp_interval;
};

// Phi(t) = e^t - sum_{k=0}^{ceil(p-2)} t^k/k!, evaluated by the series
// remainder when the leading terms would cancel.  Requires t >= 0.
double truncated_exp(double t, double p);

// Phi'(t): the same tail with the cutoff lowered by one.
double truncated_exp_deriv(double t, double p);

// Smallest integer M >= 1 with Phi(M) >= e^M / 2, i.e. the removed partial
// sum at M is at most half of e^M.
long long phi_floor_threshold(double p);

// Integration window.  Empty = the support of u (for the line variant the
// integrand vanishes outside the support anyway, since Phi(0) = 0).
using Domain = std::optional<std::pair<double, double>>;

// int_domain weight(|u|/N) * G(alpha (|u|/N)^{1/(1-s)}) dx, G = exp or Phi,
// N the configured normalization root (1 when none; zero norm -> input
// error).  The exp variant needs a bounded domain and picks up
// weight(0) * (domain length outside the support); the Phi variant accepts
// unbounded domains.
double mt_integral(const GridFunction& u, const MTConfig& config,
                   const Domain& domain = {}, const QuadratureSpec& spec = {});

// Same functional on an exact Moser function: the plateau contributes in
// closed form and the logarithmic branch reduces to a 1D integral in
// t = log(1/x).  Only symmetric domains (-r, r) are supported; empty means
// the full support (-1, 1).
double mt_integral(const MoserFunction& u, const MTConfig& config,
                   const Domain& domain = {}, const QuadratureSpec& spec = {});

struct ScanReport {
  Report table;                // eps,alpha,value_full,value_core,classification
  std::string classification;  // "divergent" | "increasing" | "bounded"
  double max_full = 0.0;
};

// Evaluates the normalized Moser family along a strictly decreasing eps
// grid: full-domain and (-eps, eps) core values per row.  Classification:
// "divergent" once any full value exceeds 1e3, otherwise "increasing" when
// the full values strictly increase along the grid, otherwise "bounded".
// The 1e3 threshold is a harness constant encoding "grows without apparent
// bound" at desk scale.
ScanReport sharpness_scan(const MTConfig& config,
                          const std::vector<double>& eps_grid,
                          const QuadratureSpec& spec = {});

struct RufSplit {
  double r0 = 0.0;
  GridFunction v;  // u - u(r0) inside (-r0, r0), zero outside
  GridFunction w;  // v * scale_factor
  double tau = 0.0;
  double sigma = 0.0;         // (1-s)/s
  double scale_factor = 0.0;  // (1 + tau ||u||_p^p)^{1-s}
};

// Truncation split of an even non-increasing u at radius r0 with
// tau = 2^{(2s-1)/(1-s)} / (p r0 (1-s)); requires r0 above the 2^{(2s-1)/(1-s)}
// threshold (below it the concentration function argument fails).
RufSplit ruf_split(const GridFunction& u, double r0, const Params& params);

struct ConcentrationReport {
  double tau = 0.0;
  double sigma = 0.0;
  double t2 = 0.0;  // critical point (tau sigma - 1)/(tau (sigma + 1))
  double max_f = 0.0;
  bool ok = false;
  long long samples = 0;
};

// f(t) = (1-t)(1+tau t)^sigma must stay below 1 on (0,1) and its critical
// point t2 must be negative; checked at the given samples (each in (0,1)).
ConcentrationReport concentration_fn_check(double s, double r0,
                                           const std::vector<double>& t_samples);

struct ExtremalResult {
  GridFunction best;
  double objective = 0.0;
  Report trace;  // iter,objective,constraint_norm,step
  bool converged = false;
};

// Projected gradient ascent for sup mt_integral over the unit constraint
// ball ([u]^p <= 1 or ||u||^p <= 1 per config.normalization) on a uniform
// grid over (-1, 1).  Objective and its exact gradient use a fixed per-cell
// Gauss rule; iterates rescale by max(1, constraint norm); backtracking
// halves the step until the objective does not decrease, so the trace is
// non-decreasing.  converged = false means max_iters ran out while steps
// were still improving.  Weighted configs are rejected (the exact gradient
// covers only the unweighted objective).
ExtremalResult extremal_search(const MTConfig& config, int n_cells,
                               int max_iters, unsigned long long seed,
                               const QuadratureSpec& spec = {});

// Built-in weights: "log1p" = log(1+t), "pow4" = t^{1/4}, "cap" = min(t,100).
std::function<double(double)> builtin_weight(const std::string& name);

}  // namespace fracmt
