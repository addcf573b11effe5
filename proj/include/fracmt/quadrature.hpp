#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fracmt/errors.hpp"

namespace fracmt {

// ============================================================
// Adaptive Gauss–Legendre quadrature.
//
// 1D: order-15 panels, bisection refinement, whole-vs-halves
// error estimate.  2D: order-9 tensor panels, quadrant
// refinement.  All accumulation is in traversal order followed
// by a pairwise tree reduction, so results are deterministic.
// ============================================================

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_panels = 250000;   // per adaptive invocation
  double domain_cut = 1e3;   // truncation radius for unbounded domains
};

// Throws input_error unless all tolerances are positive and max_panels >= 16.
void validate_spec(const QuadratureSpec& spec);

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long long panels = 0;
};

// Fixed Gauss–Legendre rules on [-1,1]; nodes found by Newton iteration on
// the Legendre recurrence at startup (no transcribed tables).
const std::array<double, 15>& gauss15_nodes();
const std::array<double, 15>& gauss15_weights();
const std::array<double, 9>& gauss9_nodes();
const std::array<double, 9>& gauss9_weights();

// Single-panel order-15 estimate of \int_a^b f (no refinement).
double gauss15(const std::function<double(double)>& f, double a, double b);

// Adaptive \int_a^b f.  Throws accuracy_error (carrying the best estimate)
// when the panel budget runs out before the tolerance is met.
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadratureSpec& spec);

// Adaptive integral split at the given sorted breakpoints (at least two).
QuadResult integrate(const std::function<double(double)>& f,
                     const std::vector<double>& breakpoints,
                     const QuadratureSpec& spec);

// Adaptive \int_ax^bx \int_ay^by f(x,y) dy dx over a rectangle.
QuadResult integrate_rect(const std::function<double(double, double)>& f,
                          double ax, double bx, double ay, double by,
                          const QuadratureSpec& spec);

}  // namespace fracmt
