#pragma once

#include "fracmt/params.hpp"
#include "fracmt/quadrature.hpp"

namespace fracmt {

// ============================================================
// The two closed-form constants of the theory:
//   gamma_s    = lim [u_eps]^p = 8 Gamma(p+1) lambda(p)
//   alpha_star = gamma_s^{s/(1-s)}
// computable by series or by the equivalent singular integral
//   8p int_0^1 |log t|^{p-1} / (1 - t^2) dt.
// ============================================================

enum class GammaSMethod { series, integral };

struct ConstantsReport {
  double s = 0.0;
  double p = 0.0;
  double gamma_s = 0.0;
  double alpha_star = 0.0;
  GammaSMethod method = GammaSMethod::series;
  double est_error = 0.0;
};

// gamma_s by the requested method.  Series: 8*Gamma(p+1)*lambda(p) with
// lambda tail certified to `tol`.  Integral: adaptive quadrature after the
// substitution t = e^{-r} (integrand r^{p-1}/(2 sinh r) on (0, inf)), the
// r -> 0 endpoint split off in closed form and the far tail bounded
// analytically.  est_error combines the certified pieces.
ConstantsReport gamma_s(const Params& params, GammaSMethod method,
                        const QuadratureSpec& spec = {}, double tol = 1e-12);

// gamma_s(series, tol=1e-12)^{s/(1-s)}.
double alpha_star(const Params& params, const QuadratureSpec& spec = {});

}  // namespace fracmt
