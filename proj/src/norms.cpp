#include "fracmt/norms.hpp"

#include <cmath>

#include "fracmt/errors.hpp"
#include "fracmt/power.hpp"
#include "fracmt/seminorm.hpp"

namespace fracmt {

double lp_norm_p(const GridFunction& u, double p) {
  if (!std::isfinite(p) || !(p > 0.0))
    throw input_error("lp_norm_p requires p > 0");
  const PowAbs pw(p);
  // u is linear on each cell, so integrating |u|^p in the value variable is
  // exact: the antiderivative is v|v|^p / (p+1).
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double v0 = u.value(i), v1 = u.value(i + 1);
    const double h = u.node(i + 1) - u.node(i);
    if (v0 == v1) {
      total += pw(v0) * h;
    } else {
      const double g1 = v1 * pw(v1), g0 = v0 * pw(v0);
      total += (g1 - g0) / (v1 - v0) * h / (p + 1.0);
    }
  }
  return total;
}

double lp_norm_p(const MoserFunction& u, const QuadratureSpec& spec) {
  validate_spec(spec);
  const double p = u.params.p();
  const double L = u.big_l();
  // Plateau: 2 eps L^{(1-s)p} = 2 eps L^{p-1}.  Log branch via t = log(1/x):
  //   2 int_eps^1 (|log x| / L^s)^p dx = (2/L) int_0^L t^p e^{-t} dt
  // since s p = 1.
  const QuadResult q = integrate(
      [p](double t) { return std::pow(t, p) * std::exp(-t); }, 0.0, L, spec);
  return 2.0 * u.eps * std::pow(L, p - 1.0) + 2.0 / L * q.value;
}

double full_norm_p(const GridFunction& u, const Params& params,
                   const QuadratureSpec& spec) {
  return lp_norm_p(u, params.p()) + gagliardo_p_pl(u, params, spec).value;
}

double full_norm_p(const MoserFunction& u, const QuadratureSpec& spec) {
  return lp_norm_p(u, spec) + moser_decomposition(u.eps, u.params, spec).total;
}

}  // namespace fracmt
