#include "fracmt/mt_functional.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fracmt/errors.hpp"
#include "fracmt/norms.hpp"
#include "fracmt/parallel.hpp"
#include "fracmt/power.hpp"
#include "fracmt/seminorm.hpp"

namespace fracmt {
namespace {

long long series_cutoff(double p) {
  const long long n = static_cast<long long>(std::ceil(p - 2.0));
  return std::max<long long>(0, n);
}

// sum_{k >= N+1} t^k / k!  (N = -1 gives the full exponential).  The series
// route avoids the e^t - partial cancellation; the direct route is used only
// when the tail carries nearly all of e^t.
double exp_tail(double t, long long N) {
  if (N < 0) return std::exp(t);
  if (t == 0.0) return 0.0;
  if (t < static_cast<double>(N) + 20.0) {
    double term = 1.0;
    for (long long k = 1; k <= N + 1; ++k) term *= t / static_cast<double>(k);
    double acc = term;
    for (long long k = N + 2; k <= N + 800; ++k) {
      term *= t / static_cast<double>(k);
      acc += term;
      if (term <= acc * 1e-18) break;
    }
    return acc;
  }
  double partial = 1.0, term = 1.0;
  for (long long k = 1; k <= N; ++k) {
    term *= t / static_cast<double>(k);
    partial += term;
  }
  return std::exp(t) - partial;
}

void validate_exponent(double p) {
  if (!std::isfinite(p) || !(p > 0.0) || p > 600.0)
    throw input_error("exponent p out of supported range (0, 600]");
}

double apply_weight(const MTConfig& config, double t) {
  return config.weight ? config.weight(t) : 1.0;
}

double grid_norm_root(const GridFunction& u, const MTConfig& config,
                      const QuadratureSpec& spec) {
  if (config.normalization == MTNormalization::none) return 1.0;
  const double p = config.params.p();
  double mass = gagliardo_p_pl(u, config.params, spec).value;
  if (config.normalization == MTNormalization::full_norm)
    mass += lp_norm_p(u, p);
  if (!(mass > 0.0))
    throw input_error("normalization requires a nonzero norm");
  return std::pow(mass, 1.0 / p);
}

double moser_norm_root(const MoserFunction& u, const MTConfig& config,
                       const QuadratureSpec& spec) {
  if (config.normalization == MTNormalization::none) return 1.0;
  const double p = u.params.p();
  double mass = moser_decomposition(u.eps, u.params, spec).total;
  if (config.normalization == MTNormalization::full_norm)
    mass += lp_norm_p(u, spec);
  return std::pow(mass, 1.0 / p);  // always positive for the Moser family
}

}  // namespace

// ============================================================
// Truncated exponential
// ============================================================

double truncated_exp(double t, double p) {
  if (!(t >= 0.0)) throw input_error("truncated_exp requires t >= 0");
  validate_exponent(p);
  return exp_tail(t, series_cutoff(p));
}

double truncated_exp_deriv(double t, double p) {
  if (!(t >= 0.0)) throw input_error("truncated_exp_deriv requires t >= 0");
  validate_exponent(p);
  return exp_tail(t, series_cutoff(p) - 1);
}

long long phi_floor_threshold(double p) {
  validate_exponent(p);
  const long long N = series_cutoff(p);
  for (long long m = 1; m <= 100000; ++m) {
    const double t = static_cast<double>(m);
    double partial = 1.0, term = 1.0;
    for (long long k = 1; k <= N; ++k) {
      term *= t / static_cast<double>(k);
      partial += term;
    }
    if (partial <= 0.5 * std::exp(t)) return m;
  }
  throw input_error("phi_floor_threshold found no bound below 1e5");
}

// ============================================================
// Functional on grid functions
// ============================================================

double mt_integral(const GridFunction& u, const MTConfig& config,
                   const Domain& domain, const QuadratureSpec& spec) {
  validate_spec(spec);
  if (!(config.alpha >= 0.0)) throw input_error("alpha must be >= 0");
  const double p = config.params.p();
  const double pp = 1.0 / (1.0 - config.params.s());
  const bool is_exp = config.variant == MTVariant::exp_interval;
  const double root = grid_norm_root(u, config, spec);

  const double sl = u.nodes().front();
  const double sr = u.nodes().back();
  double a = sl, b = sr;
  if (domain) {
    a = domain->first;
    b = domain->second;
    if (!(a < b)) throw input_error("domain must satisfy lo < hi");
    if (is_exp && (!std::isfinite(a) || !std::isfinite(b)))
      throw input_error("exp_interval requires a bounded domain");
  }

  double value = 0.0;
  const double lo = std::max(a, sl);
  const double hi = std::min(b, sr);
  if (lo < hi) {
    auto f = [&](double x) {
      const double t = std::fabs(u(x)) / root;
      const double g = is_exp ? std::exp(config.alpha * std::pow(t, pp))
                              : truncated_exp(config.alpha * std::pow(t, pp), p);
      return apply_weight(config, t) * g;
    };
    std::vector<double> bps{lo};
    for (double x : u.nodes())
      if (x > lo && x < hi) bps.push_back(x);
    bps.push_back(hi);
    value += integrate(f, bps, spec).value;
  }
  if (is_exp) {
    // Outside the support u = 0, so the integrand is weight(0) * e^0.
    const double outside = (b - a) - std::max(0.0, hi - lo);
    if (outside > 0.0) value += outside * apply_weight(config, 0.0);
  }
  return value;
}

// ============================================================
// Functional on exact Moser functions
// ============================================================

double mt_integral(const MoserFunction& u, const MTConfig& config,
                   const Domain& domain, const QuadratureSpec& spec) {
  validate_spec(spec);
  if (!(config.alpha >= 0.0)) throw input_error("alpha must be >= 0");
  const double p = u.params.p();
  const double s = u.params.s();
  const double pp = 1.0 / (1.0 - s);
  const bool is_exp = config.variant == MTVariant::exp_interval;
  const double L = u.big_l();

  double r = 1.0;      // integration radius inside the support
  double outer = 0.0;  // domain length beyond the support (exp only)
  if (domain) {
    const double a = domain->first, b = domain->second;
    if (!(b > 0.0) || a != -b)
      throw input_error("Moser mt_integral supports symmetric domains (-r, r)");
    if (is_exp && !std::isfinite(b))
      throw input_error("exp_interval requires a bounded domain");
    r = std::min(b, 1.0);
    if (is_exp && b > 1.0) outer = 2.0 * (b - 1.0);
  }

  const double root = moser_norm_root(u, config, spec);
  auto g_of = [&](double t) {
    return is_exp ? std::exp(t) : truncated_exp(t, p);
  };

  const double vpeak = u.peak() / root;
  double value = 2.0 * std::min(r, u.eps) * apply_weight(config, vpeak) *
                 g_of(config.alpha * std::pow(vpeak, pp));
  if (r > u.eps) {
    // Logarithmic branch via t = log(1/x): u/N = t / (L^s N), dx = -e^{-t} dt.
    const double ls = std::pow(L, s);
    auto f = [&](double t) {
      const double v = t / (ls * root);
      return apply_weight(config, v) * g_of(config.alpha * std::pow(v, pp)) *
             std::exp(-t);
    };
    const double tmin = -std::log(r);
    const std::vector<double> bps{tmin, tmin + 0.5 * (L - tmin),
                                  tmin + 0.875 * (L - tmin), L};
    value += 2.0 * integrate(f, bps, spec).value;
  }
  if (outer > 0.0) value += outer * apply_weight(config, 0.0);
  return value;
}

// ============================================================
// Sharpness scan
// ============================================================

ScanReport sharpness_scan(const MTConfig& config,
                          const std::vector<double>& eps_grid,
                          const QuadratureSpec& spec) {
  validate_spec(spec);
  if (eps_grid.empty())
    throw input_error("sharpness_scan needs at least one eps");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0) || !(eps_grid[i] < 0.5))
      throw input_error("sharpness_scan eps values must lie in (0, 0.5)");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
      throw input_error("sharpness_scan eps grid must be strictly decreasing");
  }

  struct RowVals {
    double full = 0.0, core = 0.0;
  };
  std::function<RowVals(std::size_t)> worker = [&](std::size_t k) {
    const MoserFunction mf(config.params, eps_grid[k]);
    RowVals rv;
    rv.full = mt_integral(mf, config, Domain{}, spec);
    rv.core = mt_integral(
        mf, config, Domain{std::pair<double, double>{-eps_grid[k], eps_grid[k]}},
        spec);
    return rv;
  };
  const std::vector<RowVals> vals =
      parallel_map<RowVals>(eps_grid.size(), worker);

  ScanReport scan;
  bool increasing = true;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    scan.max_full = std::max(scan.max_full, vals[k].full);
    if (k > 0 && !(vals[k].full > vals[k - 1].full)) increasing = false;
  }
  if (scan.max_full > 1e3)
    scan.classification = "divergent";
  else if (increasing && vals.size() > 1)
    scan.classification = "increasing";
  else
    scan.classification = "bounded";

  scan.table.columns = {"eps", "alpha", "value_full", "value_core",
                        "classification"};
  for (std::size_t k = 0; k < vals.size(); ++k)
    scan.table.add_row({eps_grid[k], config.alpha, vals[k].full, vals[k].core,
                        scan.classification});
  return scan;
}

// ============================================================
// Truncation split and concentration function
// ============================================================

namespace {

double ruf_threshold(double s) { return std::exp2((2.0 * s - 1.0) / (1.0 - s)); }

}  // namespace

RufSplit ruf_split(const GridFunction& u, double r0, const Params& params) {
  const double s = params.s();
  const double p = params.p();
  const double threshold = ruf_threshold(s);
  if (!std::isfinite(r0) || !(r0 > threshold))
    throw input_error("r0 must exceed 2^{(2s-1)/(1-s)}");
  require_even_nonincreasing(u);

  const double c = u(r0);
  std::vector<double> nodes{-r0}, vals{0.0};
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.node(i) > -r0 && u.node(i) < r0) {
      nodes.push_back(u.node(i));
      vals.push_back(u.value(i) - c);
    }
  }
  nodes.push_back(r0);
  vals.push_back(0.0);

  const double tau = threshold / (p * r0 * (1.0 - s));
  const double sigma = (1.0 - s) / s;
  const double mass = lp_norm_p(u, p);
  const double scale = std::pow(1.0 + tau * mass, 1.0 - s);

  std::vector<double> wvals(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) wvals[i] = vals[i] * scale;

  GridFunction v(nodes, std::move(vals));
  GridFunction w(std::move(nodes), std::move(wvals));
  return RufSplit{r0, std::move(v), std::move(w), tau, sigma, scale};
}

ConcentrationReport concentration_fn_check(double s, double r0,
                                           const std::vector<double>& t_samples) {
  const Params params(s);
  const double p = params.p();
  const double threshold = ruf_threshold(s);
  if (!std::isfinite(r0) || !(r0 > threshold))
    throw input_error("r0 must exceed 2^{(2s-1)/(1-s)}");

  ConcentrationReport rep;
  rep.tau = threshold / (p * r0 * (1.0 - s));
  rep.sigma = (1.0 - s) / s;
  rep.t2 = (rep.tau * rep.sigma - 1.0) / (rep.tau * (rep.sigma + 1.0));
  rep.samples = static_cast<long long>(t_samples.size());
  for (double t : t_samples) {
    if (!(t > 0.0) || !(t < 1.0))
      throw input_error("concentration samples must lie in (0, 1)");
    const double f = (1.0 - t) * std::pow(1.0 + rep.tau * t, rep.sigma);
    rep.max_f = std::max(rep.max_f, f);
  }
  rep.ok = rep.t2 < 0.0 && rep.max_f < 1.0;
  return rep;
}

// ============================================================
// Extremal search
// ============================================================

namespace {

// Constraint-norm evaluator for uniform-grid iterates.  For p = 2 the
// seminorm is a quadratic form in the node values whose hat-basis
// coefficients depend only on the node distance (the kernel |x-y|^{-2} dx dy
// is translation and dilation invariant), so the form is assembled once on a
// unit lattice and each evaluation is a cheap Toeplitz contraction.  Other
// exponents fall back to full quadrature per evaluation.
class ConstraintEval {
 public:
  ConstraintEval(std::vector<double> nodes, const MTConfig& config,
                 const QuadratureSpec& spec)
      : nodes_(std::move(nodes)),
        params_(config.params),
        full_(config.normalization == MTNormalization::full_norm),
        spec_(spec),
        h_(nodes_[1] - nodes_[0]) {
    if (params_.p() != 2.0) return;
    QuadratureSpec tight = spec_;
    tight.rel_tol = std::min(spec_.rel_tol, 1e-11);
    tight.abs_tol = std::min(spec_.abs_tol, 1e-14);
    const std::size_t n = nodes_.size() - 1;
    coef_.assign(n, 0.0);
    const GridFunction hat({-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
    coef_[0] = gagliardo_p_pl(hat, params_, tight).value;
    if (n >= 2) {
      const GridFunction duo({-1.0, 0.0, 1.0, 2.0}, {0.0, 1.0, 1.0, 0.0});
      const double e2 = gagliardo_p_pl(duo, params_, tight).value;
      coef_[1] = 0.5 * (e2 - 2.0 * coef_[0]);
    }
    if (n >= 3) {
      // Distance 2 by polarization as well: the naive rectangle touches the
      // diagonal at a corner and refines without end there.  The comb
      // 0,1,0,1,0 expands to 2 T_0 + 2 T_2.
      const GridFunction comb({-1.0, 0.0, 1.0, 2.0, 3.0},
                              {0.0, 1.0, 0.0, 1.0, 0.0});
      const double e3 = gagliardo_p_pl(comb, params_, tight).value;
      coef_[2] = 0.5 * (e3 - 2.0 * coef_[0]);
    }
    for (std::size_t d = 3; d < n; ++d) {
      const double dd = static_cast<double>(d);
      auto f = [dd](double x, double y) {
        const double hx = 1.0 - std::fabs(x);
        const double hy = 1.0 - std::fabs(y - dd);
        const double diff = y - x;
        return hx * hy / (diff * diff);
      };
      coef_[d] =
          -2.0 * integrate_rect(f, -1.0, 1.0, dd - 1.0, dd + 1.0, tight).value;
    }
  }

  double root(const std::vector<double>& v) const {
    const double p = params_.p();
    double mass;
    if (!coef_.empty()) {
      const std::size_t n = v.size() - 1;
      double diag = 0.0;
      for (std::size_t i = 1; i < n; ++i) diag += v[i] * v[i];
      mass = coef_[0] * diag;
      for (std::size_t d = 1; d + 1 < n; ++d) {
        double cross = 0.0;
        for (std::size_t i = 1; i + d < n; ++i) cross += v[i] * v[i + d];
        mass += 2.0 * coef_[d] * cross;
      }
      if (full_) {
        double adj = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) adj += v[i] * v[i + 1];
        mass += h_ / 3.0 * (2.0 * diag + adj);
      }
    } else {
      const GridFunction gf(nodes_, v);
      mass = gagliardo_p_pl(gf, params_, spec_).value;
      if (full_) mass += lp_norm_p(gf, p);
    }
    return std::pow(mass, 1.0 / p);
  }

 private:
  std::vector<double> nodes_;
  Params params_;
  bool full_ = false;
  QuadratureSpec spec_;
  double h_ = 0.0;
  std::vector<double> coef_;  // hat-pair form coefficients by node distance
};

}  // namespace

ExtremalResult extremal_search(const MTConfig& config, int n_cells,
                               int max_iters, unsigned long long seed,
                               const QuadratureSpec& spec) {
  validate_spec(spec);
  if (!(config.alpha >= 0.0)) throw input_error("alpha must be >= 0");
  if (n_cells < 2) throw input_error("extremal_search needs n_cells >= 2");
  if (max_iters < 0) throw input_error("max_iters must be >= 0");
  if (config.normalization == MTNormalization::none)
    throw input_error("extremal_search needs a seminorm or full_norm constraint");
  if (config.weight)
    throw input_error("extremal_search supports only unweighted objectives");

  const double p = config.params.p();
  const double s = config.params.s();
  const double pp = 1.0 / (1.0 - s);
  const double alpha = config.alpha;
  const bool is_exp = config.variant == MTVariant::exp_interval;
  const std::size_t n = static_cast<std::size_t>(n_cells);

  std::vector<double> nodes(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    nodes[i] = (2.0 * static_cast<double>(i) - static_cast<double>(n)) /
               static_cast<double>(n);
  const double half = 1.0 / static_cast<double>(n);  // half cell width

  const auto& gn = gauss9_nodes();
  const auto& gw = gauss9_weights();

  auto g_of = [&](double t) {
    return is_exp ? std::exp(t) : truncated_exp(t, p);
  };
  auto dg_of = [&](double t) {
    return is_exp ? std::exp(t) : truncated_exp_deriv(t, p);
  };

  auto objective = [&](const std::vector<double>& v) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < gn.size(); ++j) {
        const double t = 0.5 * (gn[j] + 1.0);
        const double uval = v[k] + (v[k + 1] - v[k]) * t;
        acc += gw[j] * half * g_of(alpha * std::pow(std::fabs(uval), pp));
      }
    }
    return acc;
  };
  auto gradient = [&](const std::vector<double>& v, std::vector<double>& g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < gn.size(); ++j) {
        const double t = 0.5 * (gn[j] + 1.0);
        const double uval = v[k] + (v[k + 1] - v[k]) * t;
        const double a = std::fabs(uval);
        if (a == 0.0) continue;  // subgradient 0 at the cusp
        const double common = gw[j] * half * dg_of(alpha * std::pow(a, pp)) *
                              alpha * pp * std::pow(a, pp - 1.0) *
                              (uval > 0.0 ? 1.0 : -1.0);
        g[k] += common * (1.0 - t);
        g[k + 1] += common * t;
      }
    }
    g.front() = 0.0;  // boundary values stay pinned at zero
    g.back() = 0.0;
  };
  const ConstraintEval constraint(nodes, config, spec);
  // Projects onto the unit constraint ball (rescale by max(1, norm)) and
  // returns the re-measured post-projection norm.
  auto project = [&](std::vector<double>& w) {
    double r = constraint.root(w);
    if (r > 1.0) {
      for (double& x : w) x /= r;
      r = constraint.root(w);
    }
    return r;
  };

  std::mt19937_64 rng(seed);
  auto unif = [&] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  std::vector<double> v(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) v[i] = unif();

  double cnorm = project(v);
  double obj = objective(v);

  ExtremalResult res{GridFunction(nodes, v), obj, Report{}, false};
  res.trace.columns = {"iter", "objective", "constraint_norm", "step"};
  res.trace.add_row({static_cast<long long>(0), obj, cnorm, 0.0});

  std::vector<double> grad(n + 1, 0.0), trial(n + 1, 0.0);
  double step = 0.1;
  int iter = 1;
  for (; iter <= max_iters; ++iter) {
    gradient(v, grad);
    double gmax = 0.0;
    for (double g : grad) gmax = std::max(gmax, std::fabs(g));
    if (gmax == 0.0) {
      res.converged = true;
      break;
    }
    bool accepted = false;
    while (step >= 1e-16) {
      for (std::size_t i = 0; i <= n; ++i) trial[i] = v[i] + step * grad[i];
      const double troot = project(trial);
      const double tobj = objective(trial);
      if (tobj >= obj) {
        v = trial;
        obj = tobj;
        cnorm = troot;
        res.trace.add_row({static_cast<long long>(iter), obj, cnorm, step});
        step = std::min(step * 2.0, 1e6);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      res.converged = true;  // no ascent direction left at the smallest step
      break;
    }
  }

  res.best = GridFunction(nodes, v);
  res.objective = obj;
  return res;
}

std::function<double(double)> builtin_weight(const std::string& name) {
  if (name == "log1p") return [](double t) { return std::log1p(t); };
  if (name == "pow4") return [](double t) { return std::pow(t, 0.25); };
  if (name == "cap") return [](double t) { return std::min(t, 100.0); };
  throw input_error("unknown weight: " + name);
}

}  // namespace fracmt
