#include "fracmt/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

#include "fracmt/constants.hpp"
#include "fracmt/errors.hpp"
#include "fracmt/norms.hpp"
#include "fracmt/parallel.hpp"
#include "fracmt/power.hpp"

namespace fracmt {
namespace {

struct PieceOut {
  double value = 0.0;
  double error = 0.0;
  long long panels = 0;
};

// Linear form of one grid cell: u(x) = va + m (x - a) on [a, b].
struct Cell {
  double a = 0.0, b = 0.0;
  double va = 0.0, vb = 0.0;
  double m = 0.0;
  bool flat_zero() const { return va == 0.0 && vb == 0.0; }
};

std::vector<Cell> make_cells(const GridFunction& u) {
  std::vector<Cell> cells(u.size() - 1);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    const double h = u.node(i + 1) - u.node(i);
    cells[i] = Cell{u.node(i), u.node(i + 1), u.value(i), u.value(i + 1),
                    (u.value(i + 1) - u.value(i)) / h};
  }
  return cells;
}

// Non-touching cell pair: the kernel is smooth on the rectangle.  Counts
// both orderings of (x, y).
PieceOut distant_pair(const Cell& ci, const Cell& cj, const PowAbs& pw,
                      const QuadratureSpec& spec) {
  auto f = [&](double x, double y) {
    const double du = (ci.va + ci.m * (x - ci.a)) - (cj.va + cj.m * (y - cj.a));
    const double d = y - x;
    return pw(du) / (d * d);
  };
  const QuadResult r = integrate_rect(f, ci.a, ci.b, cj.a, cj.b, spec);
  return {2.0 * r.value, 2.0 * r.error_estimate, r.panels};
}

// Touching cell pair sharing the node c = ci.b = cj.a.  In the corner
// variables xi = c - x, eta = y - c the integrand
//   g(xi, eta) = |mi xi + mj eta|^p / (xi + eta)^2
// is homogeneous of degree p - 2, so over the corner square [0,w]^2
//   int_square g = (int_shell g) / (1 - 2^{-p}),
// where the shell [0,w]^2 \ [0,w/2]^2 stays a distance w/2 from the
// singular corner.  The rest of the rectangle is at least w away from the
// diagonal and integrates directly.  Counts both orderings.
PieceOut touching_pair(const Cell& ci, const Cell& cj, double p,
                       const PowAbs& pw, const QuadratureSpec& spec) {
  const double c = ci.b;
  const double w = std::min(ci.b - ci.a, cj.b - cj.a);
  const double mi = ci.m, mj = cj.m;
  const double vc = ci.vb;
  PieceOut out;

  auto g = [&](double xi, double eta) {
    const double sum = xi + eta;
    return pw(mi * xi + mj * eta) / (sum * sum);
  };
  const QuadResult s1 = integrate_rect(g, 0.5 * w, w, 0.0, w, spec);
  const QuadResult s2 = integrate_rect(g, 0.0, 0.5 * w, 0.5 * w, w, spec);
  const double geo = 1.0 / (1.0 - std::pow(2.0, -p));
  out.value += geo * (s1.value + s2.value);
  out.error += geo * (s1.error_estimate + s2.error_estimate);
  out.panels += s1.panels + s2.panels;

  auto f = [&](double x, double y) {
    const double du = (vc + mi * (x - c)) - (vc + mj * (y - c));
    const double d = y - x;
    return pw(du) / (d * d);
  };
  if (ci.a < c - w) {  // ci longer: strip [ci.a, c-w] x [c, cj.b]
    const QuadResult r = integrate_rect(f, ci.a, c - w, cj.a, cj.b, spec);
    out.value += r.value;
    out.error += r.error_estimate;
    out.panels += r.panels;
  }
  if (cj.b > c + w) {  // cj longer: strip [c-w, c] x [c+w, cj.b]
    const QuadResult r = integrate_rect(f, c - w, c, c + w, cj.b, spec);
    out.value += r.value;
    out.error += r.error_estimate;
    out.panels += r.panels;
  }
  out.value *= 2.0;
  out.error *= 2.0;
  return out;
}

// Exterior mass of one cell against both half-lines outside the support:
// the inner integral over y < XL (resp. y > XR) is exactly 1/(x - XL)
// (resp. 1/(XR - x)).  For the boundary cells the remaining 1D integral is
// itself elementary: u vanishes linearly, so
//   int |m|^p (XR - x)^{p-1} h^{-p} ... dx = |v_inner|^p / p.
// Counts both orderings.
PieceOut tail_piece(const Cell& cell, bool first, bool last, double XL,
                    double XR, double p, const PowAbs& pw,
                    const QuadratureSpec& spec) {
  PieceOut out;
  if (last) {
    out.value += pw(cell.va) / p;
  } else {
    auto f = [&](double x) {
      return pw(cell.va + cell.m * (x - cell.a)) / (XR - x);
    };
    const QuadResult r = integrate(f, cell.a, cell.b, spec);
    out.value += r.value;
    out.error += r.error_estimate;
    out.panels += r.panels;
  }
  if (first) {
    out.value += pw(cell.vb) / p;
  } else {
    auto f = [&](double x) {
      return pw(cell.va + cell.m * (x - cell.a)) / (x - XL);
    };
    const QuadResult r = integrate(f, cell.a, cell.b, spec);
    out.value += r.value;
    out.error += r.error_estimate;
    out.panels += r.panels;
  }
  out.value *= 2.0;
  out.error *= 2.0;
  return out;
}

// cosh t / sinh^2 t - 1/t^2, evaluated without cancellation (series near 0)
// or overflow (asymptotic form for large t).
double cosh_sinh_defect(double t) {
  if (t < 0.01) {
    const double t2 = t * t;
    return 1.0 / 6.0 - 7.0 * t2 / 120.0 + 31.0 * t2 * t2 / 3024.0;
  }
  if (t > 30.0) {
    const double e = std::exp(-t);
    return 2.0 * e * (1.0 + 3.0 * e * e) - 1.0 / (t * t);
  }
  const double sh = std::sinh(t);
  return std::cosh(t) / (sh * sh) - 1.0 / (t * t);
}

}  // namespace

// ============================================================
// Piecewise-linear route
// ============================================================

SeminormResult gagliardo_p_pl(const GridFunction& u, const Params& params,
                              const QuadratureSpec& spec) {
  validate_spec(spec);
  if (!u.conforming())
    throw input_error("gagliardo_p_pl requires zero boundary values");
  const double p = params.p();
  const PowAbs pw(p);
  const std::vector<Cell> cells = make_cells(u);
  const std::size_t n = cells.size();
  const double XL = cells.front().a;
  const double XR = cells.back().b;

  // Same-cell mass in closed form: |u(x)-u(y)| = |m||x-y| inside a cell, and
  // int_cell^2 |x-y|^{p-2} = 2 h^p / (p (p-1)).
  double same = 0.0;
  for (const Cell& c : cells)
    same += 2.0 * pw(c.m) * pw(c.b - c.a) / (p * (p - 1.0));

  struct Item {
    std::size_t i = 0, j = 0;
    bool tail = false;
  };
  std::vector<Item> items;
  items.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(cells[i].flat_zero() && cells[j].flat_zero()))
        items.push_back({i, j, false});
  for (std::size_t i = 0; i < n; ++i)
    if (!cells[i].flat_zero()) items.push_back({i, i, true});

  std::function<PieceOut(std::size_t)> worker = [&](std::size_t k) {
    const Item& it = items[k];
    if (it.tail)
      return tail_piece(cells[it.i], it.i == 0, it.i + 1 == n, XL, XR, p, pw,
                        spec);
    if (it.j == it.i + 1) return touching_pair(cells[it.i], cells[it.j], p, pw, spec);
    return distant_pair(cells[it.i], cells[it.j], pw, spec);
  };
  const std::vector<PieceOut> pieces = parallel_map<PieceOut>(items.size(), worker);

  std::vector<double> vals;
  vals.reserve(pieces.size() + 1);
  vals.push_back(same);
  double err = 0.0;
  long long panels = 0;
  for (const PieceOut& pc : pieces) {
    vals.push_back(pc.value);
    err += pc.error;
    panels += pc.panels;
  }
  return {tree_sum(std::move(vals)), err, panels};
}

// ============================================================
// Radial route
// ============================================================

SeminormResult gagliardo_p_radial(const std::function<double(double)>& u,
                                  double support_radius, const Params& params,
                                  const QuadratureSpec& spec,
                                  const std::vector<double>& hints) {
  validate_spec(spec);
  if (!(support_radius > 0.0) || !std::isfinite(support_radius))
    throw input_error("support_radius must be positive and finite");
  const double p = params.p();
  const PowAbs pw(p);
  const double S = std::min(support_radius, spec.domain_cut);

  QuadratureSpec inner_spec = spec;
  inner_spec.rel_tol *= 0.1;
  inner_spec.abs_tol *= 0.1;

  long long inner_panels = 0;  // outer integration is single-threaded

  std::vector<double> kinks;
  for (double h : hints)
    if (std::isfinite(h) && h > 0.0 && h < S) kinks.push_back(h);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

  auto kernel = [&](double x, double y) -> double {
    const double d = x - y;
    const double scale = std::max({std::fabs(x), std::fabs(y), 1.0});
    if (std::fabs(d) <= 1e-14 * scale) return 0.0;  // measure-zero diagonal
    const double sum = x + y;
    return pw(u(x) - u(y)) * (x * x + y * y) / (d * d * sum * sum);
  };
  // The y-integrals must break at the kink radii: the outer pass places x
  // arbitrarily close to those radii, and a kink trapped next to the y = x
  // endpoint would otherwise drive the bisection into the region where
  // u(x) - u(y) is pure cancellation noise and never converges.
  auto push_bp = [](std::vector<double>& v, double t) {
    if (v.empty() || t > v.back()) v.push_back(t);
  };
  auto inner = [&](double x) -> double {
    double acc = 0.0;
    if (x > 0.0) {
      std::vector<double> lb{0.0};
      for (double k : kinks)
        if (k < x) push_bp(lb, k);
      push_bp(lb, x);
      const QuadResult l =
          integrate([&](double y) { return kernel(x, y); }, lb, inner_spec);
      inner_panels += l.panels;
      acc += l.value;
    }
    std::vector<double> rb{x};
    for (double k : kinks)
      if (k > x) push_bp(rb, k);
    push_bp(rb, S);
    if (rb.size() >= 2) {
      const QuadResult r =
          integrate([&](double y) { return kernel(x, y); }, rb, inner_spec);
      inner_panels += r.panels;
      acc += r.value;
    }
    // y beyond the support, both orderings: the inner integral of the kernel
    // is exactly S / (S^2 - x^2) (antiderivative -y / (y^2 - x^2)).
    const double ux = u(x);
    if (ux != 0.0) acc += 2.0 * pw(ux) * S / ((S - x) * (S + x));
    return acc;
  };

  std::vector<double> bps{0.0};
  for (double k : kinks) bps.push_back(k);
  bps.push_back(S);

  const QuadResult outer = integrate(inner, bps, spec);
  const double value = 4.0 * outer.value;
  // Inner passes run 10x tighter than the outer one, so their contribution
  // to the error is dominated by one |value| * rel_tol allowance.
  const double err =
      4.0 * outer.error_estimate + std::fabs(value) * spec.rel_tol;
  return {value, err, outer.panels + inner_panels};
}

// ============================================================
// Moser family: four-region split
// ============================================================

DecompositionReport moser_decomposition(double eps, const Params& params,
                                        const QuadratureSpec& spec) {
  validate_spec(spec);
  if (!(eps > 0.0) || !(eps < 0.5))
    throw input_error("moser_decomposition requires eps in (0, 0.5)");
  const double p = params.p();
  const MoserFunction mf(params, eps);
  const double L = mf.big_l();
  // sinh overflows past ~709; the discarded tail is below e^{-700}.
  const double Lcap = std::min(L, 700.0);

  std::vector<double> bps{0.0};
  for (double c : {1.0, 5.0, 20.0, 60.0})
    if (c < Lcap) bps.push_back(c);
  bps.push_back(Lcap);

  auto sinh_integrand = [p](double t) {
    return std::pow(t, p) / (2.0 * std::sinh(t));
  };
  auto defect_integrand = [p, L](double t) {
    return std::pow(t, p) * (L - t) * cosh_sinh_defect(t);
  };
  auto i3_integrand = [eps](double w) {
    return eps / (1.0 - eps * eps * w * w);
  };

  const QuadResult q1 = integrate(sinh_integrand, bps, spec);
  const QuadResult q2 = integrate(defect_integrand, bps, spec);
  const QuadResult q3 = integrate(i3_integrand, 0.0, 1.0, spec);
  const QuadResult q4 = integrate(sinh_integrand, bps, spec);

  DecompositionReport rep;
  rep.eps = eps;
  rep.i1 = 8.0 / L * q1.value;
  // The 1/t^2 part of the inner kernel integrates in closed form against
  // t^p (L - t); only the defect needs quadrature.
  rep.i2 = 4.0 / L * (std::pow(L, p) / (p * (p - 1.0)) + q2.value);
  rep.i3 = 8.0 * std::pow(L, p - 1.0) * q3.value;
  rep.i4 = 8.0 / L * q4.value;
  rep.total = rep.i1 + rep.i2 + rep.i3 + rep.i4;
  const double gamma =
      gamma_s(params, GammaSMethod::series, QuadratureSpec{}, 1e-13).gamma_s;
  rep.gamma_gap = rep.total - gamma;
  rep.log_rate = L * rep.gamma_gap;
  return rep;
}

// ============================================================
// Convergence scan
// ============================================================

Report rate_check(const std::vector<double>& eps_grid, const Params& params,
                  NormMode mode, const QuadratureSpec& spec) {
  validate_spec(spec);
  if (eps_grid.empty()) throw input_error("rate_check needs at least one eps");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0) || !(eps_grid[i] < 0.5))
      throw input_error("rate_check eps values must lie in (0, 0.5)");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
      throw input_error("rate_check eps grid must be strictly decreasing");
  }
  const double gamma =
      gamma_s(params, GammaSMethod::series, QuadratureSpec{}, 1e-13).gamma_s;

  struct Row {
    double eps = 0.0, value = 0.0, gap = 0.0, log_rate = 0.0;
  };
  std::function<Row(std::size_t)> worker = [&](std::size_t k) {
    const double eps = eps_grid[k];
    const DecompositionReport dec = moser_decomposition(eps, params, spec);
    double value = dec.total;
    if (mode == NormMode::full_norm)
      value += lp_norm_p(MoserFunction(params, eps), spec);
    Row row;
    row.eps = eps;
    row.value = value;
    row.gap = value - gamma;
    row.log_rate = -std::log(eps) * row.gap;
    return row;
  };
  const std::vector<Row> rows = parallel_map<Row>(eps_grid.size(), worker);

  Report rep;
  rep.columns = {"eps", "value", "gap", "log_rate"};
  for (const Row& r : rows)
    rep.add_row({r.eps, r.value, r.gap, r.log_rate});
  return rep;
}

// ============================================================
// Tail decay bound
// ============================================================

TailBoundReport tail_bound_check(const GridFunction& u, const Params& params,
                                 const std::vector<double>& probes) {
  require_even_nonincreasing(u);
  const double p = params.p();
  const PowAbs pw(p);
  const double mass = lp_norm_p(u, p);

  TailBoundReport rep;
  rep.ok = true;
  rep.probes = static_cast<long long>(probes.size());
  double worst = -std::numeric_limits<double>::infinity();
  for (double x : probes) {
    if (!std::isfinite(x) || x == 0.0)
      throw input_error("tail bound probes must be finite and nonzero");
    const double bound = mass / (2.0 * std::fabs(x));
    const double margin = pw(u(x)) - bound;
    worst = std::max(worst, margin);
    if (margin > 1e-12) {
      rep.ok = false;
      ++rep.violations;
    }
  }
  rep.worst_margin = probes.empty() ? 0.0 : worst;
  return rep;
}

// ============================================================
// Embedding ratio scan
// ============================================================

EmbeddingReport embedding_ratio(const GridFunction& u,
                                const std::vector<double>& q_grid,
                                const Params& params,
                                const QuadratureSpec& spec) {
  if (q_grid.empty()) throw input_error("embedding_ratio needs at least one q");
  for (double q : q_grid)
    if (!std::isfinite(q) || !(q > 1.0))
      throw input_error("embedding_ratio requires every q > 1");
  const double p = params.p();
  const SeminormResult sem = gagliardo_p_pl(u, params, spec);
  if (!(sem.value > 0.0))
    throw input_error("embedding_ratio requires a nonzero seminorm");
  const double root = std::pow(sem.value, 1.0 / p);
  const double s = params.s();

  EmbeddingReport rep;
  rep.table.columns = {"q", "ratio"};
  for (double q : q_grid) {
    const double lq = std::pow(lp_norm_p(u, q), 1.0 / q);
    const double ratio = lq / (std::pow(q, 1.0 - s) * root);
    rep.table.add_row({q, ratio});
    rep.sup_ratio = std::max(rep.sup_ratio, ratio);
  }
  return rep;
}

}  // namespace fracmt
