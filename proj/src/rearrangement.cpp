#include "fracmt/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fracmt/norms.hpp"
#include "fracmt/power.hpp"
#include "fracmt/seminorm.hpp"

namespace fracmt {
namespace {

// Placement order: index of the slot receiving the k-th largest value.
std::vector<std::size_t> placement_order(std::size_t n) {
  std::vector<std::size_t> slots;
  slots.reserve(n);
  if (n % 2 == 1) {
    const std::size_t mid = (n - 1) / 2;
    slots.push_back(mid);
    for (std::size_t step = 1; slots.size() < n; ++step) {
      if (mid + step < n) slots.push_back(mid + step);
      if (mid >= step) slots.push_back(mid - step);
    }
  } else {
    const std::size_t right = n / 2;
    slots.push_back(right);
    for (std::size_t step = 1; slots.size() < n; ++step) {
      if (right >= step) slots.push_back(right - step);
      if (right + step < n) slots.push_back(right + step);
    }
  }
  return slots;
}

}  // namespace

RearrangedPair rearrange(const GridFunction& u, double p) {
  if (!u.uniform())
    throw input_error("rearrange requires uniform node spacing");
  if (!std::isfinite(p) || !(p > 0.0))
    throw input_error("rearrange requires p > 0");
  const std::size_t n = u.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return std::fabs(u.value(a)) > std::fabs(u.value(b));
                   });
  const std::vector<std::size_t> slots = placement_order(n);

  std::vector<double> sorted(n);
  for (std::size_t k = 0; k < n; ++k)
    sorted[slots[k]] = std::fabs(u.value(order[k]));

  const double center = 0.5 * (u.node(0) + u.node(n - 1));
  std::vector<double> nodes(n);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = u.node(i) - center;

  const double h = u.node(1) - u.node(0);
  const PowAbs pw(p);
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a += pw(u.value(i));
    b += pw(sorted[i]);
  }

  RearrangedPair pair{u, GridFunction(std::move(nodes), std::move(sorted)),
                      h * std::fabs(a - b),
                      std::numeric_limits<double>::quiet_NaN()};
  return pair;
}

EquimeasurabilityResult equimeasurability_check(
    const RearrangedPair& pair, const std::function<double(double)>& F,
    double rel_tol) {
  const GridFunction& o = pair.original;
  const GridFunction& r = pair.rearranged;
  const double h = o.node(1) - o.node(0);

  EquimeasurabilityResult res;
  for (std::size_t i = 0; i < o.size(); ++i) res.lhs += F(std::fabs(o.value(i)));
  for (std::size_t i = 0; i < r.size(); ++i) res.rhs += F(std::fabs(r.value(i)));
  res.lhs *= h;
  res.rhs *= h;
  const double scale = std::max({std::fabs(res.lhs), std::fabs(res.rhs), 1e-300});
  res.rel_dev = std::fabs(res.lhs - res.rhs) / scale;
  res.ok = res.rel_dev <= rel_tol;
  return res;
}

double polya_szego_gap(RearrangedPair& pair, const Params& params,
                       const QuadratureSpec& spec) {
  const double a = gagliardo_p_pl(pair.original, params, spec).value;
  const double b = gagliardo_p_pl(pair.rearranged, params, spec).value;
  pair.seminorm_gap = a - b;
  return pair.seminorm_gap;
}

}  // namespace fracmt
