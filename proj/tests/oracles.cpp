#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracles {

LambdaOracle lambda_partial_sum(double p, double tol) {
  if (!(p > 1.0) || !(tol > 0.0))
    throw std::invalid_argument("lambda_partial_sum needs p > 1, tol > 0");
  // (1+2K)^{1-p}/(2(p-1)) <= tol  fixes the term count.
  const double target = std::pow(2.0 * (p - 1.0) * tol, 1.0 / (1.0 - p));
  const long long K = static_cast<long long>(std::ceil((target - 1.0) / 2.0));
  if (K > 50'000'000)
    throw std::invalid_argument("lambda_partial_sum: infeasible term count");
  double sum = 0.0;
  for (long long k = K; k >= 0; --k)
    sum += std::pow(1.0 + 2.0 * static_cast<double>(k), -p);
  const double tail =
      std::pow(1.0 + 2.0 * static_cast<double>(K), 1.0 - p) / (2.0 * (p - 1.0));
  return {sum + 0.5 * tail, 0.5 * tail};
}

double gagliardo_dense_double_sum(const fracmt::GridFunction& u, double p,
                                  int per_cell) {
  const std::vector<double>& xs = u.nodes();
  const std::vector<double>& vs = u.values();
  const double xl = xs.front(), xr = xs.back();

  std::vector<double> mid, val, slp, wid;
  for (std::size_t c = 0; c + 1 < xs.size(); ++c) {
    const double a = xs[c], b = xs[c + 1];
    const double m = (vs[c + 1] - vs[c]) / (b - a);
    const double hd = (b - a) / per_cell;
    for (int k = 0; k < per_cell; ++k) {
      const double xm = a + (k + 0.5) * hd;
      mid.push_back(xm);
      val.push_back(vs[c] + m * (xm - a));
      slp.push_back(m);
      wid.push_back(hd);
    }
  }
  const std::size_t n = mid.size();

  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = mid[j] - mid[i];
      off += std::pow(std::fabs(val[i] - val[j]), p) / (d * d) *
             wid[i] * wid[j];
    }
  }
  off *= 2.0;  // both orderings of (x, y)

  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    diag += 2.0 * std::pow(std::fabs(slp[i]), p) * std::pow(wid[i], p) /
            (p * (p - 1.0));

  double tail = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    tail += std::pow(std::fabs(val[i]), p) *
            (1.0 / (xr - mid[i]) + 1.0 / (mid[i] - xl)) * wid[i];
  tail *= 2.0;

  return off + diag + tail;
}

double moser_lp_trapezoid(double eps, double s, int steps) {
  const double p = 1.0 / s;
  const double L = -std::log(eps);
  const double plateau = 2.0 * eps * std::pow(L, p - 1.0);
  const double ls = std::pow(L, s);
  auto g = [&](double t) { return std::pow(t / ls, p) * std::exp(-t); };
  const double h = L / steps;
  double acc = 0.5 * (g(0.0) + g(L));
  for (int k = 1; k < steps; ++k) acc += g(k * h);
  return plateau + 2.0 * acc * h;
}

fracmt::GridFunction random_nonneg_grid(std::mt19937_64& rng,
                                        std::size_t n_cells) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::size_t n = n_cells + 1;
  std::vector<double> nodes(n), vals(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    nodes[i] = -1.0 + 2.0 * static_cast<double>(i) / n_cells;
  for (std::size_t i = 1; i + 1 < n; ++i) vals[i] = unif(rng);
  return fracmt::GridFunction(std::move(nodes), std::move(vals));
}

fracmt::GridFunction random_even_grid(std::mt19937_64& rng,
                                      std::size_t half_cells, double radius) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const std::size_t m = half_cells;
  std::vector<double> nodes(2 * m + 1), vals(2 * m + 1, 0.0);
  for (std::size_t i = 0; i <= 2 * m; ++i)
    nodes[i] = radius * (static_cast<double>(i) - static_cast<double>(m)) / m;
  vals[m] = unif(rng);
  for (std::size_t k = 1; k < m; ++k) {
    const double v = unif(rng);
    vals[m + k] = v;
    vals[m - k] = v;
  }
  return fracmt::GridFunction(std::move(nodes), std::move(vals));
}

fracmt::GridFunction random_even_nonincreasing_grid(std::mt19937_64& rng,
                                                    std::size_t half_cells,
                                                    double radius) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::size_t m = half_cells;
  std::vector<double> drops(m);
  for (std::size_t k = 0; k < m; ++k) drops[k] = unif(rng);
  std::vector<double> nodes(2 * m + 1), vals(2 * m + 1, 0.0);
  for (std::size_t i = 0; i <= 2 * m; ++i)
    nodes[i] = radius * (static_cast<double>(i) - static_cast<double>(m)) / m;
  // value at distance k from the center = sum of the drops beyond k
  for (std::size_t k = m; k-- > 0;) {
    const double outer = (k + 1 <= m - 1) ? vals[m + k + 1] : 0.0;
    vals[m + k] = outer + drops[k];
    vals[m - k] = vals[m + k];
  }
  return fracmt::GridFunction(std::move(nodes), std::move(vals));
}

}  // namespace oracles
