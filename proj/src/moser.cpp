#include "fracmt/moser.hpp"

namespace fracmt {

double moser_eval(const MoserFunction& f, double x) {
  const double r = std::fabs(x);
  if (r >= 1.0) return 0.0;
  if (r <= f.eps) return f.peak();
  return -std::log(r) / std::pow(f.big_l(), f.params.s());
}

GridFunction sample_moser(const MoserFunction& f, int per_decade) {
  return sample_to_grid([&f](double x) { return moser_eval(f, x); },
                        log_spaced_nodes(f.eps, per_decade));
}

}  // namespace fracmt
