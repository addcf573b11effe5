#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracmt/errors.hpp"

namespace fracmt {

// ============================================================
// Compactly supported continuous piecewise-linear function:
// linear interpolation between (node, value) pairs, identically
// zero outside the node range.  Nonzero boundary values are
// allowed (the function then jumps at the boundary) but flagged
// as non-conforming; seminorm evaluation rejects such inputs.
// ============================================================

class GridFunction {
 public:
  GridFunction(std::vector<double> nodes, std::vector<double> values);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  // Zero at both boundary nodes, hence continuous on all of R.
  bool conforming() const {
    return values_.front() == 0.0 && values_.back() == 0.0;
  }

  // Uniform node spacing up to relative tolerance.
  bool uniform(double rel_tol = 1e-12) const;

  // Piecewise-linear evaluation; zero outside [nodes.front, nodes.back].
  double operator()(double x) const;

  // max(|nodes.front|, |nodes.back|).
  double support_radius() const;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
};

// Samples f at the given strictly increasing nodes.
GridFunction sample_to_grid(const std::function<double(double)>& f,
                            const std::vector<double>& nodes);

// Throws input_error unless u is even (u(-x) = u(x) at every node, via
// interpolation, so mirrored node layouts are not required) and
// non-increasing in |x|, both up to rel_tol * max|u|.
void require_even_nonincreasing(const GridFunction& u, double rel_tol = 1e-12);

// Symmetric node set for log-range functions: +-(geometric ladder from eps
// to 1, per_decade points per decade) plus the origin.  Endpoints land on
// +-eps and +-1 exactly.
std::vector<double> log_spaced_nodes(double eps, int per_decade = 64);

// Two-column CSV (header `x,u`), 17 significant digits, LF endings;
// round-trips bit exactly.  Unreadable/unwritable file -> io_error;
// malformed content -> input_error.
GridFunction read_grid_csv(const std::string& path);
void write_grid_csv(const GridFunction& u, const std::string& path);

}  // namespace fracmt
