#include "fracmt/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fracmt {

GridFunction::GridFunction(std::vector<double> nodes,
                           std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.size() < 2) throw input_error("grid needs at least two nodes");
  if (nodes_.size() != values_.size())
    throw input_error("nodes and values differ in length");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !std::isfinite(values_[i]))
      throw input_error("grid entries must be finite");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw input_error("nodes must be strictly increasing");
  }
}

bool GridFunction::uniform(double rel_tol) const {
  const double h0 = nodes_[1] - nodes_[0];
  for (std::size_t i = 2; i < nodes_.size(); ++i) {
    const double h = nodes_[i] - nodes_[i - 1];
    if (std::fabs(h - h0) > rel_tol * std::max(std::fabs(h0), std::fabs(h)))
      return false;
  }
  return true;
}

double GridFunction::operator()(double x) const {
  if (x <= nodes_.front() || x >= nodes_.back()) {
    if (x == nodes_.front()) return values_.front();
    if (x == nodes_.back()) return values_.back();
    return 0.0;
  }
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  const double t = (x - nodes_[i]) / (nodes_[i + 1] - nodes_[i]);
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

double GridFunction::support_radius() const {
  return std::max(std::fabs(nodes_.front()), std::fabs(nodes_.back()));
}

GridFunction sample_to_grid(const std::function<double(double)>& f,
                            const std::vector<double>& nodes) {
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = f(nodes[i]);
  return GridFunction(nodes, std::move(values));
}

void require_even_nonincreasing(const GridFunction& u, double rel_tol) {
  double scale = 0.0;
  for (double v : u.values()) scale = std::max(scale, std::fabs(v));
  const double tol = rel_tol * std::max(scale, 1e-300);

  for (std::size_t i = 0; i < u.size(); ++i) {
    if (std::fabs(u(-u.node(i)) - u.value(i)) > tol)
      throw input_error("function must be even");
    if (u.value(i) < -tol)
      throw input_error("function must be nonnegative");
  }
  double prev = u(0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.node(i) <= 0.0) continue;
    if (u.value(i) > prev + tol)
      throw input_error("function must be non-increasing in |x|");
    prev = std::min(prev, u.value(i));
  }
}

std::vector<double> log_spaced_nodes(double eps, int per_decade) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw input_error("log_spaced_nodes requires eps in (0,1)");
  if (per_decade < 1) throw input_error("per_decade must be >= 1");
  const double decades = -std::log10(eps);
  const int m = std::max(
      1, static_cast<int>(std::ceil(decades * static_cast<double>(per_decade))));
  std::vector<double> radii(static_cast<std::size_t>(m) + 1);
  const double le = std::log10(eps);
  for (int j = 0; j <= m; ++j)
    radii[static_cast<std::size_t>(j)] =
        std::pow(10.0, le * (1.0 - static_cast<double>(j) /
                                       static_cast<double>(m)));
  radii.front() = eps;  // exact endpoints
  radii.back() = 1.0;

  std::vector<double> nodes;
  nodes.reserve(2 * radii.size() + 1);
  for (auto it = radii.rbegin(); it != radii.rend(); ++it) nodes.push_back(-*it);
  nodes.push_back(0.0);
  for (double r : radii) nodes.push_back(r);
  return nodes;
}

// ============================================================
// CSV round-trip
// ============================================================

namespace {

std::string fmt17_local(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

GridFunction read_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw input_error("empty grid CSV: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,u")
    throw input_error("grid CSV must start with header `x,u`: " + path);

  std::vector<double> nodes, values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw input_error("grid CSV line " + std::to_string(lineno) +
                        " has no comma");
    std::size_t used = 0;
    double x = 0.0, u = 0.0;
    try {
      x = std::stod(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("trailing junk");
      const std::string rest = line.substr(comma + 1);
      u = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw input_error("grid CSV line " + std::to_string(lineno) +
                        " is not two numbers");
    }
    nodes.push_back(x);
    values.push_back(u);
  }
  if (in.bad()) throw io_error("read failure: " + path);
  return GridFunction(std::move(nodes), std::move(values));
}

void write_grid_csv(const GridFunction& u, const std::string& path) {
  std::ostringstream body;
  body << "x,u\n";
  for (std::size_t i = 0; i < u.size(); ++i)
    body << fmt17_local(u.node(i)) << ',' << fmt17_local(u.value(i)) << '\n';
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path);
  out << body.str();
  if (!out) throw io_error("write failure: " + path);
}

}  // namespace fracmt
