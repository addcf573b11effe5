#pragma once

#include <stdexcept>
#include <string>

namespace fracmt {

// ============================================================
// error taxonomy shared by the library and the CLI
//   input_error    -> CLI exit 2 (bad arguments, malformed data)
//   accuracy_error -> CLI exit 3 (quadrature budget exhausted)
//   io_error       -> CLI exit 4 (file read/write failure)
// ============================================================

class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Carries the best estimate obtained before the budget ran out, so a caller
// can still inspect how far the computation got.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& what, double best, double err)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}

  double best_estimate;
  double error_estimate;
};

class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracmt
