#include "fracmt/parallel.hpp"

#include <cstdlib>
#include <string>

namespace fracmt {

int thread_count() {
  long requested = 0;
  if (const char* env = std::getenv("FRACMT_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed > 0) requested = parsed;
  }
  if (requested > 0) return static_cast<int>(requested);
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

double tree_sum(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  // Combine adjacent pairs until one value remains; association order depends
  // only on the input length.
  while (xs.size() > 1) {
    std::size_t half = 0;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2)
      xs[half++] = xs[i] + xs[i + 1];
    if (xs.size() % 2 == 1) xs[half++] = xs.back();
    xs.resize(half);
  }
  return xs[0];
}

}  // namespace fracmt
