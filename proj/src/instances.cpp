#include "septrace/instances.hpp"

#include <cmath>
#include <stdexcept>

namespace septrace {

std::vector<int64_t> chain_gaps(int64_t m, int64_t lead, int64_t small) {
  if (m < 1) throw std::invalid_argument("need at least one gap");
  std::vector<int64_t> a(static_cast<size_t>(m), small);
  a[0] = lead;
  return a;
}

std::vector<int64_t> random_gaps(int64_t m, int64_t lo, int64_t hi, Rng& rng) {
  if (m < 1 || lo > hi) throw std::invalid_argument("bad gap range");
  std::vector<int64_t> a(static_cast<size_t>(m));
  for (auto& g : a) g = rng.uniform_int(lo, hi);
  return a;
}

GapEstimates exact_estimates(std::span<const int64_t> a) {
  GapEstimates b;
  b.values.assign(a.begin(), a.end());
  return b;
}

GapEstimates perturbed_estimates(std::span<const int64_t> a, double fraction,
                                 const AlignConfig& cfg, Rng& rng) {
  if (fraction < 0.0 || fraction > 1.0) throw std::invalid_argument("fraction must be in [0,1]");
  const double c1 = cfg.c0 / 4.0;
  GapEstimates b;
  b.values.reserve(a.size());
  for (int64_t gap : a) {
    double extent = fraction * c1 * std::sqrt(static_cast<double>(gap) * cfg.log_n());
    double noise = (2.0 * rng.next_double() - 1.0) * extent;
    b.values.push_back(static_cast<double>(gap) + noise);
  }
  for (size_t i = 0; i < b.values.size(); ++i) {
    double diff = std::abs(b.values[i] - static_cast<double>(a[i]));
    if (diff > c1 * std::sqrt(b.values[i] * cfg.log_n())) {
      throw std::logic_error("perturbation exceeded the never-ahead precondition");
    }
  }
  return b;
}

}  // namespace septrace
