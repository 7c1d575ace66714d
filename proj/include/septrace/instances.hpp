#pragma once
// Reference instances shared by tests, validation suites and the CLI.

#include <cstdint>
#include <span>
#include <vector>

#include "septrace/alignment.hpp"
#include "septrace/rng.hpp"

namespace septrace {

// Adversarial gap sequence: one dominant leading gap followed by equal
// small gaps. With estimates equal to the truth, deleting the first k
// ones realigns the first surviving one onto the leading gap, so the walk
// ends k steps behind with probability ~delta^k.
std::vector<int64_t> chain_gaps(int64_t m, int64_t lead, int64_t small);

// m gaps drawn uniformly from [lo, hi].
std::vector<int64_t> random_gaps(int64_t m, int64_t lo, int64_t hi, Rng& rng);

GapEstimates exact_estimates(std::span<const int64_t> a);

// Estimates perturbed to a fraction of the never-ahead precondition
// |b_i - a_i| <= (c0/4) * sqrt(b_i * log n). Throws if the perturbed
// values fail the precondition they were built for.
GapEstimates perturbed_estimates(std::span<const int64_t> a, double fraction,
                                 const AlignConfig& cfg, Rng& rng);

}  // namespace septrace
