#pragma once
// The deletion channel: every bit of x is deleted independently with
// probability delta and the survivors are concatenated.
//
// Traces sampled here optionally carry the retained-index map back into
// the source string. That provenance exists for tests only; nothing in
// the reconstruction pipeline reads it.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "septrace/core.hpp"
#include "septrace/rng.hpp"

namespace septrace {

// Deletion rates above this bound are outside the regime the estimation
// guarantees were designed for; ChannelParams::check only warns.
inline constexpr double kWorstCaseDelta = 1.0 / 3e6;

struct ChannelParams {
  double delta = 0.0;
  uint64_t seed = 0;

  // Throws on delta outside [0,1); warns (stderr) above kWorstCaseDelta.
  void check() const;
  // Independent stream for the index-th trace.
  Rng stream(uint64_t index) const { return Rng(derive_seed(seed, stream_tag::instance, index)); }
};

struct Trace {
  BitString bits;
  // Strictly increasing 0-based source indices, one per retained bit.
  std::optional<std::vector<int64_t>> retained;
};

// Positions of the ones in a trace plus sentinels:
//   positions[0] = 0, positions[q] = 1-based position of the q-th one,
//   positions[ones+1] = length + 1;  gaps[q] = zeros between them.
struct TraceGapProfile {
  std::vector<int64_t> positions;
  std::vector<int64_t> gaps;

  int64_t ones() const { return static_cast<int64_t>(gaps.size()) - 1; }
  int64_t length() const;
  TraceGapProfile reversed() const;

  static TraceGapProfile from_gaps(std::vector<int64_t> gaps);
};

Trace sample_trace(const SeparatedString& x, double delta, Rng& rng);

// Trace of x padded with `pad` zeros on each end; retained indices refer
// to the padded string of length n + 2*pad.
Trace sample_padded_trace(const SeparatedString& x, int64_t pad, double delta, Rng& rng);

TraceGapProfile gap_profile(const Trace& tr);
TraceGapProfile profile_of_bits(const BitString& bits);

// Deterministic trace with the given retained indices; used to build
// fixtures and to parse recorded traces.
Trace trace_from_retained(const BitString& x, std::span<const int64_t> retained);

// Run-level trace of a separated string: how many zeros of each run and
// which ones survived. Same information as a Trace profile plus the
// ground-truth identity of every surviving one, in O(t) space.
struct RunTrace {
  std::vector<int64_t> kept_zeros;  // t+1 entries
  std::vector<uint8_t> kept_ones;   // t entries

  int64_t ones_kept() const;
  TraceGapProfile profile() const;
  // 1-based index in x of the trace's q-th one (1 <= q <= ones_kept()).
  int64_t source_one(int64_t q) const;
};

// Samples a RunTrace directly: Bin(gap, 1-delta) survivors per run and a
// Bernoulli(1-delta) flag per one. Distributed exactly as the run-level
// view of sample_trace, at O(t + n*delta) cost instead of O(n).
RunTrace sample_run_trace(std::span<const int64_t> gaps, double delta, Rng& rng);

// Number of ones surviving in one trace: Bin(t, 1-delta).
int64_t sample_ones_count(int64_t t, double delta, Rng& rng);

// Run-level view of a provenance-carrying trace (throws without
// provenance). Lets tests replay the exact randomness a trace realized.
RunTrace run_view(const SeparatedString& x, const Trace& tr);

}  // namespace septrace
