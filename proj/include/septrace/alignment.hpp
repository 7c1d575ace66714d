#pragma once
// Left-to-right alignment of a trace to gap estimates.
//
// Given estimates b_0..b_{m'-1} of the source gaps, a trace is walked one
// observed gap at a time. Each step advances the current position `val`
// to the smallest j' > val for which some window [j, j') of estimates
// sums to the observed gap within a sqrt-scaled tolerance:
//
//     | observed - sum(b[j..j')) | <= c0 * log(n_ref) * sqrt(sum(b[j..j')))
//
// Taking the *smallest* feasible j' means the walk may lag behind the
// true position when ones were deleted (it realigns a later one to an
// earlier estimate window) but almost never runs ahead of it. The behind
// probability decays with the deletion rate; both effects are what the
// estimation pipeline and the enumeration oracle quantify.
//
// The same stepping rule drives an abstract retention process over exact
// gap sums (zeros intact, ones dropped at rate delta), which is what the
// oracle enumerates and the lemma-level validation suites sample.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "septrace/channel.hpp"
#include "septrace/rng.hpp"

namespace septrace {

enum class LogBase { natural, base2 };

struct AlignConfig {
  double c0 = 1.0;
  int64_t n_ref = 2;  // the n inside log(n)
  LogBase log_base = LogBase::natural;

  double log_n() const;
  void check() const;  // c0 > 0, n_ref >= 2
};

// c0 * log(n_ref) * sqrt(b_sum)
double threshold(double b_sum, const AlignConfig& cfg);

struct GapEstimates {
  std::vector<double> values;

  GapEstimates() = default;
  explicit GapEstimates(std::vector<double> v) : values(std::move(v)) {}

  GapEstimates reversed() const;
  // Entries outside [lo, hi]; range trouble is worth a warning, not an error.
  int64_t count_outside(double lo, double hi) const;
  void check() const;  // entries must be >= 0
};

// Prefix sums over the estimates; the scans need O(1) range sums.
class GapPrefix {
 public:
  explicit GapPrefix(std::span<const double> values);
  explicit GapPrefix(const GapEstimates& b) : GapPrefix(std::span<const double>(b.values)) {}

  double sum(int64_t j, int64_t j2) const {
    return cum_[static_cast<size_t>(j2)] - cum_[static_cast<size_t>(j)];
  }
  int64_t size() const { return static_cast<int64_t>(cum_.size()) - 1; }

 private:
  std::vector<double> cum_;
};

// Sentinel for "no feasible alignment".
inline constexpr int64_t kNoAlignment = std::numeric_limits<int64_t>::max();

// Smallest j' > from such that |sum(b[j..j')) - target| is within
// threshold for some j in [from, j'); kNoAlignment when none exists.
int64_t find_step(const GapPrefix& b, int64_t from, double target, const AlignConfig& cfg);

struct AlignOutcome {
  bool found = false;
  int64_t one_index = -1;  // q: which one of the trace matched (0 = left sentinel)
  int64_t gap = -1;        // observed gap following that one

  static AlignOutcome fail() { return {}; }
  static AlignOutcome success(int64_t q, int64_t gap) { return {true, q, gap}; }
  explicit operator bool() const { return found; }
};

// Locate the trace's one corresponding to the m-th one of the source
// string. b may have more than m entries; the walk fails if it overshoots
// m. With m = 0 this matches the left sentinel and reports the leading
// gap. `visited` (optional) records val after every step, for replay
// against the abstract process.
AlignOutcome align(const TraceGapProfile& profile, int64_t m, const GapPrefix& b,
                   const AlignConfig& cfg, std::vector<int64_t>* visited = nullptr);
AlignOutcome align(const TraceGapProfile& profile, int64_t m, const GapEstimates& b,
                   const AlignConfig& cfg);

// One realization of the retention process over exact gap sums.
struct ProcessRun {
  // kept[i] for 0 <= i <= m; kept[0] = kept[m] = 1.
  std::vector<uint8_t> kept;
  // Aligned position per kept index, in order; aligned[0] = 0. Once a step
  // finds no feasible j' the entry (and all later ones) is kNoAlignment.
  std::vector<int64_t> aligned;

  std::vector<int64_t> kept_indices() const;
  int64_t final_alignment() const { return aligned.back(); }
};

// Deterministic core shared by the simulator, the oracle and replay
// tests: alignments at each kept index given retention flags and the gap
// sums actually seen. kept.size() == a.size() + 1, kept[0] == 1.
std::vector<int64_t> process_alignments(std::span<const int64_t> a, std::span<const uint8_t> kept,
                                        const GapPrefix& b, const AlignConfig& cfg);

// Samples the retention flags (interior ones kept with probability
// 1-delta, both endpoints forced) and runs the stepping rule against the
// exact sums of a.
ProcessRun simulate_process(std::span<const int64_t> a, const GapEstimates& b, double delta,
                            const AlignConfig& cfg, Rng& rng);

enum class RunOutcome { exact, behind, ahead, failed };

struct RunClass {
  RunOutcome kind;
  int64_t steps;  // how far behind/ahead; 0 for exact/failed
};

RunClass classify(const ProcessRun& run, int64_t m);

}  // namespace septrace
