#pragma once
// The reconstruction pipeline.
//
// Stage 1 estimates t, the number of ones, from surviving-one counts.
// Stage 2 (coarse) walks m = 0..t, aligning a batch of fresh traces with
// the estimates built so far and taking the median surviving gap; the
// result approximates (1-delta) * a_m within ~10*sqrt(a_m).
// Stage 3 (fine) aligns each trace of a fixed batch from both ends and
// keeps the observed gap only when the two walks meet (q_fwd + q_bwd
// equals the trace's one count); accepted gaps are unbiased Bin(a_m,
// 1-delta) samples, so their rescaled mean rounds to a_m exactly.
//
// Reconstruction runs all three stages on a padded instance and strips
// the padding at the end.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "septrace/alignment.hpp"
#include "septrace/channel.hpp"
#include "septrace/core.hpp"

namespace septrace {

struct PipelineConfig {
  AlignConfig align;
  double delta = 0.0;
  int64_t coarse_reps = 64;          // traces per gap in the coarse stage
  int64_t fine_traces = 1;           // size of the fine batch
  int64_t t_traces = 1;              // traces used to estimate t
  double min_success_fraction = 0.6; // coarse alignment quorum

  void check() const;
};

// Raised when a stage cannot produce an estimate. `m` is the gap index at
// fault, or -1 when the failure is not tied to one.
struct StageFailure : std::runtime_error {
  std::string stage;
  int64_t m;
  StageFailure(std::string stage_, int64_t m_, const std::string& what_)
      : std::runtime_error(what_), stage(std::move(stage_)), m(m_) {}
};

int64_t estimate_t(std::span<const int64_t> ones_counts, double delta);
int64_t estimate_t(std::span<const Trace> traces, double delta);

// Fresh independent trace for coarse gap m, repetition rep.
using CoarseDraw = std::function<TraceGapProfile(int64_t m, int64_t rep)>;

struct CoarseStats {
  std::vector<int64_t> successes;  // per m
  int64_t reps = 0;
};

GapEstimates coarse_estimate(const CoarseDraw& draw, int64_t t, const PipelineConfig& cfg,
                             CoarseStats* stats = nullptr);

struct FineDecision {
  bool accepted = false;
  int64_t one_index = -1;  // q from the forward walk
  int64_t gap = -1;        // surviving-gap sample when accepted
};

// Forward/backward cross-check for one trace at gap m. b_fwd holds
// estimates b_0..b_t, b_bwd the reversed sequence.
FineDecision fine_decide(const TraceGapProfile& fwd, const TraceGapProfile& bwd, int64_t m,
                         int64_t t, const GapPrefix& b_fwd, const GapPrefix& b_bwd,
                         const AlignConfig& cfg);

struct FineStats {
  std::vector<int64_t> accepted;  // per m
  int64_t traces = 0;
};

// Exact gaps a_0..a_t from a fixed batch of traces and coarse estimates b
// (t+1 entries).
std::vector<int64_t> fine_estimate(std::span<const TraceGapProfile> traces, int64_t t,
                                   const GapEstimates& b, const PipelineConfig& cfg,
                                   FineStats* stats = nullptr);

// Supplies the three disjoint trace streams the pipeline consumes.
// Implementations must be pure functions of their arguments so stages can
// run in parallel deterministically.
class TraceProvider {
 public:
  virtual ~TraceProvider() = default;
  virtual int64_t count_ones(int64_t index) const = 0;
  virtual TraceGapProfile coarse_profile(int64_t m, int64_t rep) const = 0;
  virtual TraceGapProfile fine_profile(int64_t index) const = 0;
};

// Live sampling of padded traces from a known string.
class ChannelProvider : public TraceProvider {
 public:
  ChannelProvider(const SeparatedString& x, int64_t padding, double delta, uint64_t seed);

  int64_t count_ones(int64_t index) const override;
  TraceGapProfile coarse_profile(int64_t m, int64_t rep) const override;
  TraceGapProfile fine_profile(int64_t index) const override;

  // Run-level trace from the fine stream, with ground-truth one
  // identities; test hooks only.
  RunTrace fine_run_trace(int64_t index) const;
  const std::vector<int64_t>& padded_gaps() const { return padded_.gaps; }

 private:
  SeparatedString padded_;
  double delta_;
  uint64_t seed_;
};

// Replays a fixed batch of recorded traces, cycling when a stream asks
// for more than the batch holds.
class FixedTraceProvider : public TraceProvider {
 public:
  FixedTraceProvider(std::vector<TraceGapProfile> profiles, int64_t coarse_reps);

  int64_t count_ones(int64_t index) const override;
  TraceGapProfile coarse_profile(int64_t m, int64_t rep) const override;
  TraceGapProfile fine_profile(int64_t index) const override;
  int64_t size() const { return static_cast<int64_t>(profiles_.size()); }

 private:
  std::vector<TraceGapProfile> profiles_;
  int64_t coarse_reps_;
};

struct StageSeconds {
  double t_estimate = 0.0;
  double coarse = 0.0;
  double fine = 0.0;
};

struct ReconstructResult {
  BitString bits;
  int64_t t_estimate = 0;
  GapEstimates coarse;
  std::vector<int64_t> padded_gaps;
  CoarseStats coarse_stats;
  FineStats fine_stats;
  StageSeconds seconds;
};

// Full pipeline over padded traces; `padding` zeros are stripped from the
// boundary runs at the end. Throws StageFailure when a stage cannot
// deliver, or when expect_n is given and the recovered length differs.
ReconstructResult reconstruct(const TraceProvider& traces, const PipelineConfig& cfg,
                              int64_t padding, std::optional<int64_t> expect_n = {});

}  // namespace septrace
