#include "septrace/estimation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "septrace/parallel.hpp"

namespace septrace {

void PipelineConfig::check() const {
  align.check();
  if (!(delta >= 0.0) || delta >= 1.0) throw std::invalid_argument("delta must lie in [0, 1)");
  if (coarse_reps < 1) throw std::invalid_argument("coarse_reps must be >= 1");
  if (fine_traces < 1) throw std::invalid_argument("fine_traces must be >= 1");
  if (t_traces < 1) throw std::invalid_argument("t_traces must be >= 1");
  if (!(min_success_fraction > 0.0) || min_success_fraction > 1.0) {
    throw std::invalid_argument("min_success_fraction must lie in (0, 1]");
  }
}

int64_t estimate_t(std::span<const int64_t> ones_counts, double delta) {
  if (ones_counts.empty()) throw std::invalid_argument("need at least one trace");
  if (delta >= 1.0) throw std::invalid_argument("delta must be < 1");
  double mean = static_cast<double>(std::accumulate(ones_counts.begin(), ones_counts.end(),
                                                    int64_t{0})) /
                static_cast<double>(ones_counts.size());
  return static_cast<int64_t>(round_ties_even(mean / (1.0 - delta)));
}

int64_t estimate_t(std::span<const Trace> traces, double delta) {
  std::vector<int64_t> counts;
  counts.reserve(traces.size());
  for (const Trace& tr : traces) {
    counts.push_back(std::count(tr.bits.begin(), tr.bits.end(), '1'));
  }
  return estimate_t(counts, delta);
}

namespace {

double median_sorted(std::vector<int64_t>& v) {
  std::sort(v.begin(), v.end());
  size_t n = v.size();
  if (n % 2 == 1) return static_cast<double>(v[n / 2]);
  return (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0;
}

}  // namespace

GapEstimates coarse_estimate(const CoarseDraw& draw, int64_t t, const PipelineConfig& cfg,
                             CoarseStats* stats) {
  cfg.check();
  if (t < 0) throw std::invalid_argument("t must be non-negative");
  GapEstimates b;
  b.values.reserve(static_cast<size_t>(t) + 1);
  if (stats) {
    stats->successes.assign(static_cast<size_t>(t) + 1, 0);
    stats->reps = cfg.coarse_reps;
  }
  const int64_t quorum =
      static_cast<int64_t>(std::ceil(cfg.min_success_fraction * static_cast<double>(cfg.coarse_reps)));
  for (int64_t m = 0; m <= t; ++m) {
    GapPrefix prefix(b);
    std::vector<int64_t> outcomes(static_cast<size_t>(cfg.coarse_reps), -1);
    parallel_for(cfg.coarse_reps, [&](int64_t rep) {
      TraceGapProfile profile = draw(m, rep);
      AlignOutcome out = align(profile, m, prefix, cfg.align);
      if (out) outcomes[static_cast<size_t>(rep)] = out.gap;
    });
    std::vector<int64_t> good;
    good.reserve(outcomes.size());
    for (int64_t gap : outcomes) {
      if (gap >= 0) good.push_back(gap);
    }
    if (stats) stats->successes[static_cast<size_t>(m)] = static_cast<int64_t>(good.size());
    if (static_cast<int64_t>(good.size()) < quorum) {
      throw StageFailure("coarse", m,
                         "coarse estimation at gap " + std::to_string(m) + ": only " +
                             std::to_string(good.size()) + "/" + std::to_string(cfg.coarse_reps) +
                             " alignments succeeded");
    }
    b.values.push_back(median_sorted(good));
  }
  return b;
}

FineDecision fine_decide(const TraceGapProfile& fwd, const TraceGapProfile& bwd, int64_t m,
                         int64_t t, const GapPrefix& b_fwd, const GapPrefix& b_bwd,
                         const AlignConfig& cfg) {
  AlignOutcome forward = align(fwd, m, b_fwd, cfg);
  if (!forward) return {};
  AlignOutcome backward = align(bwd, t - m, b_bwd, cfg);
  if (!backward) return {};
  if (forward.one_index + backward.one_index != fwd.ones()) return {};
  return {true, forward.one_index, forward.gap};
}

std::vector<int64_t> fine_estimate(std::span<const TraceGapProfile> traces, int64_t t,
                                   const GapEstimates& b, const PipelineConfig& cfg,
                                   FineStats* stats) {
  cfg.check();
  b.check();
  if (static_cast<int64_t>(b.values.size()) != t + 1) {
    throw std::invalid_argument("fine estimation needs t+1 coarse estimates");
  }
  std::vector<TraceGapProfile> reversed;
  reversed.reserve(traces.size());
  for (const auto& tr : traces) reversed.push_back(tr.reversed());

  const GapPrefix b_fwd(b);
  const GapEstimates b_rev = b.reversed();
  const GapPrefix b_bwd(b_rev);

  if (stats) {
    stats->accepted.assign(static_cast<size_t>(t) + 1, 0);
    stats->traces = static_cast<int64_t>(traces.size());
  }

  std::vector<int64_t> gaps(static_cast<size_t>(t) + 1, -1);
  std::vector<int64_t> failed_m(static_cast<size_t>(t) + 1, 0);
  parallel_for(t + 1, [&](int64_t m) {
    int64_t accepted = 0;
    double sum = 0.0;
    for (size_t i = 0; i < traces.size(); ++i) {
      FineDecision d = fine_decide(traces[i], reversed[i], m, t, b_fwd, b_bwd, cfg.align);
      if (d.accepted) {
        ++accepted;
        sum += static_cast<double>(d.gap);
      }
    }
    if (stats) stats->accepted[static_cast<size_t>(m)] = accepted;
    if (accepted == 0) {
      failed_m[static_cast<size_t>(m)] = 1;
      return;
    }
    double mean = sum / static_cast<double>(accepted);
    gaps[static_cast<size_t>(m)] =
        static_cast<int64_t>(round_ties_even(mean / (1.0 - cfg.delta)));
  });
  for (int64_t m = 0; m <= t; ++m) {
    if (failed_m[static_cast<size_t>(m)]) {
      throw StageFailure("fine", m,
                         "fine estimation at gap " + std::to_string(m) +
                             ": no trace passed the forward/backward check");
    }
  }
  return gaps;
}

ChannelProvider::ChannelProvider(const SeparatedString& x, int64_t padding, double delta,
                                 uint64_t seed)
    : padded_(pad(x, padding)), delta_(delta), seed_(seed) {}

int64_t ChannelProvider::count_ones(int64_t index) const {
  Rng rng(derive_seed(seed_, stream_tag::t_estimate, static_cast<uint64_t>(index)));
  return sample_ones_count(padded_.t(), delta_, rng);
}

TraceGapProfile ChannelProvider::coarse_profile(int64_t m, int64_t rep) const {
  uint64_t per_gap = derive_seed(seed_, stream_tag::coarse, static_cast<uint64_t>(m));
  Rng rng(derive_seed(per_gap, stream_tag::coarse, static_cast<uint64_t>(rep)));
  return sample_run_trace(padded_.gaps, delta_, rng).profile();
}

TraceGapProfile ChannelProvider::fine_profile(int64_t index) const {
  return fine_run_trace(index).profile();
}

RunTrace ChannelProvider::fine_run_trace(int64_t index) const {
  Rng rng(derive_seed(seed_, stream_tag::fine, static_cast<uint64_t>(index)));
  return sample_run_trace(padded_.gaps, delta_, rng);
}

FixedTraceProvider::FixedTraceProvider(std::vector<TraceGapProfile> profiles, int64_t coarse_reps)
    : profiles_(std::move(profiles)), coarse_reps_(coarse_reps) {
  if (profiles_.empty()) throw std::invalid_argument("need at least one trace");
  if (coarse_reps_ < 1) throw std::invalid_argument("coarse_reps must be >= 1");
}

int64_t FixedTraceProvider::count_ones(int64_t index) const {
  return profiles_[static_cast<size_t>(index % size())].ones();
}

TraceGapProfile FixedTraceProvider::coarse_profile(int64_t m, int64_t rep) const {
  return profiles_[static_cast<size_t>((m * coarse_reps_ + rep) % size())];
}

TraceGapProfile FixedTraceProvider::fine_profile(int64_t index) const {
  return profiles_[static_cast<size_t>(index % size())];
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ReconstructResult reconstruct(const TraceProvider& traces, const PipelineConfig& cfg,
                              int64_t padding, std::optional<int64_t> expect_n) {
  cfg.check();
  if (padding < 0) throw std::invalid_argument("padding must be non-negative");

  ReconstructResult result;

  auto clock = std::chrono::steady_clock::now();
  std::vector<int64_t> counts(static_cast<size_t>(cfg.t_traces));
  parallel_for(cfg.t_traces, [&](int64_t i) {
    counts[static_cast<size_t>(i)] = traces.count_ones(i);
  });
  result.t_estimate = estimate_t(counts, cfg.delta);
  const int64_t t = result.t_estimate;
  result.seconds.t_estimate = seconds_since(clock);

  clock = std::chrono::steady_clock::now();
  result.coarse = coarse_estimate(
      [&](int64_t m, int64_t rep) { return traces.coarse_profile(m, rep); }, t, cfg,
      &result.coarse_stats);
  result.seconds.coarse = seconds_since(clock);

  clock = std::chrono::steady_clock::now();
  std::vector<TraceGapProfile> batch(static_cast<size_t>(cfg.fine_traces));
  parallel_for(cfg.fine_traces, [&](int64_t i) {
    batch[static_cast<size_t>(i)] = traces.fine_profile(i);
  });
  result.padded_gaps = fine_estimate(batch, t, result.coarse, cfg, &result.fine_stats);
  result.seconds.fine = seconds_since(clock);

  std::vector<int64_t> gaps = result.padded_gaps;
  gaps.front() -= padding;
  gaps.back() -= padding;
  if (gaps.front() < 0 || gaps.back() < 0) {
    throw StageFailure("unpad", gaps.front() < 0 ? 0 : t,
                       "recovered boundary run shorter than the padding");
  }
  SeparatedString recovered;
  recovered.gaps = std::move(gaps);
  recovered.separation = 0;
  if (expect_n && recovered.length() != *expect_n) {
    throw StageFailure("length", -1,
                       "recovered length " + std::to_string(recovered.length()) +
                           " != expected " + std::to_string(*expect_n));
  }
  result.bits = to_bits(recovered);
  return result;
}

}  // namespace septrace
