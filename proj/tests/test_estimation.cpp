#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "septrace/estimation.hpp"
#include "septrace/instances.hpp"

using namespace septrace;

namespace {

PipelineConfig small_config(int64_t n_ref, double delta) {
  PipelineConfig cfg;
  cfg.align.n_ref = n_ref;
  cfg.delta = delta;
  cfg.coarse_reps = 8;
  cfg.fine_traces = 8;
  cfg.t_traces = 4;
  return cfg;
}

}  // namespace

TEST_CASE("estimate_t basics") {
  std::vector<int64_t> sevens = {7, 7, 7};
  CHECK(estimate_t(sevens, 0.0) == 7);
  std::vector<int64_t> zeros = {0, 0};
  CHECK(estimate_t(zeros, 0.4) == 0);
  std::vector<int64_t> scaled = {3, 3, 3};
  CHECK(estimate_t(scaled, 0.25) == 4);  // 3 / 0.75
  CHECK_THROWS_AS(estimate_t(std::span<const int64_t>{}, 0.0), std::invalid_argument);

  SeparatedString x = from_bits("010010001");
  Rng rng(39);
  std::vector<Trace> traces = {sample_trace(x, 0.0, rng), sample_trace(x, 0.0, rng)};
  CHECK(estimate_t(traces, 0.0) == 3);
}

TEST_CASE("estimate_t recovers t=50 across seeded batches") {
  const int64_t t = 50;
  const double delta = 0.05;
  for (uint64_t rep = 0; rep < 20; ++rep) {
    std::vector<int64_t> counts;
    counts.reserve(10000);
    for (int64_t i = 0; i < 10000; ++i) {
      Rng rng(derive_seed(40 + rep, 0, static_cast<uint64_t>(i)));
      counts.push_back(sample_ones_count(t, delta, rng));
    }
    CHECK(estimate_t(counts, delta) == t);
  }
}

TEST_CASE("coarse estimation is exact at delta zero") {
  Rng inst(41);
  SeparatedString x = random_separated(2000, 60, 15, inst);
  ChannelProvider provider(x, 0, 0.0, 42);
  PipelineConfig cfg = small_config(2000, 0.0);
  CoarseStats stats;
  GapEstimates b = coarse_estimate(
      [&](int64_t m, int64_t rep) { return provider.coarse_profile(m, rep); }, x.t(), cfg, &stats);
  REQUIRE(b.values.size() == x.gaps.size());
  for (size_t m = 0; m < b.values.size(); ++m) {
    CHECK(b.values[m] == static_cast<double>(x.gaps[m]));
    CHECK(stats.successes[m] == cfg.coarse_reps);
  }
}

TEST_CASE("coarse estimation with t=0 reports the trace length") {
  SeparatedString x = from_bits("00000000000000000000000000000000000000000000000000");
  ChannelProvider provider(x, 0, 0.0, 43);
  PipelineConfig cfg = small_config(50, 0.0);
  GapEstimates b = coarse_estimate(
      [&](int64_t m, int64_t rep) { return provider.coarse_profile(m, rep); }, 0, cfg);
  REQUIRE(b.values.size() == 1);
  CHECK(b.values[0] == 50.0);
}

TEST_CASE("coarse estimation raises a stage failure below the quorum") {
  Rng inst(44);
  SeparatedString x = random_separated(400, 20, 6, inst);
  ChannelProvider provider(x, 0, 0.5, 45);
  PipelineConfig cfg = small_config(400, 0.5);
  cfg.min_success_fraction = 1.0;  // every alignment must succeed: it will not at delta=0.5
  try {
    coarse_estimate([&](int64_t m, int64_t rep) { return provider.coarse_profile(m, rep); },
                    x.t(), cfg);
    FAIL("expected StageFailure");
  } catch (const StageFailure& failure) {
    CHECK(failure.stage == "coarse");
    CHECK(failure.m >= 0);
  }
}

TEST_CASE("coarse estimates stay within ten normalized units of the truth") {
  const double delta = 0.05;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    Rng inst(derive_seed(46, 0, seed));
    SeparatedString x = random_separated(5000, 250, 15, inst);
    SeparatedString padded = pad(x, 250);
    ChannelProvider provider(x, 250, delta, derive_seed(46, 1, seed));
    PipelineConfig cfg = small_config(5500, delta);
    cfg.coarse_reps = 64;
    GapEstimates b = coarse_estimate(
        [&](int64_t m, int64_t rep) { return provider.coarse_profile(m, rep); }, x.t(), cfg);
    for (size_t m = 0; m < b.values.size(); ++m) {
      double a = static_cast<double>(padded.gaps[m]);
      CHECK(std::abs(b.values[m] - (1.0 - delta) * a) <= 10.0 * std::sqrt(a));
    }
  }
}

TEST_CASE("fine estimation is exact at delta zero") {
  Rng inst(47);
  SeparatedString x = random_separated(1500, 50, 12, inst);
  ChannelProvider provider(x, 0, 0.0, 48);
  PipelineConfig cfg = small_config(1500, 0.0);
  GapEstimates b = exact_estimates(x.gaps);
  std::vector<TraceGapProfile> traces;
  for (int64_t i = 0; i < cfg.fine_traces; ++i) traces.push_back(provider.fine_profile(i));
  FineStats stats;
  std::vector<int64_t> gaps = fine_estimate(traces, x.t(), b, cfg, &stats);
  CHECK(gaps == x.gaps);
  for (int64_t count : stats.accepted) CHECK(count == cfg.fine_traces);
}

TEST_CASE("ground-truth-correct forward and backward walks always meet") {
  Rng inst(49);
  SeparatedString x = random_separated(3000, 150, 15, inst);
  const int64_t t = x.t();
  const double delta = 0.1;
  ChannelProvider provider(x, 0, delta, 50);
  GapEstimates b = exact_estimates(x.gaps);
  const GapPrefix b_fwd(b);
  const GapPrefix b_bwd(b.reversed());
  AlignConfig cfg{1.0, 3000, LogBase::natural};

  int64_t checked = 0;
  for (int64_t idx = 0; idx < 400; ++idx) {
    RunTrace rt = provider.fine_run_trace(idx);
    TraceGapProfile fwd = rt.profile();
    TraceGapProfile bwd = fwd.reversed();
    const int64_t surviving = rt.ones_kept();
    for (int64_t m = 1; m < t; ++m) {
      AlignOutcome f = align(fwd, m, b_fwd, cfg);
      AlignOutcome r = align(bwd, t - m, b_bwd, cfg);
      if (!f.found || !r.found) continue;
      bool fwd_true = f.one_index >= 1 && f.one_index <= surviving &&
                      rt.source_one(f.one_index) == m;
      int64_t back_as_fwd = surviving + 1 - r.one_index;
      bool bwd_true = r.one_index >= 1 && back_as_fwd >= 1 && back_as_fwd <= surviving &&
                      rt.source_one(back_as_fwd) == m + 1;
      if (fwd_true && bwd_true) {
        ++checked;
        CHECK(f.one_index + r.one_index == surviving);
      }
    }
  }
  CHECK(checked > 1000);  // the condition is the common case at this delta
}

TEST_CASE("fine estimation raises a stage failure when nothing is accepted") {
  Rng inst(51);
  SeparatedString x = random_separated(300, 30, 4, inst);
  ChannelProvider provider(x, 0, 0.0, 52);
  PipelineConfig cfg = small_config(300, 0.0);
  GapEstimates nonsense(std::vector<double>(static_cast<size_t>(x.t()) + 1, 1e6));
  std::vector<TraceGapProfile> traces;
  for (int64_t i = 0; i < cfg.fine_traces; ++i) traces.push_back(provider.fine_profile(i));
  try {
    fine_estimate(traces, x.t(), nonsense, cfg);
    FAIL("expected StageFailure");
  } catch (const StageFailure& failure) {
    CHECK(failure.stage == "fine");
  }
}

TEST_CASE("fine estimation is symmetric under reversal") {
  Rng inst(53);
  SeparatedString x = random_separated(2500, 100, 12, inst);
  const int64_t t = x.t();
  const double delta = 0.08;
  ChannelProvider provider(x, 0, delta, 54);
  PipelineConfig cfg = small_config(2500, delta);
  cfg.fine_traces = 50;

  GapEstimates b = exact_estimates(x.gaps);
  std::vector<TraceGapProfile> traces;
  std::vector<TraceGapProfile> mirrored;
  for (int64_t i = 0; i < cfg.fine_traces; ++i) {
    traces.push_back(provider.fine_profile(i));
    mirrored.push_back(traces.back().reversed());
  }
  std::vector<int64_t> forward = fine_estimate(traces, t, b, cfg);
  std::vector<int64_t> backward = fine_estimate(mirrored, t, b.reversed(), cfg);
  std::reverse(backward.begin(), backward.end());
  CHECK(forward == backward);
}

TEST_CASE("reconstruct is exact at delta zero, including a leading one") {
  SeparatedString x = from_bits("1" + std::string(20, '0') + "1" + std::string(5, '0'));
  ChannelProvider provider(x, 10, 0.0, 55);
  PipelineConfig cfg = small_config(x.length() + 20, 0.0);
  ReconstructResult result = reconstruct(provider, cfg, 10, x.length());
  CHECK(result.bits == to_bits(x));
  CHECK(result.t_estimate == 2);

  Rng inst(56);
  SeparatedString y = random_separated(1200, 40, 10, inst);
  ChannelProvider provider_y(y, 40, 0.0, 57);
  PipelineConfig cfg_y = small_config(1280, 0.0);
  CHECK(reconstruct(provider_y, cfg_y, 40, 1200).bits == to_bits(y));
}

TEST_CASE("reconstruct surfaces stage failures and length mismatches") {
  Rng inst(58);
  SeparatedString x = random_separated(400, 20, 6, inst);
  ChannelProvider provider(x, 20, 0.5, 59);
  PipelineConfig cfg = small_config(440, 0.5);
  cfg.min_success_fraction = 1.0;
  CHECK_THROWS_AS(reconstruct(provider, cfg, 20, 400), StageFailure);

  ChannelProvider clean(x, 20, 0.0, 60);
  PipelineConfig cfg0 = small_config(440, 0.0);
  CHECK_THROWS_AS(reconstruct(clean, cfg0, 20, 399), StageFailure);  // wrong expected length
  try {
    reconstruct(clean, cfg0, 20, 399);
  } catch (const StageFailure& failure) {
    CHECK(failure.stage == "length");
  }
}

TEST_CASE("fixed-batch provider cycles deterministically") {
  std::vector<TraceGapProfile> profiles;
  profiles.push_back(TraceGapProfile::from_gaps({3, 0}));
  profiles.push_back(TraceGapProfile::from_gaps({1, 2}));
  FixedTraceProvider provider(profiles, 2);
  CHECK(provider.count_ones(0) == 1);
  CHECK(provider.fine_profile(0).gaps == profiles[0].gaps);
  CHECK(provider.fine_profile(2).gaps == profiles[0].gaps);
  CHECK(provider.coarse_profile(1, 1).gaps == profiles[(1 * 2 + 1) % 2].gaps);
}

TEST_CASE("pipeline configuration is validated") {
  PipelineConfig cfg = small_config(100, 0.0);
  cfg.coarse_reps = 0;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  cfg = small_config(100, 1.0);
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
  cfg = small_config(100, 0.0);
  cfg.min_success_fraction = 0.0;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
}
