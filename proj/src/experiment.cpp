#include "septrace/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "septrace/instances.hpp"

namespace septrace {

PipelineConfig ExperimentConfig::pipeline() const {
  PipelineConfig p;
  p.align.c0 = c0;
  p.align.log_base = log_base;
  p.align.n_ref = n_ref > 0 ? n_ref : n + 2 * L;
  p.delta = delta;
  p.coarse_reps = coarse_reps;
  p.fine_traces = fine_traces;
  p.t_traces = t_traces;
  p.min_success_fraction = min_success_fraction;
  return p;
}

void ExperimentConfig::check() const {
  pipeline().check();
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (n < 1 || L < 0 || t < 0) throw std::invalid_argument("bad instance parameters");
  if (t * (L + 1) > n) {
    throw std::invalid_argument("infeasible parameters: need t * (L + 1) <= n");
  }
}

double ExperimentReport::success_rate() const {
  return repetitions.empty()
             ? 0.0
             : static_cast<double>(successes) / static_cast<double>(repetitions.size());
}

RepetitionReport run_repetition(const ExperimentConfig& cfg, int64_t rep) {
  cfg.check();
  RepetitionReport report;
  report.rep = rep;
  report.seed = derive_seed(cfg.master_seed, stream_tag::repetition, static_cast<uint64_t>(rep));

  auto started = std::chrono::steady_clock::now();
  Rng inst_rng(derive_seed(report.seed, stream_tag::instance, 0));
  SeparatedString truth = random_separated(cfg.n, cfg.L, cfg.t, inst_rng);
  report.t_true = truth.t();
  const BitString truth_bits = to_bits(truth);

  ChannelProvider provider(truth, cfg.L, cfg.delta,
                           derive_seed(report.seed, stream_tag::instance, 1));
  const PipelineConfig pipeline = cfg.pipeline();
  report.truth = truth_bits;
  try {
    ReconstructResult result = reconstruct(provider, pipeline, cfg.L, cfg.n);
    // Coarse estimates approximate (1-delta)-scaled runs; values far
    // outside that range mean the alignment went off the rails somewhere.
    int64_t outside = result.coarse.count_outside(
        0.8 * (1.0 - cfg.delta) * static_cast<double>(cfg.L),
        static_cast<double>(cfg.n + 2 * cfg.L));
    if (outside > 0) {
      std::fprintf(stderr,
                   "septrace: warning: %lld coarse estimates outside the plausible range "
                   "(rep %lld)\n",
                   static_cast<long long>(outside), static_cast<long long>(rep));
    }
    report.t_estimate = result.t_estimate;
    report.seconds = result.seconds;
    report.success = result.bits == truth_bits;
    report.edit_dist = report.success ? 0 : edit_distance(result.bits, truth_bits);
    report.recovered = std::move(result.bits);

    // Normalized coarse errors against the padded truth; meaningful only
    // when t was estimated correctly.
    if (result.t_estimate == truth.t()) {
      const SeparatedString padded = pad(truth, cfg.L);
      for (size_t m = 0; m < padded.gaps.size(); ++m) {
        double a = static_cast<double>(padded.gaps[m]);
        double b = result.coarse.values[m];
        report.coarse_errors.push_back(
            a > 0 ? std::abs(b - (1.0 - cfg.delta) * a) / std::sqrt(a) : std::abs(b));
      }
    }
    for (size_t m = 0; m < result.fine_stats.accepted.size(); ++m) {
      report.fine_acceptance.push_back(static_cast<double>(result.fine_stats.accepted[m]) /
                                       static_cast<double>(result.fine_stats.traces));
    }
  } catch (const StageFailure& failure) {
    report.success = false;
    report.failed_stage = failure.stage;
    report.failed_m = failure.m;
  }
  report.seconds_total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.check();
  ExperimentReport report;
  report.config = cfg;
  report.repetitions.reserve(static_cast<size_t>(cfg.repetitions));
  for (int64_t rep = 0; rep < cfg.repetitions; ++rep) {
    report.repetitions.push_back(run_repetition(cfg, rep));
    if (report.repetitions.back().success) ++report.successes;
  }
  return report;
}

}  // namespace septrace
