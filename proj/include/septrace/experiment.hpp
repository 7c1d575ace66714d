#pragma once
// End-to-end experiment runner: generate a hidden string, reconstruct it
// from padded traces, compare, repeat. Everything but the timing fields
// is a pure function of the config.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "septrace/estimation.hpp"

namespace septrace {

struct ExperimentConfig {
  int64_t n = 20000;
  int64_t L = 600;
  int64_t t = 30;
  double delta = 0.05;
  uint64_t master_seed = 1;
  int64_t coarse_reps = 64;
  int64_t fine_traces = 100000;
  int64_t t_traces = 10000;
  double c0 = 1.0;
  LogBase log_base = LogBase::natural;
  int64_t n_ref = 0;  // 0: use the padded length n + 2L
  double min_success_fraction = 0.6;
  int64_t repetitions = 1;

  PipelineConfig pipeline() const;
  void check() const;
};

struct RepetitionReport {
  int64_t rep = 0;
  uint64_t seed = 0;
  bool success = false;
  std::string failed_stage;  // empty when no stage failed
  int64_t failed_m = -1;
  int64_t t_true = 0;
  int64_t t_estimate = 0;
  std::optional<int64_t> edit_dist;   // recovered vs truth, when a string exists
  std::vector<double> coarse_errors;  // |b_m - (1-delta)*A_m| / sqrt(A_m), padded gaps
  std::vector<double> fine_acceptance;
  // Not serialized: the strings themselves, for callers that want them.
  BitString recovered;
  BitString truth;
  // Timing section; excluded from determinism comparisons.
  double seconds_total = 0.0;
  StageSeconds seconds;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<RepetitionReport> repetitions;
  int64_t successes = 0;

  double success_rate() const;
};

// One repetition: fresh instance and channel streams derived from the
// repetition seed.
RepetitionReport run_repetition(const ExperimentConfig& cfg, int64_t rep);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace septrace
