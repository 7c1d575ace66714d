#include "septrace/alignment.hpp"

#include <cmath>
#include <stdexcept>

namespace septrace {

double AlignConfig::log_n() const {
  double n = static_cast<double>(n_ref);
  return log_base == LogBase::natural ? std::log(n) : std::log2(n);
}

void AlignConfig::check() const {
  if (!(c0 > 0.0)) throw std::invalid_argument("c0 must be positive");
  if (n_ref < 2) throw std::invalid_argument("n_ref must be at least 2");
}

double threshold(double b_sum, const AlignConfig& cfg) {
  if (b_sum <= 0.0) return 0.0;
  return cfg.c0 * cfg.log_n() * std::sqrt(b_sum);
}

GapEstimates GapEstimates::reversed() const {
  return GapEstimates(std::vector<double>(values.rbegin(), values.rend()));
}

int64_t GapEstimates::count_outside(double lo, double hi) const {
  int64_t n = 0;
  for (double v : values) {
    if (v < lo || v > hi) ++n;
  }
  return n;
}

void GapEstimates::check() const {
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("gap estimates must be non-negative");
  }
}

GapPrefix::GapPrefix(std::span<const double> values) {
  cum_.reserve(values.size() + 1);
  cum_.push_back(0.0);
  double acc = 0.0;
  for (double v : values) {
    acc += v;
    cum_.push_back(acc);
  }
}

int64_t find_step(const GapPrefix& b, int64_t from, double target, const AlignConfig& cfg) {
  for (int64_t j2 = from + 1; j2 <= b.size(); ++j2) {
    for (int64_t j = j2 - 1; j >= from; --j) {
      double sum = b.sum(j, j2);
      if (std::abs(sum - target) <= threshold(sum, cfg)) return j2;
    }
  }
  return kNoAlignment;
}

AlignOutcome align(const TraceGapProfile& profile, int64_t m, const GapPrefix& b,
                   const AlignConfig& cfg, std::vector<int64_t>* visited) {
  if (m < 0) throw std::invalid_argument("m must be non-negative");
  if (b.size() < m) throw std::invalid_argument("need at least m gap estimates");
  const int64_t trace_ones = profile.ones();
  int64_t val = 0;
  int64_t q = 0;
  while (val < m) {
    if (q > trace_ones) return AlignOutcome::fail();  // ran out of trace
    val = find_step(b, val, static_cast<double>(profile.gaps[static_cast<size_t>(q)]), cfg);
    if (val == kNoAlignment) return AlignOutcome::fail();
    if (visited) visited->push_back(val);
    ++q;
  }
  if (val == m && q <= trace_ones) {
    return AlignOutcome::success(q, profile.gaps[static_cast<size_t>(q)]);
  }
  return AlignOutcome::fail();  // overshot m, or matched into the right sentinel
}

AlignOutcome align(const TraceGapProfile& profile, int64_t m, const GapEstimates& b,
                   const AlignConfig& cfg) {
  return align(profile, m, GapPrefix(b), cfg);
}

std::vector<int64_t> ProcessRun::kept_indices() const {
  std::vector<int64_t> idx;
  for (size_t i = 0; i < kept.size(); ++i) {
    if (kept[i]) idx.push_back(static_cast<int64_t>(i));
  }
  return idx;
}

std::vector<int64_t> process_alignments(std::span<const int64_t> a, std::span<const uint8_t> kept,
                                        const GapPrefix& b, const AlignConfig& cfg) {
  if (kept.size() != a.size() + 1) throw std::invalid_argument("kept must have a.size()+1 flags");
  if (kept.empty() || !kept[0]) throw std::invalid_argument("index 0 must be kept");
  std::vector<int64_t> aligned;
  aligned.push_back(0);
  int64_t prev_f = 0;
  int64_t sum_since_prev = 0;
  for (size_t i = 1; i < kept.size(); ++i) {
    sum_since_prev += a[i - 1];
    if (!kept[i]) continue;
    int64_t f = prev_f == kNoAlignment
                    ? kNoAlignment
                    : find_step(b, prev_f, static_cast<double>(sum_since_prev), cfg);
    aligned.push_back(f);
    prev_f = f;
    sum_since_prev = 0;
  }
  return aligned;
}

ProcessRun simulate_process(std::span<const int64_t> a, const GapEstimates& b, double delta,
                            const AlignConfig& cfg, Rng& rng) {
  if (a.empty()) throw std::invalid_argument("need at least one gap");
  ProcessRun run;
  const size_t m = a.size();
  run.kept.assign(m + 1, 1);
  for (size_t i = 1; i < m; ++i) run.kept[i] = rng.next_double() < delta ? 0 : 1;
  run.aligned = process_alignments(a, run.kept, GapPrefix(b), cfg);
  return run;
}

RunClass classify(const ProcessRun& run, int64_t m) {
  int64_t f = run.final_alignment();
  if (f == kNoAlignment) return {RunOutcome::failed, 0};
  if (f == m) return {RunOutcome::exact, 0};
  if (f < m) return {RunOutcome::behind, m - f};
  return {RunOutcome::ahead, f - m};
}

}  // namespace septrace
