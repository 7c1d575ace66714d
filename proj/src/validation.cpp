#include "septrace/validation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "septrace/channel.hpp"
#include "septrace/core.hpp"
#include "septrace/estimation.hpp"
#include "septrace/instances.hpp"
#include "septrace/oracle.hpp"

namespace septrace {

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void sample_kept(std::vector<uint8_t>& kept, double delta, Rng& rng) {
  uint8_t* flags = kept.data();
  const size_t n = kept.size();
  for (size_t i = 0; i < n; ++i) {
    bool forced = i == 0 || i + 1 == n;
    flags[i] = forced ? 1 : (rng.next_double() < delta ? 0 : 1);
  }
}

}  // namespace

SuiteReport validate_catalan() {
  SuiteReport report{"catalan", {}};
  const std::vector<int64_t> known = {1, 1, 2, 5, 14};
  bool values_ok = true;
  for (size_t k = 0; k < known.size(); ++k) {
    values_ok = values_ok && catalan(static_cast<int64_t>(k)) == known[k];
  }
  report.checks.push_back({"initial-values", values_ok, 0, 0, "C_0..C_4"});

  bool recurrence_ok = true;
  for (int64_t k = 0; k <= 20; ++k) {
    mpz_class sum = 0;
    for (int64_t i = 0; i <= k; ++i) sum += catalan(i) * catalan(k - i);
    recurrence_ok = recurrence_ok && sum == catalan(k + 1);
  }
  report.checks.push_back({"convolution-recurrence", recurrence_ok, 0, 0, "k <= 20"});

  bool ratio_ok = true;
  for (int64_t k = 1; k <= 30; ++k) {
    mpz_class c = catalan(k), next = catalan(k + 1);
    ratio_ok = ratio_ok && next >= 2 * c && next <= 4 * c;
  }
  report.checks.push_back({"ratio-bounds", ratio_ok, 0, 0, "2 <= C_{k+1}/C_k <= 4, k in [1,30]"});

  bool dk_ok = d_k(0) == 1 && d_k(1) == 100 && d_k(2) == 2000000;
  report.checks.push_back({"dk-values", dk_ok, 0, 0, "D_0, D_1, D_2"});
  return report;
}

SuiteReport validate_never_ahead(const NeverAheadParams& p) {
  SuiteReport report{"never-ahead", {}};
  AlignConfig cfg{p.c0, p.n_ref, LogBase::natural};
  Rng inst_rng(derive_seed(p.seed, stream_tag::validation, 0));
  std::vector<int64_t> a = random_gaps(p.m, p.gap_lo, p.gap_hi, inst_rng);
  GapEstimates b = perturbed_estimates(a, p.perturb_fraction, cfg, inst_rng);
  const GapPrefix prefix(b);

  int64_t ahead_events = 0;
  std::vector<uint8_t> kept(static_cast<size_t>(p.m) + 1);
  for (int64_t run = 0; run < p.runs; ++run) {
    Rng rng(derive_seed(p.seed, stream_tag::validation, 1 + static_cast<uint64_t>(run)));
    sample_kept(kept, p.delta, rng);
    std::vector<int64_t> aligned = process_alignments(a, kept, prefix, cfg);
    size_t u = 0;
    for (size_t i = 0; i < kept.size(); ++i) {
      if (!kept[i]) continue;
      int64_t f = aligned[u++];
      if (f != kNoAlignment && f > static_cast<int64_t>(i)) ++ahead_events;
    }
  }
  report.checks.push_back({"zero-ahead-events", ahead_events == 0,
                           static_cast<double>(ahead_events), 0,
                           std::to_string(p.runs) + " runs at m=" + std::to_string(p.m)});
  return report;
}

SuiteReport validate_behind_bound(const BehindBoundParams& p) {
  SuiteReport report{"behind-bound", {}};
  AlignConfig cfg{p.c0, p.n_ref, LogBase::natural};

  std::vector<std::pair<std::string, std::vector<int64_t>>> instances;
  instances.emplace_back("chain", chain_gaps(p.m, p.chain_lead, p.chain_small));
  Rng inst_rng(derive_seed(p.seed, stream_tag::validation, 0));
  for (int64_t i = 0; i < p.random_instances; ++i) {
    instances.emplace_back("random-" + std::to_string(i),
                           random_gaps(p.m, p.gap_lo, p.gap_hi, inst_rng));
  }

  std::map<double, double> chain_rate;
  uint64_t stream = 1;
  for (const auto& [name, a] : instances) {
    GapEstimates b = exact_estimates(a);
    const GapPrefix prefix(b);
    for (double delta : p.deltas) {
      int64_t behind = 0;
      std::vector<uint8_t> kept(static_cast<size_t>(p.m) + 1);
      for (int64_t run = 0; run < p.runs; ++run) {
        Rng rng(derive_seed(p.seed, stream_tag::validation, stream + static_cast<uint64_t>(run)));
        sample_kept(kept, delta, rng);
        std::vector<int64_t> aligned = process_alignments(a, kept, prefix, cfg);
        int64_t f = aligned.back();
        if (f != kNoAlignment && f < p.m) ++behind;
      }
      stream += static_cast<uint64_t>(p.runs);
      double rate = static_cast<double>(behind) / static_cast<double>(p.runs);
      double bound = std::min(200.0 * delta, 1.0);
      if (name == "chain") chain_rate[delta] = rate;
      report.checks.push_back({name + "-delta-" + fmt(delta), rate <= bound, rate, bound,
                               std::to_string(behind) + "/" + std::to_string(p.runs) +
                                   " runs behind"});
    }
  }

  double lo_rate = chain_rate[p.deltas.front()];
  double hi_rate = chain_rate[p.deltas.back()];
  double ratio = lo_rate > 0 ? hi_rate / lo_rate : std::numeric_limits<double>::infinity();
  double delta_ratio = p.deltas.back() / p.deltas.front();
  report.checks.push_back({"chain-linearity", ratio >= p.ratio_lo && ratio <= p.ratio_hi, ratio,
                           delta_ratio,
                           "rate ratio across delta=" + fmt(p.deltas.front()) + ".." +
                               fmt(p.deltas.back())});
  return report;
}

namespace {

struct OracleInstance {
  std::string name;
  std::vector<int64_t> a;
  GapEstimates b;
  AlignConfig cfg;
  double delta;
  OracleConfig ocfg;
};

void check_mc_agreement(SuiteReport& report, const OracleInstance& inst, int64_t samples,
                        uint64_t seed) {
  BehindDistribution dist = enumerate_outcomes(inst.a, inst.b, inst.delta, inst.cfg, inst.ocfg);
  report.checks.push_back({inst.name + "-total", std::abs(dist.total() - 1.0) <= 1e-12,
                           dist.total(), 1.0, "enumeration probabilities sum to one"});

  const int64_t m = static_cast<int64_t>(inst.a.size());
  std::map<int64_t, int64_t> mc_offsets;
  int64_t mc_failed = 0;
  const GapPrefix prefix(inst.b);
  std::vector<uint8_t> kept(static_cast<size_t>(m) + 1);
  for (int64_t run = 0; run < samples; ++run) {
    Rng rng(derive_seed(seed, stream_tag::validation, static_cast<uint64_t>(run)));
    sample_kept(kept, inst.delta, rng);
    std::vector<int64_t> aligned = process_alignments(inst.a, kept, prefix, inst.cfg);
    int64_t f = aligned.back();
    if (f == kNoAlignment) {
      ++mc_failed;
    } else {
      mc_offsets[f - m] += 1;
    }
  }

  bool agree = true;
  double worst_sigmas = 0.0;
  auto compare = [&](double exact_p, int64_t count) {
    double hat = static_cast<double>(count) / static_cast<double>(samples);
    if (exact_p <= 0.0) {
      if (count != 0) agree = false;
      return;
    }
    double sigma = std::sqrt(exact_p * (1.0 - exact_p) / static_cast<double>(samples));
    double devs = sigma > 0 ? std::abs(hat - exact_p) / sigma : 0.0;
    worst_sigmas = std::max(worst_sigmas, devs);
    if (devs > 4.0) agree = false;
  };
  for (const auto& [offset, exact_p] : dist.by_offset) {
    auto it = mc_offsets.find(offset);
    compare(exact_p, it == mc_offsets.end() ? 0 : it->second);
  }
  compare(dist.failed, mc_failed);
  for (const auto& [offset, count] : mc_offsets) {
    if (!dist.by_offset.count(offset) && count > 0) agree = false;  // impossible outcome seen
  }
  report.checks.push_back({inst.name + "-mc-agreement", agree, worst_sigmas, 4.0,
                           std::to_string(samples) + " Monte Carlo runs"});
}

}  // namespace

SuiteReport validate_oracle_mc(const OracleMcParams& p) {
  SuiteReport report{"oracle-mc", {}};

  // Chain instance sized so the lead-gap tolerance admits realignments up
  // to four steps deep while the small gaps admit none.
  OracleInstance chain{"chain-m10",
                       chain_gaps(10, 10000, 150),
                       exact_estimates(chain_gaps(10, 10000, 150)),
                       AlignConfig{1.0, 1000, LogBase::natural},
                       0.01,
                       {}};
  Rng rng_b(derive_seed(p.seed, stream_tag::validation, 1000001));
  std::vector<int64_t> rnd12 = random_gaps(12, 600, 1800, rng_b);
  OracleInstance random12{"random-m12",
                          rnd12,
                          exact_estimates(rnd12),
                          AlignConfig{1.0, 20000, LogBase::natural},
                          0.01,
                          {}};
  Rng rng_c(derive_seed(p.seed, stream_tag::validation, 1000002));
  std::vector<int64_t> rnd14 = random_gaps(14, 600, 1800, rng_c);
  AlignConfig cfg14{1.0, 20000, LogBase::natural};
  OracleInstance random14{"random-m14",
                          rnd14,
                          perturbed_estimates(rnd14, 0.5, cfg14, rng_c),
                          cfg14,
                          0.005,
                          {}};

  uint64_t mc_seed = derive_seed(p.seed, stream_tag::validation, 5);
  check_mc_agreement(report, chain, p.mc_samples, derive_seed(mc_seed, 1, 0));
  check_mc_agreement(report, random12, p.mc_samples, derive_seed(mc_seed, 2, 0));
  check_mc_agreement(report, random14, p.mc_samples, derive_seed(mc_seed, 3, 0));

  // m=1: both endpoints are forced, so exact alignment has probability 1.
  {
    std::vector<int64_t> a1 = {500};
    BehindDistribution d =
        enumerate_outcomes(a1, exact_estimates(a1), 0.3, AlignConfig{1.0, 1000, LogBase::natural}, {});
    bool ok = d.by_offset.count(0) && std::abs(d.by_offset.at(0) - 1.0) <= 1e-15;
    report.checks.push_back({"m1-exact", ok, ok ? 1.0 : 0.0, 1.0, "single forced step"});
  }

  // Chain closed form: ending k behind is (up to O(delta^4) mid-chain
  // slips) exactly the event that the first k ones were deleted.
  {
    BehindDistribution d = enumerate_outcomes(chain.a, chain.b, chain.delta, chain.cfg, chain.ocfg);
    double p1 = d.prob_behind_at_least(1);
    double p2 = d.prob_behind_at_least(2);
    double r1 = p1 / chain.delta;
    double r2 = p2 / (chain.delta * chain.delta);
    report.checks.push_back({"chain-closed-form-k1", std::abs(r1 - 1.0) <= 0.02, r1, 1.0,
                             "P(behind>=1)/delta"});
    report.checks.push_back({"chain-closed-form-k2", std::abs(r2 - 1.0) <= 0.05, r2, 1.0,
                             "P(behind>=2)/delta^2"});
  }

  // delta -> 0: with estimates tracking the gaps, exact alignment
  // dominates; total deletion mass is < 1.2e-8 here.
  {
    BehindDistribution d =
        enumerate_outcomes(random12.a, random12.b, 1e-9, random12.cfg, random12.ocfg);
    double exact_p = d.by_offset.count(0) ? d.by_offset.at(0) : 0.0;
    report.checks.push_back({"continuity-at-zero", exact_p >= 1.0 - 1e-7, exact_p, 1.0 - 1e-7,
                             "P(exact) at delta=1e-9"});
  }

  // Windowed tail: relative slips beyond K are excluded by definition, so
  // p_k vanishes for every k > K.
  {
    OracleConfig windowed;
    windowed.window = 3;
    BehindDistribution d = enumerate_outcomes(chain.a, chain.b, chain.delta, chain.cfg, windowed);
    bool zero_tail = true;
    for (size_t k = 4; k < d.pk.size(); ++k) zero_tail = zero_tail && d.pk[k] == 0.0;
    bool has_deep = d.prob_behind_at_least(4) > 0.0;  // the unwindowed event does occur
    report.checks.push_back({"window-tail-zero", zero_tail && has_deep, zero_tail ? 0.0 : 1.0, 0.0,
                             "p_k = 0 for k > K = 3"});
  }

  // Lemma-scale deletion rate: exact p_k <= D_k * delta^k on every instance.
  {
    bool all_pass = true;
    for (const OracleInstance* inst : {&chain, &random12, &random14}) {
      for (const PkCheck& c : check_pk_bound(inst->a, inst->b, 1e-7, inst->cfg, inst->ocfg)) {
        all_pass = all_pass && c.pass;
      }
    }
    report.checks.push_back({"pk-bound-delta-1e-7", all_pass, all_pass ? 1.0 : 0.0, 1.0,
                             "p_k <= D_k delta^k, exact comparison"});
  }
  return report;
}

SuiteReport validate_ones_count(const OnesCountParams& p) {
  SuiteReport report{"ones-count", {}};
  Rng inst_rng(derive_seed(p.seed, stream_tag::instance, 0));
  SeparatedString x = random_separated(p.n, p.L, p.t, inst_rng);

  double sum_ones = 0.0, sum_len = 0.0;
  for (int64_t i = 0; i < p.samples; ++i) {
    Rng rng(derive_seed(p.seed, stream_tag::validation, static_cast<uint64_t>(i)));
    Trace tr = sample_trace(x, p.delta, rng);
    sum_len += static_cast<double>(tr.bits.size());
    sum_ones += static_cast<double>(std::count(tr.bits.begin(), tr.bits.end(), '1'));
  }
  double samples = static_cast<double>(p.samples);
  double mean_ones = sum_ones / samples;
  double mean_len = sum_len / samples;
  double tol_ones =
      3.0 * std::sqrt(static_cast<double>(p.t) * p.delta * (1.0 - p.delta) / samples);
  double tol_len =
      3.0 * std::sqrt(static_cast<double>(p.n) * p.delta * (1.0 - p.delta) / samples);
  double want_ones = static_cast<double>(p.t) * (1.0 - p.delta);
  double want_len = static_cast<double>(p.n) * (1.0 - p.delta);
  report.checks.push_back({"ones-mean", std::abs(mean_ones - want_ones) <= tol_ones,
                           mean_ones - want_ones, tol_ones, "vs Bin(t, 1-delta) mean"});
  report.checks.push_back({"length-mean", std::abs(mean_len - want_len) <= tol_len,
                           mean_len - want_len, tol_len, "vs Bin(n, 1-delta) mean"});
  return report;
}

namespace {

struct FineFixture {
  SeparatedString x;
  ChannelProvider provider;
  GapEstimates coarse;
  PipelineConfig cfg;
  int64_t t;

  static FineFixture build(const FineCheckParams& p) {
    Rng inst_rng(derive_seed(p.seed, stream_tag::instance, 0));
    SeparatedString x = random_separated(p.n, p.L, p.t, inst_rng);
    ChannelProvider provider(x, p.L, p.delta, derive_seed(p.seed, stream_tag::validation, 0));
    PipelineConfig cfg;
    cfg.align = AlignConfig{p.c0, p.n + 2 * p.L, LogBase::natural};
    cfg.delta = p.delta;
    cfg.coarse_reps = p.coarse_reps;
    cfg.fine_traces = 1;
    cfg.t_traces = 1;
    GapEstimates coarse = coarse_estimate(
        [&provider](int64_t m, int64_t rep) { return provider.coarse_profile(m, rep); }, p.t, cfg);
    return FineFixture{std::move(x), std::move(provider), std::move(coarse), cfg, p.t};
  }
};

}  // namespace

SuiteReport validate_fine_soundness(const FineCheckParams& p) {
  SuiteReport report{"fine-soundness", {}};
  FineFixture fx = FineFixture::build(p);
  const GapPrefix b_fwd(fx.coarse);
  const GapPrefix b_bwd(fx.coarse.reversed());

  int64_t accepted = 0, decisions = 0, mismatches = 0;
  for (int64_t idx = 0; accepted < p.target_accepted; ++idx) {
    RunTrace rt = fx.provider.fine_run_trace(idx);
    TraceGapProfile fwd = rt.profile();
    TraceGapProfile bwd = fwd.reversed();
    const int64_t surviving = rt.ones_kept();
    for (int64_t m = 0; m <= fx.t; ++m) {
      ++decisions;
      FineDecision d = fine_decide(fwd, bwd, m, fx.t, b_fwd, b_bwd, fx.cfg.align);
      if (!d.accepted) continue;
      ++accepted;
      bool ok = true;
      if (m > 0) ok = ok && rt.source_one(d.one_index) == m;
      if (m < fx.t) {
        ok = ok && d.one_index + 1 <= surviving && rt.source_one(d.one_index + 1) == m + 1;
      }
      if (!ok) ++mismatches;
    }
  }
  double rate = static_cast<double>(accepted) / static_cast<double>(decisions);
  report.checks.push_back({"zero-misidentifications", mismatches == 0,
                           static_cast<double>(mismatches), 0,
                           std::to_string(accepted) + " accepted pairs checked"});
  report.checks.push_back({"acceptance-rate", rate >= 0.8, rate, 0.8,
                           "accepted fraction across all gaps"});
  return report;
}

SuiteReport validate_fine_distribution(const FineDistributionParams& p) {
  SuiteReport report{"fine-distribution", {}};
  FineFixture fx = FineFixture::build(p.base);
  const GapPrefix b_fwd(fx.coarse);
  const GapPrefix b_bwd(fx.coarse.reversed());
  const int64_t m = p.probe_m;

  std::vector<double> samples;
  samples.reserve(static_cast<size_t>(p.min_accepted));
  for (int64_t idx = 0; static_cast<int64_t>(samples.size()) < p.min_accepted; ++idx) {
    RunTrace rt = fx.provider.fine_run_trace(idx);
    TraceGapProfile fwd = rt.profile();
    TraceGapProfile bwd = fwd.reversed();
    FineDecision d = fine_decide(fwd, bwd, m, fx.t, b_fwd, b_bwd, fx.cfg.align);
    if (d.accepted) samples.push_back(static_cast<double>(d.gap));
  }

  const double gap = static_cast<double>(pad(fx.x, p.base.L).gaps[static_cast<size_t>(m)]);
  const double delta = p.base.delta;
  const double n_acc = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n_acc;
  double var = 0.0;
  for (double v : samples) var += (v - mean) * (v - mean);
  var /= n_acc - 1.0;

  const double want_mean = (1.0 - delta) * gap;
  const double want_var = gap * delta * (1.0 - delta);
  const double mean_tol = 3.0 * std::sqrt(want_var / n_acc);
  report.checks.push_back({"accepted-mean", std::abs(mean - want_mean) <= mean_tol,
                           mean - want_mean, mean_tol,
                           "vs (1-delta)*a_m over " + std::to_string(samples.size()) + " samples"});
  report.checks.push_back({"accepted-variance", std::abs(var - want_var) <= 0.2 * want_var,
                           var, want_var, "vs a_m*delta*(1-delta), 20% tolerance"});
  return report;
}

}  // namespace septrace
