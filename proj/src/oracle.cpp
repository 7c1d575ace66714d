#include "septrace/oracle.hpp"

#include <stdexcept>

#include "septrace/channel.hpp"

namespace septrace {

void OracleConfig::check() const {
  if (window && *window < 1) throw std::invalid_argument("window must be >= 1");
  if (max_m < 1) throw std::invalid_argument("max_m must be >= 1");
}

double BehindDistribution::total() const {
  double sum = failed;
  for (const auto& [offset, p] : by_offset) sum += p;
  return sum;
}

double BehindDistribution::prob_behind_at_least(int64_t k) const {
  double sum = 0.0;
  for (const auto& [offset, p] : by_offset) {
    if (offset <= -k) sum += p;
  }
  return sum;
}

namespace {

// Pattern tallies bucketed by number of deleted interior ones; converting
// counts to probabilities afterwards keeps the arithmetic exact and cheap
// (there are only m distinct pattern weights).
struct ExactTallies {
  int64_t m = 0;
  std::map<int64_t, std::vector<uint64_t>> by_offset;  // offset -> count per deletions
  std::vector<uint64_t> failed;
  std::vector<std::vector<uint64_t>> pk_at;  // exact behind depth (windowed) -> counts

  std::vector<mpq_class> weights;  // delta^z * (1-delta)^(m-1-z)

  mpq_class probability(const std::vector<uint64_t>& counts) const {
    mpq_class p = 0;
    for (size_t z = 0; z < counts.size(); ++z) {
      if (counts[z] != 0) p += mpq_class(static_cast<unsigned long>(counts[z])) * weights[z];
    }
    return p;
  }

  // pk[k] = probability of windowed behind depth >= k.
  std::vector<mpq_class> pk_exact() const {
    std::vector<mpq_class> pk(static_cast<size_t>(m) + 1, mpq_class(0));
    mpq_class suffix = 0;
    for (int64_t k = m; k >= 0; --k) {
      suffix += probability(pk_at[static_cast<size_t>(k)]);
      pk[static_cast<size_t>(k)] = suffix;
    }
    return pk;
  }
};

ExactTallies enumerate_exact(std::span<const int64_t> a, const GapEstimates& b, double delta,
                             const AlignConfig& cfg, const OracleConfig& ocfg) {
  ocfg.check();
  cfg.check();
  b.check();
  if (!(delta >= 0.0) || delta >= 1.0) throw std::invalid_argument("delta must lie in [0, 1)");
  const int64_t m = static_cast<int64_t>(a.size());
  if (m < 1) throw std::invalid_argument("need at least one gap");
  if (m > ocfg.max_m) throw std::invalid_argument("instance too large to enumerate exactly");

  const int64_t K = ocfg.window_or(m);
  const GapPrefix prefix(b);

  ExactTallies tallies;
  tallies.m = m;
  const size_t buckets = static_cast<size_t>(m);  // deletions range 0..m-1
  tallies.failed.assign(buckets, 0);
  tallies.pk_at.assign(static_cast<size_t>(m) + 1, std::vector<uint64_t>(buckets, 0));

  std::vector<uint8_t> kept(static_cast<size_t>(m) + 1, 1);
  const uint64_t patterns = uint64_t{1} << (m - 1);
  for (uint64_t bits = 0; bits < patterns; ++bits) {
    int64_t deleted = 0;
    for (int64_t i = 1; i < m; ++i) {
      uint8_t keep = (bits >> (i - 1)) & 1 ? 0 : 1;
      kept[static_cast<size_t>(i)] = keep;
      deleted += keep ? 0 : 1;
    }
    std::vector<int64_t> aligned = process_alignments(a, kept, prefix, cfg);
    const int64_t final_alignment = aligned.back();

    if (final_alignment == kNoAlignment) {
      tallies.failed[static_cast<size_t>(deleted)] += 1;
    } else {
      auto& counts = tallies.by_offset[final_alignment - m];
      if (counts.empty()) counts.assign(buckets, 0);
      counts[static_cast<size_t>(deleted)] += 1;
    }

    // Window condition: between any two kept indices we never slip more
    // than K steps. An unalignable tail counts as an infinite value and
    // never violates the lower bound.
    bool window_ok = true;
    {
      std::vector<int64_t> idx;
      idx.reserve(aligned.size());
      for (size_t i = 0; i < kept.size(); ++i) {
        if (kept[i]) idx.push_back(static_cast<int64_t>(i));
      }
      for (size_t u = 0; u < idx.size() && window_ok; ++u) {
        if (aligned[u] == kNoAlignment) break;
        for (size_t v = u + 1; v < idx.size(); ++v) {
          if (aligned[v] == kNoAlignment) break;
          if (aligned[v] - aligned[u] < (idx[v] - idx[u]) - K) {
            window_ok = false;
            break;
          }
        }
      }
    }
    if (window_ok && final_alignment != kNoAlignment && final_alignment <= m) {
      tallies.pk_at[static_cast<size_t>(m - final_alignment)][static_cast<size_t>(deleted)] += 1;
    }
  }

  // Exact dyadic value of delta; 1-delta is computed as a rational so the
  // weights sum to exactly one.
  const mpq_class q_delta(delta);
  const mpq_class q_keep = mpq_class(1) - q_delta;
  tallies.weights.resize(buckets);
  for (size_t z = 0; z < buckets; ++z) {
    mpq_class w(1);
    for (size_t i = 0; i < z; ++i) w *= q_delta;
    for (size_t i = z; i + 1 < buckets; ++i) w *= q_keep;
    tallies.weights[z] = w;
  }
  return tallies;
}

}  // namespace

BehindDistribution enumerate_outcomes(std::span<const int64_t> a, const GapEstimates& b,
                                      double delta, const AlignConfig& cfg,
                                      const OracleConfig& ocfg) {
  ExactTallies tallies = enumerate_exact(a, b, delta, cfg, ocfg);
  BehindDistribution dist;
  mpq_class check_total = 0;
  for (const auto& [offset, counts] : tallies.by_offset) {
    mpq_class p = tallies.probability(counts);
    check_total += p;
    dist.by_offset[offset] = p.get_d();
  }
  mpq_class p_failed = tallies.probability(tallies.failed);
  check_total += p_failed;
  dist.failed = p_failed.get_d();
  if (check_total != 1) throw std::logic_error("enumeration probabilities do not sum to one");
  for (const mpq_class& p : tallies.pk_exact()) dist.pk.push_back(p.get_d());
  return dist;
}

mpz_class catalan(int64_t k) {
  if (k < 0) throw std::invalid_argument("catalan index must be non-negative");
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * k),
               static_cast<unsigned long>(k));
  return binom / (k + 1);
}

mpz_class d_k(int64_t k) {
  if (k < 0) throw std::invalid_argument("index must be non-negative");
  if (k == 0) return 1;
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), 100, static_cast<unsigned long>(2 * k - 1));
  return pow * catalan(k);
}

std::vector<PkCheck> check_pk_bound(std::span<const int64_t> a, const GapEstimates& b,
                                    double delta, const AlignConfig& cfg,
                                    const OracleConfig& ocfg) {
  ExactTallies tallies = enumerate_exact(a, b, delta, cfg, ocfg);
  const std::vector<mpq_class> pk = tallies.pk_exact();
  const int64_t m = tallies.m;
  const int64_t K = ocfg.window_or(m);
  const mpq_class q_delta(delta);

  std::vector<PkCheck> checks;
  const bool informational = delta > kWorstCaseDelta;
  mpq_class delta_pow(1);
  for (int64_t k = 0; k <= std::min(K, m); ++k) {
    mpq_class bound = mpq_class(d_k(k)) * delta_pow;
    const mpq_class& p = pk[static_cast<size_t>(k)];
    checks.push_back({k, p.get_d(), bound.get_d(), p <= bound, informational});
    delta_pow *= q_delta;
  }
  return checks;
}

}  // namespace septrace
