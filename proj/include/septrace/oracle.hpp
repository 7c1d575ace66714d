#pragma once
// Exact small-instance ground truth for the alignment process.
//
// For the retention process over gaps a_0..a_{m-1} (interior ones kept
// independently with probability 1-delta, endpoints forced) every one of
// the 2^(m-1) retention patterns is walked deterministically, so the full
// outcome distribution is computed exactly: probabilities are aggregated
// as big rationals with delta taken at its exact binary-double value.
// Monte Carlo runs of the same process must agree with these numbers;
// that agreement is the trust anchor for the statistical suites.
//
// The windowed quantities pk[k] give the probability of finishing at
// least k steps behind while never slipping more than K steps (relative)
// between any two kept indices; they are the quantities bounded by
// D_k * delta^k, with D_k = 100^(2k-1) * catalan(k).

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "septrace/alignment.hpp"

namespace septrace {

struct OracleConfig {
  // Relative-slip window K; defaults to m, which makes the window
  // condition vacuous on instances this small.
  std::optional<int64_t> window;
  int64_t max_m = 20;  // enumeration cap: 2^(m-1) patterns

  void check() const;
  int64_t window_or(int64_t m) const { return window ? *window : m; }
};

struct BehindDistribution {
  // Final alignment minus m: 0 exact, negative behind, positive ahead.
  std::map<int64_t, double> by_offset;
  double failed = 0.0;
  // pk[k] for k = 0..m: P(final alignment <= m-k and the window condition
  // held throughout).
  std::vector<double> pk;

  double total() const;
  double prob_behind_at_least(int64_t k) const;  // from by_offset, unwindowed
};

BehindDistribution enumerate_outcomes(std::span<const int64_t> a, const GapEstimates& b,
                                      double delta, const AlignConfig& cfg,
                                      const OracleConfig& ocfg);

// Exact Catalan number C(2k, k) / (k + 1).
mpz_class catalan(int64_t k);

// D_0 = 1, D_k = 100^(2k-1) * catalan(k) for k >= 1.
mpz_class d_k(int64_t k);

struct PkCheck {
  int64_t k;
  double p_k;     // exact value, rounded for reporting
  double bound;   // D_k * delta^k, rounded for reporting
  bool pass;      // exact rational comparison p_k <= bound
  // Set when delta exceeds the worst-case rate the bound was derived
  // for; the comparison is then informational rather than a guarantee.
  bool informational;
};

// Compares the exact windowed probabilities against D_k * delta^k for
// k = 0..min(K, m).
std::vector<PkCheck> check_pk_bound(std::span<const int64_t> a, const GapEstimates& b,
                                    double delta, const AlignConfig& cfg,
                                    const OracleConfig& ocfg);

}  // namespace septrace
