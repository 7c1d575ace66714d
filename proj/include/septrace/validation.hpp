#pragma once
// Named validation suites: statistical and exact checks that back the
// estimation guarantees at desk scale. Each suite returns a structured
// report; the CLI prints them as JSON and the acceptance tests assert
// them directly. All suites are deterministic given their seed.

#include <cstdint>
#include <string>
#include <vector>

#include "septrace/alignment.hpp"

namespace septrace {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool pass() const;
};

// Exact Catalan identities: initial values, the convolution recurrence up
// to k=20, consecutive-ratio bounds up to k=30, and the D_k values.
SuiteReport validate_catalan();

struct NeverAheadParams {
  int64_t runs = 10000;
  int64_t m = 200;
  int64_t gap_lo = 600;
  int64_t gap_hi = 1800;
  double delta = 0.1;
  double c0 = 1.0;
  int64_t n_ref = 20000;
  double perturb_fraction = 0.9;
  uint64_t seed = 11;
};

// With estimates inside the (c0/4)*sqrt(b log n) envelope, no kept index
// may ever align ahead of its true position.
SuiteReport validate_never_ahead(const NeverAheadParams& p = {});

struct BehindBoundParams {
  std::vector<double> deltas = {0.001, 0.005, 0.01};
  int64_t runs = 100000;
  int64_t m = 30;
  int64_t chain_lead = 20000;
  int64_t chain_small = 700;
  int64_t random_instances = 10;
  int64_t gap_lo = 600;
  int64_t gap_hi = 1800;
  double c0 = 1.0;
  int64_t n_ref = 20000;
  double ratio_lo = 5.0;
  double ratio_hi = 20.0;
  uint64_t seed = 12;
};

// P(final alignment behind) <= 200*delta on the adversarial chain and on
// random instances; on the chain the rate also scales linearly in delta.
SuiteReport validate_behind_bound(const BehindBoundParams& p = {});

struct OracleMcParams {
  int64_t mc_samples = 1000000;
  uint64_t seed = 13;
};

// Exact enumeration against Monte Carlo (4 sigma per outcome), the
// closed-form chain probabilities, the delta->0 limit, the windowed
// p_k = 0 beyond K, and p_k <= D_k * delta^k at delta = 1e-7.
SuiteReport validate_oracle_mc(const OracleMcParams& p = {});

struct OnesCountParams {
  int64_t n = 1200;
  int64_t L = 40;
  int64_t t = 20;
  double delta = 0.1;
  int64_t samples = 100000;
  uint64_t seed = 14;
};

// Surviving-one count is Bin(t, 1-delta); surviving length is
// Bin(n, 1-delta). Sample means must sit within 3 standard errors.
SuiteReport validate_ones_count(const OnesCountParams& p = {});

struct FineCheckParams {
  int64_t n = 20000;
  int64_t L = 600;
  int64_t t = 30;
  double delta = 0.05;
  double c0 = 1.0;
  int64_t coarse_reps = 64;
  int64_t target_accepted = 100000;  // across all gaps
  uint64_t seed = 15;
};

// Every accepted forward/backward pair must identify the true pair of
// ones (checked against run-level provenance); the acceptance rate must
// clear 0.8 at these settings.
SuiteReport validate_fine_soundness(const FineCheckParams& p = {});

struct FineDistributionParams {
  FineCheckParams base;
  int64_t probe_m = 15;
  int64_t min_accepted = 10000;
};

// Accepted gap samples at a fixed m follow Bin(a_m, 1-delta): mean within
// 3 standard errors, variance within 20%.
SuiteReport validate_fine_distribution(const FineDistributionParams& p = {});

}  // namespace septrace
