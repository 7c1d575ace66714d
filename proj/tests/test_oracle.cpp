#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "septrace/instances.hpp"
#include "septrace/oracle.hpp"

using namespace septrace;

namespace {
const AlignConfig kChainCfg{1.0, 1000, LogBase::natural};
}

TEST_CASE("catalan numbers, exactly") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(1) == 1);
  CHECK(catalan(2) == 2);
  CHECK(catalan(3) == 5);
  CHECK(catalan(4) == 14);
  CHECK(catalan(10) == 16796);
  CHECK(catalan(30) == mpz_class("3814986502092304"));
  CHECK(catalan(64) == mpz_class("368479169875816659479009042713546950"));

  for (int64_t k = 0; k <= 20; ++k) {
    mpz_class sum = 0;
    for (int64_t i = 0; i <= k; ++i) sum += catalan(i) * catalan(k - i);
    CHECK(sum == catalan(k + 1));
  }
  for (int64_t k = 1; k <= 30; ++k) {
    CHECK(catalan(k + 1) >= 2 * catalan(k));
    CHECK(catalan(k + 1) <= 4 * catalan(k));
  }
}

TEST_CASE("d_k values") {
  CHECK(d_k(0) == 1);
  CHECK(d_k(1) == 100);
  CHECK(d_k(2) == 2000000);
  CHECK(d_k(3) == mpz_class("50000000000"));  // 100^5 * C_3
}

TEST_CASE("a single forced step is always exact") {
  std::vector<int64_t> a = {500};
  BehindDistribution d = enumerate_outcomes(a, exact_estimates(a), 0.3, kChainCfg, {});
  REQUIRE(d.by_offset.count(0) == 1);
  CHECK(d.by_offset.at(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.failed == 0.0);
  CHECK(d.pk[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (size_t k = 1; k < d.pk.size(); ++k) CHECK(d.pk[k] == 0.0);
}

TEST_CASE("probabilities sum to one") {
  Rng rng(60);
  std::vector<int64_t> a = random_gaps(9, 100, 400, rng);
  GapEstimates b = perturbed_estimates(a, 0.8, kChainCfg, rng);
  BehindDistribution d = enumerate_outcomes(a, b, 0.07, kChainCfg, {});
  CHECK(std::abs(d.total() - 1.0) <= 1e-12);
}

TEST_CASE("chain distribution follows the closed form") {
  std::vector<int64_t> a = chain_gaps(10, 10000, 150);
  GapEstimates b = exact_estimates(a);
  const double delta = 0.01;
  BehindDistribution d = enumerate_outcomes(a, b, delta, kChainCfg, {});

  // Ending k behind is the event that the first k ones were deleted, up
  // to mid-chain slips of order delta^4.
  CHECK(d.prob_behind_at_least(1) / delta == doctest::Approx(1.0).epsilon(0.02));
  CHECK(d.prob_behind_at_least(2) / (delta * delta) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(d.failed == 0.0);
  for (const auto& [offset, p] : d.by_offset) {
    CHECK(offset <= 0);  // estimates equal the truth: never ahead
    CHECK(p >= 0.0);
  }
}

TEST_CASE("exact alignment dominates as delta vanishes") {
  Rng rng(61);
  std::vector<int64_t> a = random_gaps(12, 600, 1800, rng);
  AlignConfig cfg{1.0, 20000, LogBase::natural};
  BehindDistribution d = enumerate_outcomes(a, exact_estimates(a), 1e-9, cfg, {});
  CHECK(d.by_offset.at(0) >= 1.0 - 1e-7);
}

TEST_CASE("the window condition zeroes p_k beyond K") {
  std::vector<int64_t> a = chain_gaps(10, 10000, 150);
  GapEstimates b = exact_estimates(a);
  OracleConfig windowed;
  windowed.window = 3;
  BehindDistribution d = enumerate_outcomes(a, b, 0.01, kChainCfg, windowed);
  REQUIRE(d.pk.size() == 11);
  CHECK(d.pk[3] > 0.0);
  for (size_t k = 4; k < d.pk.size(); ++k) CHECK(d.pk[k] == 0.0);
  // The unwindowed event does occur; the window is what excludes it.
  CHECK(d.prob_behind_at_least(4) > 0.0);
}

TEST_CASE("enumeration rejects oversized instances") {
  std::vector<int64_t> a(25, 100);
  OracleConfig ocfg;
  CHECK_THROWS_AS(enumerate_outcomes(a, exact_estimates(a), 0.1, kChainCfg, ocfg),
                  std::invalid_argument);
}

TEST_CASE("p_k <= D_k delta^k at lemma-scale deletion rates") {
  std::vector<int64_t> chain = chain_gaps(10, 10000, 150);
  auto checks = check_pk_bound(chain, exact_estimates(chain), 1e-7, kChainCfg, {});
  REQUIRE(checks.size() == 11);
  for (const PkCheck& c : checks) {
    CHECK(c.pass);
    if (c.k == 0) {
      CHECK(c.bound == 1.0);
      CHECK(c.p_k <= 1.0);
    }
  }

  std::vector<int64_t> single = {500};
  auto m1 = check_pk_bound(single, exact_estimates(single), 1e-7, kChainCfg, {});
  REQUIRE(m1.size() == 2);
  CHECK(m1[0].pass);
  CHECK(m1[1].pass);
  CHECK(m1[1].p_k == 0.0);
  CHECK_FALSE(m1[0].informational);

  // Above the worst-case rate the comparison still runs but is flagged.
  auto hot = check_pk_bound(chain, exact_estimates(chain), 0.01, kChainCfg, {});
  for (const PkCheck& c : hot) CHECK(c.informational);
}

TEST_CASE("delta zero concentrates on exact alignment") {
  std::vector<int64_t> a = chain_gaps(6, 5000, 150);
  BehindDistribution d = enumerate_outcomes(a, exact_estimates(a), 0.0, kChainCfg, {});
  CHECK(d.by_offset.at(0) == 1.0);
  CHECK(d.prob_behind_at_least(1) == 0.0);
}
