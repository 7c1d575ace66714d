#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "septrace/core.hpp"

using namespace septrace;

TEST_CASE("from_bits parses runs around ones") {
  SeparatedString s = from_bits("01001");
  CHECK(s.gaps == std::vector<int64_t>{1, 2, 0});
  CHECK(s.t() == 2);
  CHECK(s.length() == 5);

  CHECK(from_bits("0000").gaps == std::vector<int64_t>{4});
  CHECK(from_bits("0000").t() == 0);

  SeparatedString one = from_bits("1");
  CHECK(one.gaps == std::vector<int64_t>{0, 0});
  CHECK(one.t() == 1);
  CHECK(one.separation == kUnboundedGap);
}

TEST_CASE("to_bits inverts from_bits") {
  SeparatedString s;
  s.gaps = {1, 2, 0};
  CHECK(to_bits(s) == "01001");
  s.gaps = {0, 0};
  CHECK(to_bits(s) == "1");
  s.gaps = {3};
  CHECK(to_bits(s) == "000");
}

TEST_CASE("round trip over random bitstrings") {
  Rng rng(101);
  for (int iter = 0; iter < 500; ++iter) {
    int64_t len = rng.uniform_int(0, 64);
    double ones_p = rng.next_double();
    BitString bits;
    for (int64_t i = 0; i < len; ++i) bits.push_back(rng.bernoulli(ones_p) ? '1' : '0');
    CHECK(to_bits(from_bits(bits)) == bits);
  }
}

TEST_CASE("reverse_bits") {
  CHECK(reverse_bits("0110") == "0110");
  CHECK(reverse_bits("001") == "100");
  CHECK(reverse_bits("") == "");
}

TEST_CASE("gap_sum basics and bounds") {
  std::vector<int64_t> seq = {3, 5, 7};
  CHECK(gap_sum(seq, 0, 2) == 8);
  CHECK(gap_sum(seq, 1, 1) == 0);
  CHECK(gap_sum(seq, 0, 3) == 15);
  CHECK_THROWS_AS(gap_sum(seq, 0, 4), std::out_of_range);
  CHECK_THROWS_AS(gap_sum(seq, 2, 1), std::out_of_range);
}

TEST_CASE("gap_sum is additive over splits") {
  Rng rng(102);
  std::vector<int64_t> seq;
  for (int i = 0; i < 40; ++i) seq.push_back(rng.uniform_int(0, 50));
  for (int iter = 0; iter < 200; ++iter) {
    int64_t j = rng.uniform_int(0, 40);
    int64_t j3 = rng.uniform_int(j, 40);
    int64_t j2 = rng.uniform_int(j, j3);
    CHECK(gap_sum(seq, j, j2) + gap_sum(seq, j2, j3) == gap_sum(seq, j, j3));
  }
}

TEST_CASE("random_separated respects the invariants for any seed") {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    int64_t n = 10 + static_cast<int64_t>(seed) * 7;
    int64_t L = 3;
    int64_t t = std::min<int64_t>(n / (L + 1), 4);
    SeparatedString s = random_separated(n, L, t, rng);
    s.check();
    CHECK(s.length() == n);
    CHECK(s.t() == t);
    if (t >= 2) CHECK(s.min_interior_gap() >= L);
  }
}

TEST_CASE("random_separated edge cases") {
  Rng rng(103);
  CHECK(to_bits(random_separated(5, 5, 0, rng)) == "00000");
  CHECK_THROWS_AS(random_separated(4, 3, 2, rng), std::invalid_argument);

  Rng r1(7), r2(7);
  SeparatedString a = random_separated(10, 3, 2, r1);
  SeparatedString b = random_separated(10, 3, 2, r2);
  CHECK(a.gaps == b.gaps);  // deterministic given the seed
}

TEST_CASE("pad extends the boundary runs only") {
  SeparatedString s = from_bits("10010");
  SeparatedString padded = pad(s, 3);
  CHECK(to_bits(padded) == "000" + to_bits(s) + "000");
  CHECK(padded.t() == s.t());
  CHECK(padded.gaps[1] == s.gaps[1]);
}

TEST_CASE("round_ties_even") {
  CHECK(round_ties_even(2.3) == 2.0);
  CHECK(round_ties_even(2.7) == 3.0);
  CHECK(round_ties_even(0.5) == 0.0);
  CHECK(round_ties_even(1.5) == 2.0);
  CHECK(round_ties_even(2.5) == 2.0);
  CHECK(round_ties_even(-0.5) == 0.0);
  CHECK(round_ties_even(-1.5) == -2.0);
}

TEST_CASE("edit_distance") {
  CHECK(edit_distance("", "010") == 3);
  CHECK(edit_distance("0101", "0101") == 0);
  CHECK(edit_distance("0101", "0011") == 2);
  CHECK(edit_distance("kitten", "sitting") == 3);
}
