#pragma once
// Run-length view of separated bitstrings.
//
// A string with t ones is stored as the t+1 zero-run lengths around them:
//   0^gaps[0] 1 0^gaps[1] 1 ... 1 0^gaps[t]
// It is L-separated when every interior run (gaps[1..t-1]) has length >= L.
// The boundary runs gaps[0] and gaps[t] may be any length, including zero.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "septrace/rng.hpp"

namespace septrace {

// ASCII '0'/'1'; also the on-disk representation.
using BitString = std::string;

bool is_bit_string(const BitString& bits);
BitString reverse_bits(const BitString& bits);

// Sentinel separation for strings with at most one 1 (no interior runs).
inline constexpr int64_t kUnboundedGap = std::numeric_limits<int64_t>::max();

struct SeparatedString {
  std::vector<int64_t> gaps;          // t+1 run lengths
  int64_t separation = kUnboundedGap; // guaranteed minimum interior run

  int64_t t() const { return static_cast<int64_t>(gaps.size()) - 1; }
  int64_t length() const;
  int64_t min_interior_gap() const;  // kUnboundedGap when t <= 1

  // Throws std::invalid_argument when the run-length invariants fail.
  void check() const;
};

SeparatedString from_bits(const BitString& bits);
BitString to_bits(const SeparatedString& s);

// Same string with `pad` extra zeros on each end. Interior runs are
// untouched, so separation is preserved.
SeparatedString pad(const SeparatedString& s, int64_t pad);

// Half-open partial sum seq[j] + ... + seq[j2-1]. Throws std::out_of_range.
int64_t gap_sum(std::span<const int64_t> seq, int64_t j, int64_t j2);

// Uniformly random L-separated string of length n with exactly target_t
// ones: the slack beyond the mandatory interior runs is a uniform random
// composition over the t+1 runs. Throws std::invalid_argument when
// target_t * (L + 1) > n.
SeparatedString random_separated(int64_t n, int64_t L, int64_t target_t, Rng& rng);

// Levenshtein distance; used for reporting how far a failed
// reconstruction landed.
int64_t edit_distance(const BitString& a, const BitString& b);

double round_ties_even(double x);

}  // namespace septrace
