#include "septrace/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace septrace {

bool is_bit_string(const BitString& bits) {
  return std::all_of(bits.begin(), bits.end(),
                     [](char c) { return c == '0' || c == '1'; });
}

BitString reverse_bits(const BitString& bits) {
  return BitString(bits.rbegin(), bits.rend());
}

int64_t SeparatedString::length() const {
  return std::accumulate(gaps.begin(), gaps.end(), int64_t{0}) + t();
}

int64_t SeparatedString::min_interior_gap() const {
  if (t() <= 1) return kUnboundedGap;
  return *std::min_element(gaps.begin() + 1, gaps.end() - 1);
}

void SeparatedString::check() const {
  if (gaps.empty()) throw std::invalid_argument("separated string needs at least one run");
  for (int64_t g : gaps) {
    if (g < 0) throw std::invalid_argument("negative run length");
  }
  if (t() >= 2 && min_interior_gap() < separation) {
    throw std::invalid_argument("interior run shorter than the separation parameter");
  }
}

SeparatedString from_bits(const BitString& bits) {
  if (!is_bit_string(bits)) throw std::invalid_argument("bitstring must be over '0'/'1'");
  SeparatedString s;
  int64_t run = 0;
  for (char c : bits) {
    if (c == '1') {
      s.gaps.push_back(run);
      run = 0;
    } else {
      ++run;
    }
  }
  s.gaps.push_back(run);
  s.separation = s.min_interior_gap();
  return s;
}

BitString to_bits(const SeparatedString& s) {
  BitString bits;
  bits.reserve(static_cast<size_t>(s.length()));
  for (size_t i = 0; i < s.gaps.size(); ++i) {
    if (i > 0) bits.push_back('1');
    bits.append(static_cast<size_t>(s.gaps[i]), '0');
  }
  return bits;
}

SeparatedString pad(const SeparatedString& s, int64_t pad) {
  if (pad < 0) throw std::invalid_argument("pad must be non-negative");
  SeparatedString out = s;
  out.gaps.front() += pad;
  out.gaps.back() += pad;
  return out;
}

int64_t gap_sum(std::span<const int64_t> seq, int64_t j, int64_t j2) {
  if (j < 0 || j > j2 || j2 > static_cast<int64_t>(seq.size())) {
    throw std::out_of_range("gap_sum indices out of range");
  }
  int64_t total = 0;
  for (int64_t i = j; i < j2; ++i) total += seq[static_cast<size_t>(i)];
  return total;
}

SeparatedString random_separated(int64_t n, int64_t L, int64_t target_t, Rng& rng) {
  if (n < 0 || L < 0 || target_t < 0) throw std::invalid_argument("negative parameter");
  if (target_t * (L + 1) > n) {
    throw std::invalid_argument("infeasible parameters: need target_t * (L + 1) <= n");
  }
  const int64_t t = target_t;
  const int64_t interior = std::max<int64_t>(t - 1, 0);
  const int64_t slack = n - t - interior * L;

  // Uniform composition of `slack` into t+1 parts: choose t distinct cut
  // positions in [1, slack + t] and read off the differences.
  std::vector<int64_t> cuts;
  cuts.reserve(static_cast<size_t>(t) + 2);
  cuts.push_back(0);
  if (t > 0) {
    std::unordered_set<int64_t> seen;
    std::vector<int64_t> picks;
    picks.reserve(static_cast<size_t>(t));
    // Floyd's sampling: t distinct values from [1, slack + t].
    for (int64_t i = slack + 1; i <= slack + t; ++i) {
      int64_t v = rng.uniform_int(1, i);
      if (!seen.insert(v).second) v = i;
      seen.insert(v);
      picks.push_back(v);
    }
    std::sort(picks.begin(), picks.end());
    cuts.insert(cuts.end(), picks.begin(), picks.end());
  }
  cuts.push_back(slack + t + 1);

  SeparatedString s;
  s.separation = L;
  s.gaps.reserve(static_cast<size_t>(t) + 1);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    int64_t part = cuts[i + 1] - cuts[i] - 1;
    bool is_interior = i > 0 && i + 2 < cuts.size();
    s.gaps.push_back(part + (is_interior ? L : 0));
  }
  s.check();
  return s;
}

int64_t edit_distance(const BitString& a, const BitString& b) {
  const size_t rows = a.size() + 1, cols = b.size() + 1;
  std::vector<int64_t> prev(cols), cur(cols);
  std::iota(prev.begin(), prev.end(), int64_t{0});
  for (size_t i = 1; i < rows; ++i) {
    cur[0] = static_cast<int64_t>(i);
    for (size_t j = 1; j < cols; ++j) {
      int64_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[cols - 1];
}

double round_ties_even(double x) {
  double floor_x = std::floor(x);
  double frac = x - floor_x;
  if (frac > 0.5) return floor_x + 1.0;
  if (frac < 0.5) return floor_x;
  return std::fmod(floor_x, 2.0) == 0.0 ? floor_x : floor_x + 1.0;
}

}  // namespace septrace
