#include "septrace/channel.hpp"

#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace septrace {

void ChannelParams::check() const {
  if (!(delta >= 0.0) || delta >= 1.0) {
    throw std::invalid_argument("delta must lie in [0, 1)");
  }
  if (delta > kWorstCaseDelta) {
    std::fprintf(stderr,
                 "septrace: warning: delta=%g exceeds the worst-case bound %g; "
                 "success is an empirical matter at this rate\n",
                 delta, kWorstCaseDelta);
  }
}

int64_t TraceGapProfile::length() const {
  return std::accumulate(gaps.begin(), gaps.end(), int64_t{0}) + ones();
}

TraceGapProfile TraceGapProfile::reversed() const {
  return from_gaps(std::vector<int64_t>(gaps.rbegin(), gaps.rend()));
}

TraceGapProfile TraceGapProfile::from_gaps(std::vector<int64_t> gaps) {
  if (gaps.empty()) throw std::invalid_argument("profile needs at least one gap");
  TraceGapProfile p;
  p.gaps = std::move(gaps);
  p.positions.reserve(p.gaps.size() + 1);
  p.positions.push_back(0);
  int64_t pos = 0;
  for (size_t q = 0; q + 1 < p.gaps.size(); ++q) {
    pos += p.gaps[q] + 1;
    p.positions.push_back(pos);
  }
  p.positions.push_back(p.length() + 1);
  return p;
}

Trace sample_trace(const SeparatedString& x, double delta, Rng& rng) {
  const BitString bits = to_bits(x);
  Trace tr;
  tr.retained.emplace();
  tr.bits.reserve(bits.size());
  tr.retained->reserve(bits.size());
  for (size_t i = 0; i < bits.size(); ++i) {
    if (rng.next_double() < delta) continue;  // deleted
    tr.bits.push_back(bits[i]);
    tr.retained->push_back(static_cast<int64_t>(i));
  }
  return tr;
}

Trace sample_padded_trace(const SeparatedString& x, int64_t padding, double delta, Rng& rng) {
  return sample_trace(pad(x, padding), delta, rng);
}

TraceGapProfile profile_of_bits(const BitString& bits) {
  if (!is_bit_string(bits)) throw std::invalid_argument("trace must be over '0'/'1'");
  std::vector<int64_t> gaps;
  int64_t run = 0;
  for (char c : bits) {
    if (c == '1') {
      gaps.push_back(run);
      run = 0;
    } else {
      ++run;
    }
  }
  gaps.push_back(run);
  return TraceGapProfile::from_gaps(std::move(gaps));
}

TraceGapProfile gap_profile(const Trace& tr) { return profile_of_bits(tr.bits); }

Trace trace_from_retained(const BitString& x, std::span<const int64_t> retained) {
  Trace tr;
  tr.retained.emplace(retained.begin(), retained.end());
  tr.bits.reserve(retained.size());
  int64_t prev = -1;
  for (int64_t idx : retained) {
    if (idx <= prev || idx >= static_cast<int64_t>(x.size())) {
      throw std::invalid_argument("retained indices must be strictly increasing and in range");
    }
    tr.bits.push_back(x[static_cast<size_t>(idx)]);
    prev = idx;
  }
  return tr;
}

int64_t RunTrace::ones_kept() const {
  return std::accumulate(kept_ones.begin(), kept_ones.end(), int64_t{0});
}

TraceGapProfile RunTrace::profile() const {
  std::vector<int64_t> gaps;
  gaps.reserve(kept_zeros.size());
  int64_t cur = kept_zeros[0];
  for (size_t i = 1; i < kept_zeros.size(); ++i) {
    if (kept_ones[i - 1]) {
      gaps.push_back(cur);
      cur = kept_zeros[i];
    } else {
      cur += kept_zeros[i];
    }
  }
  gaps.push_back(cur);
  return TraceGapProfile::from_gaps(std::move(gaps));
}

int64_t RunTrace::source_one(int64_t q) const {
  if (q < 1) throw std::out_of_range("one index is 1-based");
  int64_t seen = 0;
  for (size_t i = 0; i < kept_ones.size(); ++i) {
    if (kept_ones[i] && ++seen == q) return static_cast<int64_t>(i) + 1;
  }
  throw std::out_of_range("fewer surviving ones than requested");
}

RunTrace sample_run_trace(std::span<const int64_t> gaps, double delta, Rng& rng) {
  RunTrace rt;
  rt.kept_zeros.reserve(gaps.size());
  rt.kept_ones.reserve(gaps.size() - 1);
  for (size_t i = 0; i < gaps.size(); ++i) {
    if (i > 0) rt.kept_ones.push_back(rng.next_double() < delta ? 0 : 1);
    rt.kept_zeros.push_back(gaps[i] - rng.binomial(gaps[i], delta));
  }
  return rt;
}

int64_t sample_ones_count(int64_t t, double delta, Rng& rng) {
  return t - rng.binomial(t, delta);
}

RunTrace run_view(const SeparatedString& x, const Trace& tr) {
  if (!tr.retained) throw std::invalid_argument("run_view needs trace provenance");
  RunTrace rt;
  const int64_t t = x.t();
  rt.kept_zeros.assign(x.gaps.size(), 0);
  rt.kept_ones.assign(static_cast<size_t>(t), 0);

  // 0-based index of the j-th one (1-based j) is gaps[0..j) summed + j - 1.
  std::vector<int64_t> one_at(static_cast<size_t>(t));
  int64_t acc = 0;
  for (int64_t j = 0; j < t; ++j) {
    acc += x.gaps[static_cast<size_t>(j)];
    one_at[static_cast<size_t>(j)] = acc + j;
  }

  size_t run = 0;
  for (int64_t idx : *tr.retained) {
    while (run < one_at.size() && idx > one_at[run]) ++run;
    if (run < one_at.size() && idx == one_at[run]) {
      rt.kept_ones[run] = 1;
    } else {
      rt.kept_zeros[run] += 1;
    }
  }
  return rt;
}

}  // namespace septrace
