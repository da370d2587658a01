#pragma once

#include <cstdint>
#include <map>

#include "salat/exact.hpp"

namespace salat {

/// a*s + b*t = g with g = gcd(a, b) >= 0 and s the minimal-|s| representative
/// (|s| <= |b/g|/2 when b != 0, positive on a tie).
struct BezoutResult {
  Int g;
  Int s;
  Int t;
};

/// Throws BothZero when a = b = 0.
BezoutResult ext_gcd(const Int& a, const Int& b);

/// Default safety cap for coprime_shift scans.
inline constexpr std::uint64_t kShiftSearchCap = 1u << 20;

/// Smallest x >= 0 with gcd(a0 + d1*x, b0 + d2*x) = 1.
///
/// Requires gcd(d1, d2) = 1 (HypothesisViolated otherwise). With s*d1 + t*d2 = 1
/// the pair is unimodularly equivalent to (d2*a0 - d1*b0, s*a0 + t*b0 + x), so
/// the scan only runs gcd(D, u + x). When D = 0 the answer is solved in closed
/// form or NoSolution is raised; a scan longer than `cap` raises SearchCapExceeded.
std::uint64_t coprime_shift(const Int& a0, const Int& d1, const Int& b0, const Int& d2,
                            std::uint64_t cap = kShiftSearchCap);

/// Largest n accepted by jacobsthal().
inline constexpr std::uint64_t kJacobsthalCap = 1u << 24;

/// Jacobsthal's function j(n): the smallest m such that every run of m
/// consecutive integers contains one coprime to n. Computed as the largest gap
/// between consecutive residues coprime to n over one period.
std::uint64_t jacobsthal(std::uint64_t n);

struct GapHistogram {
  std::map<std::uint64_t, std::uint64_t> counts;  // shift value -> occurrences
  std::uint64_t samples = 0;

  void add(std::uint64_t x, std::uint64_t times = 1);
  void merge(const GapHistogram& other);
  /// Exact mean sum(x * count) / samples.
  Rat mean() const;
  /// counts[x] / samples.
  Rat frequency(std::uint64_t x) const;
};

/// For `samples` pairs (a, b) drawn uniformly from [2^(bits-1), 2^bits),
/// records the smallest x >= 0 with gcd(a + x, b) = 1. Samples are split into
/// fixed blocks with seeds derived from (seed, block index), so the result
/// does not depend on how many worker threads run.
GapHistogram coprime_gap_experiment(std::uint64_t samples, unsigned bits, std::uint64_t seed);

}  // namespace salat
