#pragma once

// Exhaustive lattice enumeration over exact rationals (Fincke-Pohst with a
// Schnorr-Euchner zig-zag per level). Bases are given column-wise: the
// lattice is B Z^n. L1 and LINF searches prune with the L2 ball that
// contains the requested norm ball and filter leaves by the true norm.

#include <cstdint>
#include <functional>
#include <vector>

#include "salat/exact.hpp"

namespace salat {

struct EnumOptions {
  std::uint64_t node_budget = 10'000'000;
};

struct EnumStats {
  std::uint64_t nodes = 0;
};

struct LatticePoint {
  IntVector coeffs;
  IntVector vector;  // B * coeffs
  Rat norm;          // norm_value(vector) or norm_value(vector - target)
};

struct SuccessiveMinima {
  std::vector<Rat> lambda;  // norm values, non-decreasing
  std::vector<LatticePoint> witnesses;
};

/// Shortest nonzero vector. Among minimizers: sign-normalize the coefficient
/// vector (first nonzero entry positive) and take the lexicographically
/// greatest, so B = I picks e1.
LatticePoint enum_shortest(const IntMatrix& basis, NormKind p, const EnumOptions& opts = {},
                           EnumStats* stats = nullptr);

/// Lattice vectors a search may return; the zero vector is never offered.
using PointFilter = std::function<bool(const IntVector& v)>;

/// enum_shortest restricted to vectors accepted by `accept`. The radius grows
/// until something is accepted, so an empty filter ends in BudgetExceeded.
LatticePoint enum_shortest_if(const IntMatrix& basis, NormKind p, const PointFilter& accept,
                              const EnumOptions& opts = {}, EnumStats* stats = nullptr);

/// Closest lattice vector to `target` (distance 0 allowed). Ties go to the
/// lexicographically greatest coefficient vector.
LatticePoint enum_closest(const IntMatrix& basis, const RatVector& target, NormKind p, const EnumOptions& opts = {},
                          EnumStats* stats = nullptr);

/// Greedy successive minima: the i-th witness is the shortest lattice vector
/// independent of the previous ones (same tie-break as enum_shortest).
SuccessiveMinima enum_successive(const IntMatrix& basis, NormKind p, const EnumOptions& opts = {},
                                 EnumStats* stats = nullptr);

/// enum_successive over the accepted vectors only.
SuccessiveMinima enum_successive_if(const IntMatrix& basis, NormKind p, const PointFilter& accept,
                                    const EnumOptions& opts = {}, EnumStats* stats = nullptr);

/// Every lattice point v with norm_value(v - target) <= bound (target = 0 when
/// null), sorted by (norm, coefficients).
std::vector<LatticePoint> enum_within(const IntMatrix& basis, const RatVector* target, NormKind p, const Rat& bound,
                                      bool exclude_zero, const EnumOptions& opts = {}, EnumStats* stats = nullptr);

}  // namespace salat
