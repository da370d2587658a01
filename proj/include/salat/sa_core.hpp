#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "salat/exact.hpp"
#include "salat/numtheory.hpp"

namespace salat {

/// strict: the multiplier 1728 (nk)^(3n+15), n >= 8.
/// small_n: the smallest power of two above the sufficiency bound of the gap
/// argument; admits n >= 2 so exact oracles can be cross-checked at desk scale.
enum class Mode { strict, small_n };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

struct GeneralInstance {
  std::size_t n = 0;
  Int k = 1;
  IntMatrix m;
  Gamma gamma;
  NormKind norm = NormKind::L2;
  std::optional<RatVector> target;
};

/// Checks every input constraint; throws InvalidInstance, DimensionTooSmall,
/// SingularMatrix or TargetDenominatorTooLarge.
void validate(const GeneralInstance& inst, Mode mode);

struct InflationRecord {
  std::size_t iteration = 0;  // 0 = after the initial scaling (and the tie-break bump)
  std::uint64_t shift = 0;    // x_i added in this for-loop iteration
  Int det_b1;                 // det of the leading i x i block of B1 after the shift
  Int det_b2;
  Int max_entry;              // max |entry| of M~ after this step
  Int shift_bound;            // ceil(log2(c (2nk)^n))^2, the Jacobsthal-style budget
  unsigned bumps = 0;         // +1 entry bumps that made the determinant pair non-proportional
};

struct InflationTrace {
  std::vector<InflationRecord> records;
  bool tie_bumped = false;  // the "make elements different" branch fired
};

struct SAInstance {
  std::size_t n = 0;
  Int k;
  Mode mode = Mode::strict;
  Int c;
  RatVector x;
  IntMatrix m_tilde;
  Int b1;
  Int b2;
  Int det_b1;
  Int det_b2;
  IntMatrix perturbation;  // A = M~ - c adj M
  InflationTrace trace;
};

/// c for the given mode. strict throws DimensionTooSmall when n < 8.
Int multiplier_c(std::size_t n, const Int& k, Mode mode);

/// c (2nk)^n, the entry bound that holds at every step of sa_approximate.
Int entry_bound(std::size_t n, const Int& k, const Int& c);

/// B1 / B2: M~ with column n and row 1 / row 2 removed.
IntMatrix b1_matrix(const IntMatrix& m_tilde);
IntMatrix b2_matrix(const IntMatrix& m_tilde);

/// The column appended to M~ so that the columns generate Z^n:
/// (b1, -b2, 0, ..., 0). Cofactor expansion along the last column gives
/// det = (-1)^(n+1) (b1 det B1 + b2 det B2) = +-1 for this sign pattern.
IntVector generator_column(const SAInstance& sa);

/// Approximates M Z^n by the SA lattice generated by I_n and x.
SAInstance sa_approximate(const GeneralInstance& inst, Mode mode, bool keep_trace = true);

struct GenerationDetail {
  bool unimodular_replacement = false;  // |det(M~ with last column := generator)| = 1
  bool hnf_identity = false;            // hnf([M~ | generator]) = I_n
};

GenerationDetail generation_detail(const IntMatrix& m, const SAInstance& sa);
/// True iff the columns of M~ together with the generator column span Z^n.
/// Throws std::logic_error if the determinant and HNF criteria disagree.
bool generation_check(const IntMatrix& m, const SAInstance& sa);

/// Smallest b >= 0 (modulo lcd(x)) with y - b x integral. Throws NoSolution.
Int recover_coefficient(const RatVector& y, const RatVector& x);

}  // namespace salat
