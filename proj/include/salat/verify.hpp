#pragma once

// Executable forms of the quantitative lemmas. Every comparison is exact.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "salat/numtheory.hpp"
#include "salat/oracles.hpp"
#include "salat/sa_core.hpp"

namespace salat {

using Fields = std::vector<std::pair<std::string, std::string>>;

struct CheckReport {
  std::string name;
  bool pass = false;
  Fields measured;
  Fields bounds;
  std::vector<std::string> notes;
  Fields context;
};

/// Every trace record and the final M~ stay within c (2nk)^n.
CheckReport check_entry_inflation(const SAInstance& sa, const GeneralInstance& inst);

/// Max bitlength over the numerators and denominators of x. strict: against
/// bitlength(1728^(2n) (2nk)^(8n^2+32n+1)). small_n: against the Hadamard
/// bound 2 (E^n n^ceil(n/2))^2 with E = c (2nk)^n.
CheckReport check_bitlength(const SAInstance& sa, const GeneralInstance& inst);
std::size_t max_bitlength(const RatVector& x);
Int bitlength_bound(const SAInstance& sa, const GeneralInstance& inst);

/// I + E = M M~ / (c det M). LINF and L1 operator norms exactly, L2 through
/// the 2n probes e_i and e_i + e_(i+1 mod n); all against [1 - eps_hat, 1 + eps_hat].
CheckReport check_opnorm_sandwich(const GeneralInstance& inst, const SAInstance& sa);

/// For every answer y and candidate w: ||y|| <= gamma ||w|| must imply
/// ||T y|| <= gamma ||T w|| with T = M M~.
CheckReport check_gap_preserved(const IntMatrix& m, const IntMatrix& m_tilde, const Gamma& gamma, NormKind p,
                                const std::vector<RatVector>& answers, const std::vector<RatVector>& candidates);

/// SA-lattice vectors whose images lie in the ball of radius gamma rho lambda_1(M Z^n).
std::vector<RatVector> sa_ball(const OracleContext& ctx, const Gamma& gamma);

/// prod snf_diagonal(hnf([d I_n | x])) == d^(n-1). Holds when gcd(d, x) = 1.
CheckReport check_covolume(const Int& d, const IntVector& x);

/// lambda_1 <= |det M|, comparing norm values (squares for L2).
CheckReport check_minkowski(const IntMatrix& m, const Rat& lambda1, NormKind p);

/// Every shift x_i of sa_approximate over `runs` instances generate_instance(n, k,
/// derive_seed(seed, r)). Runs go in parallel; the histogram does not depend
/// on scheduling.
GapHistogram perturbation_stats(std::size_t runs, std::size_t n, const Int& k, std::uint64_t seed,
                                Mode mode = Mode::strict);

/// The whole suite on one instance. The enumeration-based checks (gap and
/// Minkowski) run only when `with_enumeration` is set.
std::vector<CheckReport> run_checks(const GeneralInstance& inst, const SAInstance& sa, bool with_enumeration,
                                    const EnumOptions& opts = {});

}  // namespace salat
