#pragma once

// SAP / CAP / SIAP oracles.
//
// pullback (OracleMode::exact): T = M M~ maps the SA lattice onto M Z^n and
// T / (c det M) = I + E is a near-isometry. Every SA vector we care about
// therefore has its image in a ball of radius rho * (optimum on M Z^n), with
// rho = (1 + eps) / (1 - eps). Enumerating that ball on the small-entry basis
// M and pulling candidates back through T^-1 gives a certified exact answer.
//
// direct: enumerate the SA lattice itself with basis q M~^-1 (n <= 5).
//
// adversarial: among every valid gamma-answer return the worst one.

#include <optional>
#include <string_view>
#include <vector>

#include "salat/enumeration.hpp"
#include "salat/exact.hpp"
#include "salat/sa_core.hpp"

namespace salat {

struct SABasis {
  Int q;        // lcd(x)
  IntMatrix b;  // hnf([q I | q x]); the SA lattice is b / q
};

SABasis sa_basis(const RatVector& x);

enum class OracleMode { exact, direct, adversarial };

std::string_view to_string(OracleMode m);
OracleMode parse_oracle_mode(std::string_view s);

/// Largest n served by direct mode.
inline constexpr std::size_t kDirectMaxDim = 5;

struct OracleContext {
  IntMatrix m;
  IntMatrix m_tilde;  // may be empty for direct mode (falls back to sa_basis)
  Int k = 1;
  Int c = 1;
  NormKind norm = NormKind::L2;
  OracleMode mode = OracleMode::exact;
  EnumOptions enum_opts;
};

OracleContext make_context(const GeneralInstance& inst, const SAInstance& sa, OracleMode mode,
                           const EnumOptions& opts = {});

struct OracleAnswer {
  std::vector<Int> coefficients;  // b0 for SAP/CAP, b1..bn for SIAP
  std::vector<RatVector> vectors; // {b x} (SAP, SIAP) or {b0 x - t'} (CAP)
  Rat achieved;                   // norm value; max over vectors for SIAP
  std::optional<Rat> optimal;
  bool certified = false;         // achieved <= gamma * optimal was checked
  OracleMode mode = OracleMode::exact;
  std::uint64_t nodes = 0;
  std::size_t candidates = 0;
};

/// Near-isometry bookkeeping for the pullback ball.
struct Sandwich {
  Rat eps_hat;        // (k n^4 L^2 + k n^2 Lc^2) / |c det M|, ceil-log2 terms
  Rat e_inf;          // exact ||E|| in the max-row-sum norm
  Rat e_one;          // exact ||E|| in the max-column-sum norm
  Rat eps;            // upper bound on ||E||_p actually used
  Rat value_factor;   // rho (L1, LINF) or rho^2 (L2)
};

/// ceil-log2 form of the near-isometry bound, with L = ceil(log2(2nk)) and
/// Lc = ceil(log2 c).
Rat epsilon_hat(std::size_t n, const Int& k, const Int& c, const Int& det_m);

/// E = (M M~ - c det M I) / (c det M). eps = max(eps_hat, certified ||E||_p)
/// where the L2 certificate is sqrt(||E||_1 ||E||_inf) <= max of the two.
/// Throws HypothesisViolated if eps >= 1.
Sandwich pullback_sandwich(const IntMatrix& m, const IntMatrix& m_tilde, const Int& k, const Int& c, NormKind p);

OracleAnswer sap_oracle(const Gamma& gamma, const RatVector& x, const OracleContext& ctx);
OracleAnswer cap_oracle(const Gamma& gamma, const RatVector& x, const RatVector& t_prime, const OracleContext& ctx);
OracleAnswer siap_oracle(const Gamma& gamma, const RatVector& x, const OracleContext& ctx);

}  // namespace salat
