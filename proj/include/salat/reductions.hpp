#pragma once

// SVP -> SAP, SIVP -> SIAP and CVP -> CAP: one sa_approximate call, one oracle
// call, and the answer mapped back through T = M M~.

#include <string>
#include <vector>

#include "salat/oracles.hpp"
#include "salat/sa_core.hpp"

namespace salat {

struct ReductionOptions {
  Mode mode = Mode::small_n;
  OracleMode oracle = OracleMode::exact;
  EnumOptions enum_opts;
};

struct ReductionResult {
  std::string problem;            // "svp", "sivp" or "cvp"
  std::vector<IntVector> vectors; // v = M z0, in M Z^n
  std::vector<IntVector> z0;      // z0 = M~ y, integral
  OracleAnswer answer;
  SAInstance sa;
  Rat achieved;                   // ||v|| (svp), max ||v_i|| (sivp), ||v - t|| (cvp), as norm values
};

/// The target of `inst`, if any, is ignored.
ReductionResult reduce_svp(const GeneralInstance& inst, const ReductionOptions& opts = {});
ReductionResult reduce_sivp(const GeneralInstance& inst, const ReductionOptions& opts = {});
/// Needs inst.target; throws InvalidInstance without one.
ReductionResult reduce_cvp(const GeneralInstance& inst, const ReductionOptions& opts = {});

}  // namespace salat
