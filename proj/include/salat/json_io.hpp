#pragma once

// JSON forms. Integers are decimal strings and rationals "num/den", so no
// value is ever squeezed through a double or a 64-bit integer.

#include <string>

#include "json.hpp"
#include "salat/numtheory.hpp"
#include "salat/oracles.hpp"
#include "salat/reductions.hpp"
#include "salat/sa_core.hpp"
#include "salat/verify.hpp"

namespace salat {

using Json = nlohmann::ordered_json;

Json to_json(const Int& a);
Json to_json(const Rat& q);
Json to_json(const IntVector& v);
Json to_json(const RatVector& v);
Json to_json(const IntMatrix& m);

Int int_from_json(const Json& j);
Rat rat_from_json(const Json& j);
IntVector int_vector_from_json(const Json& j);
RatVector rat_vector_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);

/// {"n", "k", "m", "gamma", "norm", "target"?}
Json instance_to_json(const GeneralInstance& inst);
GeneralInstance instance_from_json(const Json& j);

/// {"instance", "mode", "c", "x", "m_tilde", "b1", "b2", "det_b1", "det_b2", "trace"}
Json sa_to_json(const SAInstance& sa, const GeneralInstance& inst);
/// Inverse of sa_to_json; the instance is returned through `inst`.
SAInstance sa_from_json(const Json& j, GeneralInstance& inst);

Json answer_to_json(const OracleAnswer& a);
/// {problem, n, k, gamma, norm, v, z0, achieved, certified, ...}
Json reduction_to_json(const ReductionResult& r, const GeneralInstance& inst);
Json report_to_json(const CheckReport& r);
Json histogram_to_json(const GapHistogram& h);

Json parse_json_text(const std::string& text);

}  // namespace salat
