#include "salat/reductions.hpp"

#include <algorithm>
#include <stdexcept>

namespace salat {

namespace {

struct Prepared {
  SAInstance sa;
  OracleContext ctx;
};

Prepared prepare(const GeneralInstance& inst, const ReductionOptions& opts) {
  Prepared p;
  p.sa = sa_approximate(inst, opts.mode);
  p.ctx = make_context(inst, p.sa, opts.oracle, opts.enum_opts);
  return p;
}

// y is an SA-lattice point, so M~ y is integral by the generation property.
IntVector lift(const IntMatrix& m_tilde, const RatVector& y) {
  const RatVector z = mul(m_tilde, y);
  if (!is_integral(z)) throw std::logic_error("M~ y is not integral; x does not match M~");
  return to_int(z);
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& e) { return e == 0; });
}

}  // namespace

ReductionResult reduce_svp(const GeneralInstance& inst, const ReductionOptions& opts) {
  Prepared p = prepare(inst, opts);
  ReductionResult r;
  r.problem = "svp";
  r.answer = sap_oracle(inst.gamma, p.sa.x, p.ctx);
  const IntVector z0 = lift(p.sa.m_tilde, r.answer.vectors.at(0));
  IntVector v = mul(inst.m, z0);
  if (is_zero(v)) throw std::logic_error("reduce_svp produced the zero vector");
  r.achieved = norm_value(v, inst.norm);
  r.z0 = {z0};
  r.vectors = {std::move(v)};
  r.sa = std::move(p.sa);
  return r;
}

ReductionResult reduce_sivp(const GeneralInstance& inst, const ReductionOptions& opts) {
  Prepared p = prepare(inst, opts);
  ReductionResult r;
  r.problem = "sivp";
  r.answer = siap_oracle(inst.gamma, p.sa.x, p.ctx);
  r.achieved = 0;
  for (const auto& y : r.answer.vectors) {
    const IntVector z0 = lift(p.sa.m_tilde, y);
    IntVector v = mul(inst.m, z0);
    r.achieved = std::max(r.achieved, Rat(norm_value(v, inst.norm)));
    r.z0.push_back(z0);
    r.vectors.push_back(std::move(v));
  }
  IntMatrix vs(inst.n, r.vectors.size());
  for (std::size_t j = 0; j < r.vectors.size(); ++j) vs.set_column(j, r.vectors[j]);
  if (r.vectors.size() != inst.n || rank(vs) != inst.n)
    throw std::logic_error("reduce_sivp produced dependent vectors");
  r.sa = std::move(p.sa);
  return r;
}

ReductionResult reduce_cvp(const GeneralInstance& inst, const ReductionOptions& opts) {
  if (!inst.target) throw Error(ErrorKind::InvalidInstance, "cvp needs a target vector");
  Prepared p = prepare(inst, opts);
  const RatVector& t = *inst.target;
  const IntMatrix tm = mul(inst.m, p.sa.m_tilde);
  const RatVector t_prime = mul(rat_inverse(to_rat(tm)), t);

  ReductionResult r;
  r.problem = "cvp";
  r.answer = cap_oracle(inst.gamma, p.sa.x, t_prime, p.ctx);
  // {b0 x - t'} + t' = b0 x - round(b0 x - t'), an SA-lattice point.
  const RatVector y = add(r.answer.vectors.at(0), t_prime);
  const IntVector z0 = lift(p.sa.m_tilde, y);
  IntVector v = mul(inst.m, z0);
  r.achieved = norm_value(sub(to_rat(v), t), inst.norm);
  r.z0 = {z0};
  r.vectors = {std::move(v)};
  r.sa = std::move(p.sa);
  return r;
}

}  // namespace salat
