#include "salat/oracles.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace salat {

SABasis sa_basis(const RatVector& x) {
  const std::size_t n = x.size();
  SABasis out;
  out.q = lcd(x);
  IntMatrix gens(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) gens(i, i) = out.q;
  gens.set_column(n, to_int(scale(x, Rat(out.q))));
  out.b = hnf(gens);
  return out;
}

std::string_view to_string(OracleMode m) {
  switch (m) {
    case OracleMode::exact: return "exact";
    case OracleMode::direct: return "direct";
    case OracleMode::adversarial: return "adversarial";
  }
  return "exact";
}

OracleMode parse_oracle_mode(std::string_view s) {
  if (s == "exact") return OracleMode::exact;
  if (s == "direct") return OracleMode::direct;
  if (s == "adversarial") return OracleMode::adversarial;
  throw Error(ErrorKind::Parse, "unknown oracle '" + std::string(s) + "' (expected exact, direct or adversarial)");
}

OracleContext make_context(const GeneralInstance& inst, const SAInstance& sa, OracleMode mode,
                           const EnumOptions& opts) {
  OracleContext ctx;
  ctx.m = inst.m;
  ctx.m_tilde = sa.m_tilde;
  ctx.k = inst.k;
  ctx.c = sa.c;
  ctx.norm = inst.norm;
  ctx.mode = mode;
  ctx.enum_opts = opts;
  return ctx;
}

Rat epsilon_hat(std::size_t n, const Int& k, const Int& c, const Int& det_m) {
  const Int nn(static_cast<unsigned long>(n));
  const Int l(static_cast<unsigned long>(ceil_log2(2 * nn * k)));
  const Int lc(static_cast<unsigned long>(ceil_log2(c)));
  Int num = k * pow(nn, 4) * l * l + k * nn * nn * lc * lc;
  Int den = c * det_m;
  if (den < 0) den = -den;
  if (den == 0) throw Error(ErrorKind::SingularMatrix, "epsilon_hat needs c det M != 0");
  Rat e(num, den);
  e.canonicalize();
  return e;
}

Sandwich pullback_sandwich(const IntMatrix& m, const IntMatrix& m_tilde, const Int& k, const Int& c, NormKind p) {
  const std::size_t n = m.rows();
  const Int det_m = bareiss_det(m);
  const Int s = c * det_m;
  Int abs_s = s < 0 ? Int(-s) : s;
  const IntMatrix t = mul(m, m_tilde);

  // |s| E = T - s I, so the norms of E are exact integer sums over |s|.
  Int row_max = 0, col_max = 0;
  std::vector<Int> col_sums(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Int row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Int e = t(i, j);
      if (i == j) e -= s;
      if (e < 0) e = -e;
      row += e;
      col_sums[j] += e;
    }
    row_max = std::max(row_max, row);
  }
  for (const auto& cs : col_sums) col_max = std::max(col_max, cs);

  Sandwich sw;
  sw.eps_hat = epsilon_hat(n, k, c, det_m);
  sw.e_inf = Rat(row_max, abs_s);
  sw.e_inf.canonicalize();
  sw.e_one = Rat(col_max, abs_s);
  sw.e_one.canonicalize();

  Rat cert;
  switch (p) {
    case NormKind::LINF: cert = sw.e_inf; break;
    case NormKind::L1: cert = sw.e_one; break;
    case NormKind::L2:
      // ||E||_2^2 <= ||E||_1 ||E||_inf.
      cert = (sw.e_one * sw.e_inf <= sw.eps_hat * sw.eps_hat) ? sw.eps_hat : std::max(sw.e_one, sw.e_inf);
      break;
  }
  sw.eps = std::max(sw.eps_hat, cert);
  if (sw.eps >= 1)
    throw Error(ErrorKind::HypothesisViolated,
                "near-isometry bound " + to_string(sw.eps) + " is not below 1; the pullback ball is unbounded");
  const Rat rho = (1 + sw.eps) / (1 - sw.eps);
  sw.value_factor = p == NormKind::L2 ? Rat(rho * rho) : rho;
  return sw;
}

namespace {

struct Pullback {
  IntMatrix t;
  RatMatrix t_inv;
  Sandwich sw;
};

Pullback make_pullback(const OracleContext& ctx) {
  if (ctx.m_tilde.rows() == 0) throw Error(ErrorKind::ModeUnavailable, "the pullback oracle needs M~");
  Pullback pb;
  pb.t = mul(ctx.m, ctx.m_tilde);
  pb.t_inv = rat_inverse(to_rat(pb.t));
  pb.sw = pullback_sandwich(ctx.m, ctx.m_tilde, ctx.k, ctx.c, ctx.norm);
  return pb;
}

/// q M~^-1 when M~ is known (a well-conditioned basis), else the HNF basis.
/// Either way the result spans q times the SA lattice.
IntMatrix direct_basis(const RatVector& x, const OracleContext& ctx, Int& q) {
  if (x.size() > kDirectMaxDim)
    throw Error(ErrorKind::ModeUnavailable,
                "direct mode is limited to n <= " + std::to_string(kDirectMaxDim) + ", got n = " + std::to_string(x.size()));
  SABasis ref = sa_basis(x);
  q = ref.q;
  if (ctx.m_tilde.rows() == 0) return ref.b;
  RatMatrix inv = rat_inverse(to_rat(ctx.m_tilde));
  IntMatrix bq(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      Rat e = inv(i, j) * q;
      if (e.get_den() != 1) throw Error(ErrorKind::InvalidInstance, "x does not belong to this M~");
      bq(i, j) = e.get_num();
    }
  if (hnf(bq) != ref.b) throw Error(ErrorKind::InvalidInstance, "q M~^-1 does not span the SA lattice of x");
  return bq;
}

bool outside_qzn(const IntVector& v, const Int& q) {
  return std::any_of(v.begin(), v.end(), [&](const Int& e) { return e % q != 0; });
}

RatVector unscale(const IntVector& v, const Int& q) { return scale(to_rat(v), Rat(1, q)); }

RatVector frac_of(const Int& b, const RatVector& x) { return centered_frac(scale(x, Rat(b))); }

RatVector frac_of(const Int& b, const RatVector& x, const RatVector& t) {
  return centered_frac(sub(scale(x, Rat(b)), t));
}

/// Candidates pulled back to SA coefficients: b0 -> norm value, deduplicated.
template <class Value>
std::map<Int, Rat> pull_back(const std::vector<LatticePoint>& cands, const Pullback& pb, const RatVector& x,
                             bool drop_zero, Value value) {
  std::map<Int, Rat> out;
  for (const auto& c : cands) {
    const RatVector u = mul(pb.t_inv, to_rat(c.vector));
    const Int b0 = recover_coefficient(u, x);
    if (drop_zero && b0 == 0) continue;
    if (!out.count(b0)) out.emplace(b0, value(b0));
  }
  return out;
}

/// Smallest value, ties to the smallest coefficient.
std::map<Int, Rat>::const_iterator best_of(const std::map<Int, Rat>& vals) {
  auto best = vals.begin();
  for (auto it = vals.begin(); it != vals.end(); ++it)
    if (it->second < best->second) best = it;
  return best;
}

/// Largest value within gamma of `opt`, ties to the smallest coefficient.
std::map<Int, Rat>::const_iterator worst_valid(const std::map<Int, Rat>& vals, const Rat& opt, const Gamma& g,
                                               NormKind p) {
  auto pick = vals.end();
  for (auto it = vals.begin(); it != vals.end(); ++it) {
    if (!within_gamma(it->second, opt, g, p)) continue;
    if (pick == vals.end() || it->second > pick->second) pick = it;
  }
  return pick;
}

Rat ball_bound(const Rat& optimum, const Sandwich& sw, const Gamma& g, NormKind p, bool adversarial) {
  const Rat r = optimum * sw.value_factor;
  return adversarial ? gamma_scaled(r, g, p) : r;
}

void finish(OracleAnswer& a, const Rat& opt, const Gamma& g, NormKind p) {
  a.optimal = opt;
  a.certified = within_gamma(a.achieved, opt, g, p);
}

/// Greedily picks linearly independent {b x} in the given order.
std::vector<Int> greedy_independent(const std::vector<std::pair<Int, Rat>>& order, const RatVector& x) {
  const std::size_t n = x.size();
  const Int q = lcd(x);
  std::vector<Int> chosen;
  IntMatrix cols(n, 0);
  for (const auto& [b, v] : order) {
    IntMatrix trial(n, chosen.size() + 1);
    for (std::size_t j = 0; j < chosen.size(); ++j) trial.set_column(j, cols.column(j));
    trial.set_column(chosen.size(), to_int(scale(frac_of(b, x), Rat(q))));
    if (rank(trial) != chosen.size() + 1) continue;
    cols = trial;
    chosen.push_back(b);
    if (chosen.size() == n) break;
  }
  return chosen;
}

}  // namespace

OracleAnswer sap_oracle(const Gamma& gamma, const RatVector& x, const OracleContext& ctx) {
  const NormKind p = ctx.norm;
  OracleAnswer ans;
  ans.mode = ctx.mode;
  EnumStats stats;

  if (ctx.mode == OracleMode::direct) {
    Int q;
    const IntMatrix bq = direct_basis(x, ctx, q);
    const LatticePoint w =
        enum_shortest_if(bq, p, [&](const IntVector& v) { return outside_qzn(v, q); }, ctx.enum_opts, &stats);
    const Int b0 = recover_coefficient(unscale(w.vector, q), x);
    ans.coefficients = {b0};
    ans.vectors = {frac_of(b0, x)};
    ans.achieved = norm_value(ans.vectors[0], p);
    ans.nodes = stats.nodes;
    ans.candidates = 1;
    finish(ans, ans.achieved, gamma, p);
    return ans;
  }

  const Pullback pb = make_pullback(ctx);
  const bool adv = ctx.mode == OracleMode::adversarial;
  const Rat lambda = enum_shortest(ctx.m, p, ctx.enum_opts, &stats).norm;
  const auto cands = enum_within(ctx.m, nullptr, p, ball_bound(lambda, pb.sw, gamma, p, adv), true, ctx.enum_opts, &stats);
  const auto vals = pull_back(cands, pb, x, true, [&](const Int& b) { return norm_value(frac_of(b, x), p); });
  if (vals.empty()) throw std::logic_error("sap_oracle: the pullback ball holds no SA candidate");

  const auto best = best_of(vals);
  const auto pick = adv ? worst_valid(vals, best->second, gamma, p) : best;
  ans.coefficients = {pick->first};
  ans.vectors = {frac_of(pick->first, x)};
  ans.achieved = pick->second;
  ans.nodes = stats.nodes;
  ans.candidates = vals.size();
  finish(ans, best->second, gamma, p);
  return ans;
}

OracleAnswer cap_oracle(const Gamma& gamma, const RatVector& x, const RatVector& t_prime, const OracleContext& ctx) {
  const NormKind p = ctx.norm;
  if (t_prime.size() != x.size()) throw Error(ErrorKind::InvalidInstance, "target dimension mismatch");
  OracleAnswer ans;
  ans.mode = ctx.mode;
  EnumStats stats;

  if (ctx.mode == OracleMode::direct) {
    Int q;
    const IntMatrix bq = direct_basis(x, ctx, q);
    const LatticePoint w = enum_closest(bq, scale(t_prime, Rat(q)), p, ctx.enum_opts, &stats);
    const Int b0 = recover_coefficient(unscale(w.vector, q), x);
    ans.coefficients = {b0};
    ans.vectors = {frac_of(b0, x, t_prime)};
    ans.achieved = norm_value(ans.vectors[0], p);
    ans.nodes = stats.nodes;
    ans.candidates = 1;
    finish(ans, ans.achieved, gamma, p);
    return ans;
  }

  const Pullback pb = make_pullback(ctx);
  const bool adv = ctx.mode == OracleMode::adversarial;
  const RatVector t = mul(pb.t, t_prime);
  const Rat dist = enum_closest(ctx.m, t, p, ctx.enum_opts, &stats).norm;
  const auto cands = enum_within(ctx.m, &t, p, ball_bound(dist, pb.sw, gamma, p, adv), false, ctx.enum_opts, &stats);
  const auto vals =
      pull_back(cands, pb, x, false, [&](const Int& b) { return norm_value(frac_of(b, x, t_prime), p); });
  if (vals.empty()) throw std::logic_error("cap_oracle: the pullback ball holds no SA candidate");

  const auto best = best_of(vals);
  const auto pick = adv ? worst_valid(vals, best->second, gamma, p) : best;
  ans.coefficients = {pick->first};
  ans.vectors = {frac_of(pick->first, x, t_prime)};
  ans.achieved = pick->second;
  ans.nodes = stats.nodes;
  ans.candidates = vals.size();
  finish(ans, best->second, gamma, p);
  return ans;
}

OracleAnswer siap_oracle(const Gamma& gamma, const RatVector& x, const OracleContext& ctx) {
  const NormKind p = ctx.norm;
  const std::size_t n = x.size();
  OracleAnswer ans;
  ans.mode = ctx.mode;
  EnumStats stats;

  auto fill = [&](const std::vector<Int>& bs) {
    ans.coefficients = bs;
    ans.vectors.clear();
    ans.achieved = 0;
    for (const auto& b : bs) {
      ans.vectors.push_back(frac_of(b, x));
      ans.achieved = std::max(ans.achieved, norm_value(ans.vectors.back(), p));
    }
  };

  if (ctx.mode == OracleMode::direct) {
    Int q;
    const IntMatrix bq = direct_basis(x, ctx, q);
    const SuccessiveMinima sm =
        enum_successive_if(bq, p, [&](const IntVector& v) { return outside_qzn(v, q); }, ctx.enum_opts, &stats);
    std::vector<Int> bs;
    for (const auto& w : sm.witnesses) bs.push_back(recover_coefficient(unscale(w.vector, q), x));
    fill(bs);
    std::vector<std::pair<Int, Rat>> order;
    for (const auto& b : bs) order.emplace_back(b, Rat(0));
    if (greedy_independent(order, x).size() != n)
      throw std::logic_error("siap_oracle: centered witnesses lost independence");
    ans.nodes = stats.nodes;
    ans.candidates = n;
    finish(ans, ans.achieved, gamma, p);
    return ans;
  }

  const Pullback pb = make_pullback(ctx);
  const bool adv = ctx.mode == OracleMode::adversarial;
  const Rat lambda_n = enum_successive(ctx.m, p, ctx.enum_opts, &stats).lambda.back();
  const auto cands =
      enum_within(ctx.m, nullptr, p, ball_bound(lambda_n, pb.sw, gamma, p, adv), true, ctx.enum_opts, &stats);
  const auto vals = pull_back(cands, pb, x, true, [&](const Int& b) { return norm_value(frac_of(b, x), p); });

  std::vector<std::pair<Int, Rat>> order(vals.begin(), vals.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  const std::vector<Int> minimal = greedy_independent(order, x);
  if (minimal.size() != n) throw std::logic_error("siap_oracle: the pullback ball spans less than Q^n");
  Rat opt = 0;
  for (const auto& b : minimal) opt = std::max(opt, vals.at(b));

  if (!adv) {
    fill(minimal);
  } else {
    std::vector<std::pair<Int, Rat>> valid;
    for (const auto& e : order)
      if (within_gamma(e.second, opt, gamma, p)) valid.push_back(e);
    std::stable_sort(valid.begin(), valid.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    const std::vector<Int> worst = greedy_independent(valid, x);
    if (worst.size() != n) throw std::logic_error("siap_oracle: the valid set spans less than Q^n");
    fill(worst);
  }
  ans.nodes = stats.nodes;
  ans.candidates = vals.size();
  finish(ans, opt, gamma, p);
  return ans;
}

}  // namespace salat
