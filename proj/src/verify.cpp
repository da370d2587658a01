#include "salat/verify.hpp"

#include <algorithm>

#include "salat/enumeration.hpp"
#include "salat/instance_gen.hpp"
#include "salat/rng.hpp"

namespace salat {

namespace {

Fields sa_context(const SAInstance& sa, const GeneralInstance& inst) {
  return {{"n", std::to_string(inst.n)}, {"k", to_string(inst.k)}, {"c", to_string(sa.c)},
          {"mode", std::string(to_string(sa.mode))}};
}

std::string str(const Rat& q) { return to_string(q); }

}  // namespace

CheckReport check_entry_inflation(const SAInstance& sa, const GeneralInstance& inst) {
  CheckReport r;
  r.name = "entry_inflation";
  const Int bound = entry_bound(inst.n, inst.k, sa.c);
  Int worst = max_abs_entry(sa.m_tilde);
  for (const auto& rec : sa.trace.records) worst = std::max(worst, rec.max_entry);
  r.pass = worst <= bound;
  r.measured = {{"max_entry", to_string(worst)}, {"trace_records", std::to_string(sa.trace.records.size())}};
  r.bounds = {{"c(2nk)^n", to_string(bound)}};
  r.context = sa_context(sa, inst);
  return r;
}

std::size_t max_bitlength(const RatVector& x) {
  std::size_t best = 0;
  for (const auto& e : x) best = std::max({best, bitlength(e.get_num()), bitlength(e.get_den())});
  return best;
}

Int bitlength_bound(const SAInstance& sa, const GeneralInstance& inst) {
  const auto n = static_cast<unsigned long>(inst.n);
  const Int two_nk = 2 * Int(n) * inst.k;
  if (sa.mode == Mode::strict) return pow(Int(1728), 2 * n) * pow(two_nk, 8 * n * n + 32 * n + 1);
  const Int e = entry_bound(inst.n, inst.k, sa.c);
  const Int h = pow(e, n) * pow(Int(n), (n + 1) / 2);
  return 2 * h * h;
}

CheckReport check_bitlength(const SAInstance& sa, const GeneralInstance& inst) {
  CheckReport r;
  r.name = "bitlength";
  const std::size_t measured = max_bitlength(sa.x);
  const std::size_t bound = bitlength(bitlength_bound(sa, inst));
  r.pass = measured <= bound;
  r.measured = {{"max_bitlength_x", std::to_string(measured)}};
  r.bounds = {{"bitlength_bound", std::to_string(bound)}};
  if (sa.mode == Mode::strict)
    r.notes.push_back("bound: bitlength(1728^(2n) (2nk)^(8n^2+32n+1))");
  else
    r.notes.push_back("small_n bound: Hadamard, 2 (E^n n^ceil(n/2))^2 with E = c(2nk)^n");
  r.context = sa_context(sa, inst);
  return r;
}

CheckReport check_opnorm_sandwich(const GeneralInstance& inst, const SAInstance& sa) {
  CheckReport r;
  r.name = "opnorm_sandwich";
  const std::size_t n = inst.n;
  const Int det_m = bareiss_det(inst.m);
  const Int s = sa.c * det_m;
  const Int abs_s = s < 0 ? Int(-s) : s;
  const IntMatrix t = mul(inst.m, sa.m_tilde);
  const Rat eps = epsilon_hat(n, inst.k, sa.c, det_m);
  const Rat lo = 1 - eps, hi = 1 + eps;

  // I + E = T / s entrywise.
  Int row_max = 0, col_max = 0;
  std::vector<Int> cols(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Int row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Int a = ::abs(t(i, j));
      row += a;
      cols[j] += a;
    }
    row_max = std::max(row_max, row);
  }
  for (const auto& c : cols) col_max = std::max(col_max, c);
  Rat linf(row_max, abs_s), l1(col_max, abs_s);
  linf.canonicalize();
  l1.canonicalize();

  // L2 ratios ||T u||^2 / (s^2 ||u||^2) over the probe set.
  Rat l2_min, l2_max;
  bool first = true;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    IntVector u(n, 0);
    u[i % n] = 1;
    if (i >= n) u[(i + 1) % n] += 1;
    const Int tu = norm_value(mul(t, u), NormKind::L2);
    Rat ratio(tu, s * s * norm_value(u, NormKind::L2));
    ratio.canonicalize();
    if (first || ratio < l2_min) l2_min = ratio;
    if (first || ratio > l2_max) l2_max = ratio;
    first = false;
  }

  const bool ok_inf = lo <= linf && linf <= hi;
  const bool ok_one = lo <= l1 && l1 <= hi;
  const bool ok_two = lo * lo <= l2_min && l2_max <= hi * hi;
  r.pass = ok_inf && ok_one && ok_two;
  r.measured = {{"opnorm_linf", str(linf)}, {"opnorm_l1", str(l1)},
                {"l2_probe_min_sq", str(l2_min)}, {"l2_probe_max_sq", str(l2_max)}};
  r.bounds = {{"eps_hat", str(eps)}, {"lower", str(lo)}, {"upper", str(hi)}};
  r.notes.push_back("natural-log terms replaced by ceil(log2(.)), which only enlarges eps_hat");
  r.notes.push_back("L2 probes: e_i and e_i + e_(i+1 mod n), compared as squares");
  r.context = sa_context(sa, inst);
  return r;
}

CheckReport check_gap_preserved(const IntMatrix& m, const IntMatrix& m_tilde, const Gamma& gamma, NormKind p,
                                const std::vector<RatVector>& answers, const std::vector<RatVector>& candidates) {
  CheckReport r;
  r.name = "gap_preserved";
  const IntMatrix t = mul(m, m_tilde);
  std::size_t pairs = 0, applicable = 0, violations = 0;
  for (const auto& y : answers) {
    const Rat ny = norm_value(y, p);
    const Rat nty = norm_value(mul(t, y), p);
    for (const auto& w : candidates) {
      ++pairs;
      if (!within_gamma(ny, norm_value(w, p), gamma, p)) continue;
      ++applicable;
      if (!within_gamma(nty, norm_value(mul(t, w), p), gamma, p)) ++violations;
    }
  }
  r.pass = violations == 0;
  r.measured = {{"pairs", std::to_string(pairs)}, {"applicable", std::to_string(applicable)},
                {"violations", std::to_string(violations)}};
  r.bounds = {{"gamma", to_string(gamma)}, {"violations", "0"}};
  r.context = {{"n", std::to_string(m.rows())}, {"norm", std::string(to_string(p))}};
  return r;
}

std::vector<RatVector> sa_ball(const OracleContext& ctx, const Gamma& gamma) {
  const Sandwich sw = pullback_sandwich(ctx.m, ctx.m_tilde, ctx.k, ctx.c, ctx.norm);
  const Rat lambda = enum_shortest(ctx.m, ctx.norm, ctx.enum_opts).norm;
  const Rat bound = gamma_scaled(lambda * sw.value_factor, gamma, ctx.norm);
  const RatMatrix t_inv = rat_inverse(to_rat(mul(ctx.m, ctx.m_tilde)));
  std::vector<RatVector> out;
  for (const auto& c : enum_within(ctx.m, nullptr, ctx.norm, bound, true, ctx.enum_opts))
    out.push_back(mul(t_inv, to_rat(c.vector)));
  return out;
}

CheckReport check_covolume(const Int& d, const IntVector& x) {
  CheckReport r;
  r.name = "covolume";
  const std::size_t n = x.size();
  IntMatrix gens(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) gens(i, i) = d;
  gens.set_column(n, x);
  Int index = 1;
  for (const auto& e : snf_diagonal(hnf(gens))) index *= e;
  const Int expected = pow(d, static_cast<unsigned long>(n - 1));
  Int g = d;
  for (const auto& e : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  r.pass = index == expected;
  r.measured = {{"index", to_string(index)}, {"gcd(d,x)", to_string(g)}};
  r.bounds = {{"d^(n-1)", to_string(expected)}};
  r.context = {{"n", std::to_string(n)}, {"d", to_string(d)}};
  return r;
}

CheckReport check_minkowski(const IntMatrix& m, const Rat& lambda1, NormKind p) {
  CheckReport r;
  r.name = "minkowski";
  const Int det = ::abs(bareiss_det(m));
  const Int bound = p == NormKind::L2 ? Int(det * det) : det;
  r.pass = lambda1 <= Rat(bound);
  r.measured = {{"lambda1", str(lambda1)}};
  r.bounds = {{p == NormKind::L2 ? "det^2" : "|det M|", to_string(bound)}};
  r.notes.push_back("weakened form lambda_1 <= |det M|");
  r.context = {{"n", std::to_string(m.rows())}, {"norm", std::string(to_string(p))}};
  return r;
}

GapHistogram perturbation_stats(std::size_t runs, std::size_t n, const Int& k, std::uint64_t seed, Mode mode) {
  std::vector<GapHistogram> parts(runs);
  parallel_for(runs, [&](std::size_t r) {
    const GeneralInstance inst = generate_instance(n, k, derive_seed(seed, r));
    const SAInstance sa = sa_approximate(inst, mode);
    for (const auto& rec : sa.trace.records)
      if (rec.iteration > 0) parts[r].add(rec.shift);
  });
  GapHistogram out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

std::vector<CheckReport> run_checks(const GeneralInstance& inst, const SAInstance& sa, bool with_enumeration,
                                    const EnumOptions& opts) {
  std::vector<CheckReport> out;
  out.push_back(check_entry_inflation(sa, inst));
  out.push_back(check_bitlength(sa, inst));
  out.push_back(check_opnorm_sandwich(inst, sa));
  const Int q = lcd(sa.x);
  out.push_back(check_covolume(q, to_int(scale(sa.x, Rat(q)))));
  if (with_enumeration) {
    const OracleContext ctx = make_context(inst, sa, OracleMode::exact, opts);
    const OracleAnswer ans = sap_oracle(inst.gamma, sa.x, ctx);
    out.push_back(check_gap_preserved(inst.m, sa.m_tilde, inst.gamma, inst.norm, ans.vectors, sa_ball(ctx, inst.gamma)));
    out.push_back(check_minkowski(inst.m, enum_shortest(inst.m, inst.norm, opts).norm, inst.norm));
  }
  return out;
}

}  // namespace salat
