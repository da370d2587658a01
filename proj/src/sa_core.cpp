#include "salat/sa_core.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace salat {

std::string_view to_string(Mode m) { return m == Mode::strict ? "strict" : "small_n"; }

Mode parse_mode(std::string_view s) {
  if (s == "strict") return Mode::strict;
  if (s == "small_n" || s == "small-n") return Mode::small_n;
  throw Error(ErrorKind::Parse, "unknown mode '" + std::string(s) + "' (expected strict or small-n)");
}

void validate(const GeneralInstance& inst, Mode mode) {
  const std::size_t n = inst.n;
  if (mode == Mode::strict && n < 8)
    throw Error(ErrorKind::DimensionTooSmall, "strict mode needs n >= 8, got n = " + std::to_string(n));
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "n must be at least 2");
  if (inst.m.rows() != n || inst.m.cols() != n)
    throw Error(ErrorKind::InvalidInstance, "matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  if (inst.k < 1) throw Error(ErrorKind::InvalidInstance, "k must be >= 1");
  if (max_abs_entry(inst.m) > inst.k)
    throw Error(ErrorKind::InvalidInstance, "an entry of M exceeds k = " + to_string(inst.k));
  if (!(inst.gamma.den >= 1 && inst.gamma.num >= inst.gamma.den && inst.k >= inst.gamma.num))
    throw Error(ErrorKind::InvalidInstance,
                "gamma = a/b needs k >= a >= b >= 1, got " + to_string(inst.gamma) + " with k = " + to_string(inst.k));
  if (inst.target) {
    if (inst.target->size() != n) throw Error(ErrorKind::InvalidInstance, "target has the wrong dimension");
    if (lcd(*inst.target) > inst.k)
      throw Error(ErrorKind::TargetDenominatorTooLarge,
                  "lcd(t) = " + to_string(lcd(*inst.target)) + " exceeds k = " + to_string(inst.k));
  }
  if (bareiss_det(inst.m) == 0) throw Error(ErrorKind::SingularMatrix, "det M = 0");
}

Int multiplier_c(std::size_t n, const Int& k, Mode mode) {
  const Int nk = Int(static_cast<unsigned long>(n)) * k;
  const auto nl = static_cast<unsigned long>(n);
  if (mode == Mode::strict) {
    if (n < 8) throw Error(ErrorKind::DimensionTooSmall, "strict multiplier needs n >= 8");
    return 1728 * pow(nk, 3 * nl + 15);
  }
  if (n < 2) throw Error(ErrorKind::DimensionTooSmall, "small_n multiplier needs n >= 2");
  const Int nn(nl);
  const Int log_term(static_cast<unsigned long>(ceil_log2(2 * nk)));
  const Int t1 = 12 * pow(k, nl + 5) * pow(nn, nl + 4) * log_term * log_term;
  const Int t2 = 1728 * pow(k, 3 * nl + 15) * pow(nn, 3 * nl + 6);
  Int m = t1 > t2 ? t1 : t2;
  if (m < 94) m = 94;
  return Int(1) << static_cast<unsigned long>(bitlength(m));
}

Int entry_bound(std::size_t n, const Int& k, const Int& c) {
  return c * pow(2 * Int(static_cast<unsigned long>(n)) * k, static_cast<unsigned long>(n));
}

IntMatrix b1_matrix(const IntMatrix& m_tilde) { return minor_matrix(m_tilde, 0, m_tilde.cols() - 1); }
IntMatrix b2_matrix(const IntMatrix& m_tilde) { return minor_matrix(m_tilde, 1, m_tilde.cols() - 1); }

IntVector generator_column(const SAInstance& sa) {
  IntVector beta(sa.n, 0);
  beta[0] = sa.b1;
  beta[1] = -sa.b2;
  return beta;
}

namespace {

// Leading i x i block of B1 (rows 2..i+1 of M~) or B2 (row 1, rows 3..i+1).
IntMatrix leading_b(const IntMatrix& mt, std::size_t i, bool first) {
  IntMatrix out(i, i);
  for (std::size_t r = 0; r < i; ++r) {
    std::size_t src = (r == 0) ? (first ? 1 : 0) : r + 1;
    for (std::size_t j = 0; j < i; ++j) out(r, j) = mt(src, j);
  }
  return out;
}

}  // namespace

SAInstance sa_approximate(const GeneralInstance& inst, Mode mode, bool keep_trace) {
  validate(inst, mode);
  const std::size_t n = inst.n;

  SAInstance sa;
  sa.n = n;
  sa.k = inst.k;
  sa.mode = mode;
  sa.c = multiplier_c(n, inst.k, mode);

  const IntMatrix base = scale(bareiss_det_adj(inst.m).adj, sa.c);
  IntMatrix mt = base;
  const Int bound = entry_bound(n, inst.k, sa.c);
  const Int shift_budget = pow(Int(static_cast<unsigned long>(ceil_log2(bound))), 2);

  // (B1)_{1,1} is M~_{2,1} and (B2)_{1,1} is M~_{1,1}; they must differ.
  if (mt(1, 0) == mt(0, 0)) {
    mt(1, 0) += 1;
    sa.trace.tie_bumped = true;
  }
  if (keep_trace) sa.trace.records.push_back({0, 0, 1, 1, max_abs_entry(mt), shift_budget, sa.trace.tie_bumped ? 1u : 0u});

  Int prev1 = 1, prev2 = 1;  // determinants of the (i-1) x (i-1) leading blocks
  for (std::size_t i = 1; i < n; ++i) {
    Int old1 = bareiss_det(leading_b(mt, i, true));
    Int old2 = bareiss_det(leading_b(mt, i, false));
    // With D = prev2*old1 - prev1*old2 = 0 every shift leaves the pair equal
    // to (lambda + x)(prev1, prev2), coprime only at lambda + x = +-1. The
    // tie-break above is this case for i = 1. For larger i, when that x is
    // out of reach, bump entries outside the earlier blocks until D != 0:
    // one of (1,i-1), (0,i-1), (i,j) for j < i-1, else a pair of them (D is
    // multilinear and some minors can vanish together).
    unsigned bumps = 0;
    if (i > 1 && prev2 * old1 == prev1 * old2) {
      bool reachable = true;
      try {
        reachable = coprime_shift(old1, prev1, old2, prev2) <= shift_budget;
      } catch (const Error&) {
        reachable = false;
      }
      if (!reachable) {
        std::vector<std::pair<std::size_t, std::size_t>> spots = {{1, i - 1}, {0, i - 1}};
        for (std::size_t j = i - 1; j-- > 0;) spots.emplace_back(i, j);
        auto try_spots = [&](const std::vector<std::size_t>& pick) {
          for (auto s : pick) mt(spots[s].first, spots[s].second) += 1;
          const Int n1 = bareiss_det(leading_b(mt, i, true));
          const Int n2 = bareiss_det(leading_b(mt, i, false));
          if (prev2 * n1 != prev1 * n2) {
            old1 = n1;
            old2 = n2;
            bumps = static_cast<unsigned>(pick.size());
            return true;
          }
          for (auto s : pick) mt(spots[s].first, spots[s].second) -= 1;
          return false;
        };
        bool fixed = false;
        for (std::size_t a = 0; a < spots.size() && !fixed; ++a) fixed = try_spots({a});
        for (std::size_t a = 0; a < spots.size() && !fixed; ++a)
          for (std::size_t b = a + 1; b < spots.size() && !fixed; ++b) fixed = try_spots({a, b});
        if (!fixed)
          throw Error(ErrorKind::HypothesisViolated, "iteration " + std::to_string(i) +
                                                         ": the determinant pair stays proportional under every bump");
      }
    }
    // Adding x to the shared (i,i) entry moves each determinant by prev * x,
    // so the scan never recomputes a determinant.
    std::uint64_t x;
    try {
      x = coprime_shift(old1, prev1, old2, prev2);
    } catch (const Error& e) {
      throw Error(e.kind(), "iteration " + std::to_string(i) + " (det B1 = " + to_string(old1) + ", prev " +
                                to_string(prev1) + "; det B2 = " + to_string(old2) + ", prev " + to_string(prev2) +
                                "): " + e.what());
    }
    const Int xi(static_cast<unsigned long>(x));
    if (i == 1) mt(0, 0) += xi;
    mt(i, i - 1) += xi;
    const Int new1 = old1 + prev1 * xi;
    const Int new2 = old2 + prev2 * xi;
    if (keep_trace) sa.trace.records.push_back({i, x, new1, new2, max_abs_entry(mt), shift_budget, bumps});
    prev1 = new1;
    prev2 = new2;
  }
  sa.det_b1 = prev1;
  sa.det_b2 = prev2;

  const BezoutResult bz = ext_gcd(sa.det_b1, sa.det_b2);
  if (bz.g != 1) throw std::logic_error("det(B1) and det(B2) are not coprime after the perturbation loop");
  sa.b1 = bz.s;
  sa.b2 = bz.t;
  sa.m_tilde = mt;
  sa.perturbation = sub(mt, base);
  sa.x = solve(mt, generator_column(sa));
  return sa;
}

GenerationDetail generation_detail(const IntMatrix& m, const SAInstance& sa) {
  if (m.rows() != sa.n || sa.m_tilde.rows() != sa.n)
    throw Error(ErrorKind::InvalidInstance, "SA instance does not match the lattice dimension");
  const IntVector beta = generator_column(sa);
  GenerationDetail d;
  IntMatrix replaced = sa.m_tilde;
  replaced.set_column(sa.n - 1, beta);
  d.unimodular_replacement = ::abs(bareiss_det(replaced)) == 1;
  IntMatrix gens = hconcat(sa.m_tilde, column_matrix(beta));
  try {
    d.hnf_identity = hnf(gens) == IntMatrix::identity(sa.n);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RankDeficient) throw;
    d.hnf_identity = false;
  }
  return d;
}

bool generation_check(const IntMatrix& m, const SAInstance& sa) {
  const GenerationDetail d = generation_detail(m, sa);
  // A +-1 replacement determinant implies the HNF is I_n; the converse can
  // fail (index 1 reached only through other column subsets).
  if (d.unimodular_replacement && !d.hnf_identity)
    throw std::logic_error("generation_check: determinant and HNF criteria disagree");
  return d.unimodular_replacement && d.hnf_identity;
}

Int recover_coefficient(const RatVector& y, const RatVector& x) {
  if (y.size() != x.size()) throw Error(ErrorKind::InvalidInstance, "dimension mismatch in recover_coefficient");
  Int cur = 0, mod = 1;  // b = cur (mod `mod`)
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Int& q = x[i].get_den();
    const Rat yq = y[i] * q;
    if (yq.get_den() != 1)
      throw Error(ErrorKind::NoSolution, "coordinate " + std::to_string(i) + " is not in Z + b x_i for any b");
    if (q == 1) continue;
    Int p = x[i].get_num() % q;
    if (p < 0) p += q;
    Int inv;
    mpz_invert(inv.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    Int r = (yq.get_num() * inv) % q;
    if (r < 0) r += q;

    // Merge b = r (mod q) into b = cur (mod mod).
    Int g;
    mpz_gcd(g.get_mpz_t(), mod.get_mpz_t(), q.get_mpz_t());
    const Int diff = r - cur;
    if (diff % g != 0) throw Error(ErrorKind::NoSolution, "inconsistent congruences for the coefficient");
    const Int q_g = q / g;
    Int step = 0;
    if (q_g != 1) {
      Int m_g = (mod / g) % q_g;
      Int inv_m;
      mpz_invert(inv_m.get_mpz_t(), m_g.get_mpz_t(), q_g.get_mpz_t());
      step = ((diff / g) % q_g) * inv_m % q_g;
      if (step < 0) step += q_g;
    }
    const Int l = mod * q_g;
    cur = (cur + mod * step) % l;
    if (cur < 0) cur += l;
    mod = l;
  }
  return cur;
}

}  // namespace salat
