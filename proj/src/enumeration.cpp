#include "salat/enumeration.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace salat {

namespace {

/// L2^2 radius of the ball that contains every w with norm_value(w) <= value.
Rat l2_envelope(const Rat& value, NormKind p, std::size_t n) {
  switch (p) {
    case NormKind::L2: return value;
    case NormKind::L1: return value * value;
    case NormKind::LINF: return value * value * static_cast<unsigned long>(n);
  }
  return value;
}

class Enumerator {
 public:
  using Visit = std::function<void(const IntVector& z)>;

  Enumerator(const IntMatrix& basis, const RatVector* target, const EnumOptions& opts, EnumStats* stats)
      : n_(basis.cols()), opts_(opts), stats_(stats) {
    if (!basis.square() || n_ == 0) throw Error(ErrorKind::InvalidInstance, "enumeration needs a square basis");
    // Gram-Schmidt on the columns.
    std::vector<RatVector> star(n_);
    mu_.assign(n_, RatVector(n_));
    r_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      star[i] = to_rat(basis.column(i));
      const RatVector bi = star[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu_[i][j] = dot(bi, star[j]) / r_[j];
        for (std::size_t k = 0; k < n_; ++k) star[i][k] -= mu_[i][j] * star[j][k];
      }
      r_[i] = dot(star[i], star[i]);
      if (r_[i] == 0) throw Error(ErrorKind::RankDeficient, "enumeration basis is not full rank");
    }
    tau_.assign(n_, Rat(0));
    if (target) {
      if (target->size() != n_) throw Error(ErrorKind::InvalidInstance, "target dimension mismatch");
      for (std::size_t j = 0; j < n_; ++j) tau_[j] = dot(*target, star[j]) / r_[j];
    }
    z_.assign(n_, Int(0));
  }

  /// Visits every z with ||Bz - t||^2 <= bound(); the visitor may shrink the bound.
  void run(Rat& bound, const Visit& visit) {
    bound_ = &bound;
    visit_ = &visit;
    dfs(n_ - 1, Rat(0));
  }

 private:
  static Rat dot(const RatVector& a, const RatVector& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }

  void tick() {
    if (stats_) ++stats_->nodes;
    if (++nodes_ > opts_.node_budget)
      throw Error(ErrorKind::BudgetExceeded, "enumeration exceeded " + std::to_string(opts_.node_budget) + " nodes");
  }

  bool try_level(std::size_t level, const Rat& partial, const Rat& center, const Int& z) {
    tick();
    Rat d = center;
    d += z;
    Rat total = d * d * r_[level];
    total += partial;
    if (total > *bound_) return false;
    z_[level] = z;
    if (level == 0)
      (*visit_)(z_);
    else
      dfs(level - 1, total);
    return true;
  }

  void dfs(std::size_t level, const Rat& partial) {
    Rat center = -tau_[level];
    for (std::size_t j = level + 1; j < n_; ++j)
      if (z_[j] != 0) center += mu_[j][level] * z_[j];
    const Int z0 = round_half_up(Rat(-center));
    for (Int z = z0; try_level(level, partial, center, z); ++z) {
    }
    for (Int z = z0 - 1; try_level(level, partial, center, z); --z) {
    }
    z_[level] = 0;
  }

  std::size_t n_;
  EnumOptions opts_;
  EnumStats* stats_;
  std::vector<RatVector> mu_;
  RatVector r_;
  RatVector tau_;
  IntVector z_;
  std::uint64_t nodes_ = 0;
  Rat* bound_ = nullptr;
  const Visit* visit_ = nullptr;
};

IntVector sign_normalized(IntVector z) {
  for (const auto& e : z) {
    if (e == 0) continue;
    if (e < 0)
      for (auto& f : z) f = -f;
    break;
  }
  return z;
}

Rat distance_value(const IntVector& v, const RatVector* target, NormKind p) {
  if (!target) return Rat(norm_value(v, p));
  return norm_value(sub(to_rat(v), *target), p);
}

bool is_zero(const IntVector& z) {
  return std::all_of(z.begin(), z.end(), [](const Int& e) { return e == 0; });
}

bool independent_of(const std::vector<LatticePoint>& chosen, const IntVector& v) {
  IntMatrix m(v.size(), chosen.size() + 1);
  for (std::size_t j = 0; j < chosen.size(); ++j) m.set_column(j, chosen[j].vector);
  m.set_column(chosen.size(), v);
  return rank(m) == chosen.size() + 1;
}

/// Shortest nonzero vector subject to `accept`, minimizers tie-broken.
LatticePoint shortest_with(const IntMatrix& basis, NormKind p, const EnumOptions& opts, EnumStats* stats,
                           const PointFilter& accept) {
  const std::size_t n = basis.cols();
  // Seed the radius with the best admissible basis column when there is one.
  bool have = false;
  Rat best;
  Rat widest = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntVector col = basis.column(j);
    Rat v(norm_value(col, p));
    if (l2_envelope(v, p, n) > widest) widest = l2_envelope(v, p, n);
    if (!accept(col)) continue;
    if (!have || v < best) {
      best = v;
      have = true;
    }
  }

  std::vector<IntVector> minimizers;
  Rat bound = have ? l2_envelope(best, p, n) : widest;
  for (;;) {
    Enumerator e(basis, nullptr, opts, stats);
    e.run(bound, [&](const IntVector& z) {
      if (is_zero(z)) return;
      IntVector v = mul(basis, z);
      Rat val(norm_value(v, p));
      if (have && val > best) return;
      if (!accept(v)) return;
      if (!have || val < best) {
        best = val;
        have = true;
        minimizers.clear();
        bound = l2_envelope(best, p, n);
      }
      minimizers.push_back(sign_normalized(z));
    });
    if (have) break;
    // Nothing admissible yet: widen the ball.
    bound *= 4;
  }
  if (minimizers.empty()) throw std::logic_error("enumeration lost the seeding basis column");
  const IntVector& pick = *std::max_element(minimizers.begin(), minimizers.end());
  return {pick, mul(basis, pick), best};
}

}  // namespace

LatticePoint enum_shortest(const IntMatrix& basis, NormKind p, const EnumOptions& opts, EnumStats* stats) {
  return shortest_with(basis, p, opts, stats, [](const IntVector&) { return true; });
}

LatticePoint enum_closest(const IntMatrix& basis, const RatVector& target, NormKind p, const EnumOptions& opts,
                          EnumStats* stats) {
  const std::size_t n = basis.cols();
  // Seed with the rounded coordinates of the target.
  const RatVector y = mul(rat_inverse(to_rat(basis)), target);
  IntVector z0(n);
  for (std::size_t i = 0; i < n; ++i) z0[i] = round_half_up(y[i]);
  Rat best = distance_value(mul(basis, z0), &target, p);

  std::vector<IntVector> minimizers;
  Rat bound = l2_envelope(best, p, n);
  Enumerator e(basis, &target, opts, stats);
  e.run(bound, [&](const IntVector& z) {
    IntVector v = mul(basis, z);
    Rat val = distance_value(v, &target, p);
    if (val > best) return;
    if (val < best) {
      best = val;
      minimizers.clear();
      bound = l2_envelope(best, p, n);
    }
    minimizers.push_back(z);
  });
  if (minimizers.empty()) throw std::logic_error("closest-vector enumeration lost its seed");
  const IntVector& pick = *std::max_element(minimizers.begin(), minimizers.end());
  return {pick, mul(basis, pick), best};
}

LatticePoint enum_shortest_if(const IntMatrix& basis, NormKind p, const PointFilter& accept, const EnumOptions& opts,
                              EnumStats* stats) {
  return shortest_with(basis, p, opts, stats, accept);
}

SuccessiveMinima enum_successive(const IntMatrix& basis, NormKind p, const EnumOptions& opts, EnumStats* stats) {
  return enum_successive_if(basis, p, [](const IntVector&) { return true; }, opts, stats);
}

SuccessiveMinima enum_successive_if(const IntMatrix& basis, NormKind p, const PointFilter& accept,
                                    const EnumOptions& opts, EnumStats* stats) {
  SuccessiveMinima out;
  for (std::size_t i = 0; i < basis.cols(); ++i) {
    LatticePoint w = shortest_with(basis, p, opts, stats, [&](const IntVector& v) {
      return accept(v) && independent_of(out.witnesses, v);
    });
    out.lambda.push_back(w.norm);
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

std::vector<LatticePoint> enum_within(const IntMatrix& basis, const RatVector* target, NormKind p, const Rat& bound,
                                      bool exclude_zero, const EnumOptions& opts, EnumStats* stats) {
  std::vector<LatticePoint> out;
  Rat l2 = l2_envelope(bound, p, basis.cols());
  Enumerator e(basis, target, opts, stats);
  e.run(l2, [&](const IntVector& z) {
    if (exclude_zero && is_zero(z)) return;
    IntVector v = mul(basis, z);
    Rat val = distance_value(v, target, p);
    if (val <= bound) out.push_back({z, std::move(v), val});
  });
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.coeffs < b.coeffs;
  });
  return out;
}

}  // namespace salat
