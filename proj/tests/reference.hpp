#pragma once

// Slow, obviously-correct reference computations used only by the tests.
// None of them shares code with the library beyond the Int/Rat types.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "salat/exact.hpp"
#include "salat/rng.hpp"

namespace ref {

using salat::Int;
using salat::IntMatrix;
using salat::IntVector;
using salat::NormKind;
using salat::Rat;
using salat::RatMatrix;
using salat::RatVector;

inline IntMatrix drop(const IntMatrix& m, std::size_t row, std::size_t col) {
  IntMatrix out(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, r = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, c = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      out(r, c++) = m(i, j);
    }
    ++r;
  }
  return out;
}

/// Laplace expansion along the first row.
inline Int det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    const Int minor = det(drop(m, 0, j));
    out += (j % 2 == 0 ? 1 : -1) * m(0, j) * minor;
  }
  return out;
}

/// Transpose of the cofactor matrix.
inline IntMatrix adjugate(const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntMatrix out(n, n);
  if (n == 1) {
    out(0, 0) = 1;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j, i) = ((i + j) % 2 == 0 ? 1 : -1) * det(drop(m, i, j));
  return out;
}

inline Int gcd(Int a, const Int& b) {
  mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return a;
}

/// Naive scan for the smallest x >= 0 with gcd(a0 + d1 x, b0 + d2 x) = 1.
inline std::optional<std::uint64_t> coprime_scan(const Int& a0, const Int& d1, const Int& b0, const Int& d2,
                                                 std::uint64_t limit) {
  for (std::uint64_t x = 0; x <= limit; ++x) {
    const Int xi(static_cast<unsigned long>(x));
    if (gcd(a0 + d1 * xi, b0 + d2 * xi) == 1) return x;
  }
  return std::nullopt;
}

/// j(n) by sliding every window start over one period.
inline std::uint64_t jacobsthal_window(std::uint64_t n) {
  std::uint64_t longest_run = 0;
  for (std::uint64_t start = 0; start < n; ++start) {
    std::uint64_t run = 0;
    while (std::gcd(start + run, n) != 1) ++run;
    longest_run = std::max(longest_run, run);
  }
  return longest_run + 1;
}

inline Rat norm(const RatVector& v, NormKind p) {
  Rat out = 0;
  for (const auto& e : v) {
    const Rat a = e < 0 ? Rat(-e) : e;
    if (p == NormKind::L1) out += a;
    if (p == NormKind::L2) out += e * e;
    if (p == NormKind::LINF) out = std::max(out, a);
  }
  return out;
}

inline RatVector apply(const IntMatrix& b, const IntVector& z) {
  RatVector v(b.rows(), Rat(0));
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) v[i] += b(i, j) * z[j];
  return v;
}

/// Gauss-Jordan inverse over Q.
inline RatMatrix inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  RatMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (a(p, c) == 0) ++p;
    for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(p, j), a(c, j));
    const Rat piv = a(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) /= piv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rat f = a(r, c);
      for (std::size_t j = 0; j < 2 * n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, n + j);
  return out;
}

/// Per-coordinate coefficient radii for every z with norm_value(Bz - t) <= value.
/// z = B^-1 (v + t), and Hoelder bounds |(B^-1 v)_i| by the dual norm of row i.
inline std::vector<long> box_radii(const IntMatrix& b, const RatVector* target, NormKind p, const Rat& value) {
  const RatMatrix inv = inverse(b);
  const std::size_t n = b.cols();
  std::vector<long> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat sum = 0, sq = 0, mx = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const Rat a = inv(i, j) < 0 ? Rat(-inv(i, j)) : inv(i, j);
      sum += a;
      sq += a * a;
      mx = std::max(mx, a);
    }
    Rat shift = 0;
    if (target)
      for (std::size_t j = 0; j < n; ++j) shift += inv(i, j) * (*target)[j];
    if (shift < 0) shift = -shift;
    Rat r;
    if (p == NormKind::L1) r = mx * value;
    if (p == NormKind::LINF) r = sum * value;
    if (p == NormKind::L2) {
      // |z_i - shift| <= sqrt(sq * value) <= isqrt(floor(sq * value)) + 1.
      const Rat prod = sq * value;
      Int fl = prod.get_num() / prod.get_den(), root;
      mpz_sqrt(root.get_mpz_t(), fl.get_mpz_t());
      r = Rat(root + 1);
    }
    const Rat total = r + shift;
    out[i] = Int(total.get_num() / total.get_den()).get_si() + 1;
  }
  return out;
}

inline void for_box(const std::vector<long>& radii, const std::function<void(const IntVector&)>& f) {
  const std::size_t n = radii.size();
  IntVector z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = -radii[i];
  for (;;) {
    f(z);
    std::size_t i = 0;
    while (i < n && z[i] == radii[i]) {
      z[i] = -radii[i];
      ++i;
    }
    if (i == n) return;
    z[i] += 1;
  }
}

inline void for_box(std::size_t n, long radius, const std::function<void(const IntVector&)>& f) {
  for_box(std::vector<long>(n, radius), f);
}

/// Every lattice vector with norm_value(Bz - t) <= seed_value, with that value.
/// Walks whichever is smaller: the coefficient box, or the integer box around t
/// in ambient space with an adjugate membership test (cheap when |det B| is tiny).
inline std::vector<std::pair<IntVector, Rat>> box_points(const IntMatrix& b, const RatVector* target, NormKind p,
                                                         const Rat& seed_value) {
  const std::size_t n = b.cols();
  std::vector<std::pair<IntVector, Rat>> out;
  auto consider = [&](const IntVector& z) {
    RatVector v = apply(b, z);
    if (target)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= (*target)[i];
    const Rat val = norm(v, p);
    if (val <= seed_value) out.emplace_back(z, val);
  };

  const std::vector<long> coeff = box_radii(b, target, p, seed_value);
  Int fl = seed_value.get_num() / seed_value.get_den() + 1, amb_r = fl;
  if (p == NormKind::L2) mpz_sqrt(amb_r.get_mpz_t(), fl.get_mpz_t());
  const long amb = amb_r.get_si() + 2;  // +1 rounding, +1 for the truncated centre
  double coeff_vol = 1, amb_vol = 1;
  for (long r : coeff) coeff_vol *= 2.0 * r + 1;
  for (std::size_t i = 0; i < n; ++i) amb_vol *= 2.0 * amb + 1;
  if (coeff_vol <= amb_vol) {
    for_box(coeff, consider);
    return out;
  }

  const Int d = det(b);
  const IntMatrix adj = adjugate(b);
  IntVector centre(n, Int(0));
  if (target)
    for (std::size_t i = 0; i < n; ++i) centre[i] = (*target)[i].get_num() / (*target)[i].get_den();
  for_box(n, amb, [&](const IntVector& w) {
    IntVector v(n), z(n, Int(0));
    for (std::size_t i = 0; i < n; ++i) v[i] = centre[i] + w[i];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) z[i] += adj(i, j) * v[j];
      if (z[i] % d != 0) return;
      z[i] /= d;
    }
    consider(z);
  });
  return out;
}

inline Rat seed_from_columns(const IntMatrix& b, NormKind p) {
  std::optional<Rat> best;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const Rat v = norm(salat::to_rat(b.column(j)), p);
    if (!best || v < *best) best = v;
  }
  return *best;
}

inline bool is_zero(const IntVector& z) {
  return std::all_of(z.begin(), z.end(), [](const Int& e) { return e == 0; });
}

/// lambda_1 by exhaustive coefficient box.
inline Rat shortest(const IntMatrix& b, NormKind p) {
  const Rat seed = seed_from_columns(b, p);
  Rat best = seed;
  for (const auto& [z, v] : box_points(b, nullptr, p, seed))
    if (!is_zero(z)) best = std::min(best, v);
  return best;
}

/// dist(t, B Z^n) by exhaustive coefficient box, seeded by rounding B^-1 t.
inline Rat closest(const IntMatrix& b, const RatVector& t, NormKind p) {
  const RatMatrix inv = inverse(b);
  IntVector z0(b.cols());
  for (std::size_t i = 0; i < b.cols(); ++i) {
    Rat y = 0;
    for (std::size_t j = 0; j < b.cols(); ++j) y += inv(i, j) * t[j];
    y += Rat(1, 2);
    z0[i] = y.get_num() / y.get_den();
    if (y < 0 && z0[i] * y.get_den() != y.get_num()) z0[i] -= 1;
  }
  // Translate so the box is centred on the rounded point; distances are unchanged.
  RatVector shifted = t;
  const RatVector bz = ref::apply(b, z0);
  for (std::size_t i = 0; i < t.size(); ++i) shifted[i] -= bz[i];
  RatVector d = shifted;
  for (auto& e : d) e = -e;
  const Rat seed = norm(d, p);
  Rat best = seed;
  for (const auto& [z, v] : box_points(b, &shifted, p, seed)) best = std::min(best, v);
  return best;
}

inline std::size_t rank_of(const std::vector<RatVector>& vs, std::size_t n) {
  std::vector<RatVector> rows = vs;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rat f = rows[i][c] / rows[r][c];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// lambda_1..lambda_n by sorting the whole box and picking independent vectors.
/// The box comes from the largest basis column, which bounds lambda_n.
inline std::vector<Rat> successive(const IntMatrix& b, NormKind p) {
  Rat seed = 0;
  for (std::size_t j = 0; j < b.cols(); ++j) seed = std::max(seed, norm(salat::to_rat(b.column(j)), p));
  auto pts = box_points(b, nullptr, p, seed);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& c) { return a.second < c.second; });
  std::vector<RatVector> chosen;
  std::vector<Rat> out;
  for (const auto& [z, v] : pts) {
    if (is_zero(z)) continue;
    auto trial = chosen;
    trial.push_back(apply(b, z));
    if (rank_of(trial, b.rows()) == trial.size()) {
      chosen = trial;
      out.push_back(v);
      if (out.size() == b.cols()) break;
    }
  }
  return out;
}

inline IntMatrix random_matrix(salat::Rng& rng, std::size_t n, long k) {
  for (;;) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Int(static_cast<long>(rng.range(-k, k)));
    if (det(m) != 0) return m;
  }
}

}  // namespace ref
