#include "salat/exact.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

namespace salat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::TargetDenominatorTooLarge: return "TargetDenominatorTooLarge";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ModeUnavailable: return "ModeUnavailable";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

std::string_view to_string(NormKind p) {
  switch (p) {
    case NormKind::L1: return "l1";
    case NormKind::L2: return "l2";
    case NormKind::LINF: return "linf";
  }
  return "l2";
}

NormKind parse_norm(std::string_view s) {
  if (s == "l1" || s == "L1") return NormKind::L1;
  if (s == "l2" || s == "L2") return NormKind::L2;
  if (s == "linf" || s == "LINF" || s == "Linf") return NormKind::LINF;
  throw Error(ErrorKind::Parse, "unknown norm '" + std::string(s) + "' (expected l1, l2 or linf)");
}

Gamma parse_gamma(std::string_view s) {
  Rat q = parse_rat(s);
  Gamma g{q.get_num(), q.get_den()};
  if (g.num < g.den) throw Error(ErrorKind::InvalidInstance, "gamma must be >= 1");
  return g;
}

std::string to_string(const Gamma& g) { return to_string(g.num) + "/" + to_string(g.den); }

// ---- scalars ---------------------------------------------------------------

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

Int round_half_up(const Rat& q) { return floor(q + Rat(1, 2)); }

Int pow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

std::size_t bitlength(const Int& a) {
  if (a == 0) return 0;
  return mpz_sizeinbase(a.get_mpz_t(), 2);
}

std::size_t ceil_log2(const Int& a) {
  if (a <= 0) throw Error(ErrorKind::InvalidInstance, "ceil_log2 of non-positive value");
  if (a == 1) return 0;
  return bitlength(Int(a - 1));
}

Rat abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

std::string to_string(const Int& a) { return a.get_str(10); }

std::string to_string(const Rat& q) { return q.get_num().get_str(10) + "/" + q.get_den().get_str(10); }

Int parse_int(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw Error(ErrorKind::Parse, "empty integer");
  Int out;
  if (out.set_str(str[0] == '+' ? str.substr(1) : str, 10) != 0)
    throw Error(ErrorKind::Parse, "not an integer: '" + str + "'");
  return out;
}

Rat parse_rat(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(s) + "'");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// ---- vectors ---------------------------------------------------------------

RatVector to_rat(const IntVector& v) { return RatVector(v.begin(), v.end()); }

IntVector to_int(const RatVector& v) {
  IntVector out;
  out.reserve(v.size());
  for (const auto& q : v) {
    if (q.get_den() != 1) throw Error(ErrorKind::NoSolution, "vector entry " + to_string(q) + " is not integral");
    out.push_back(q.get_num());
  }
  return out;
}

bool is_integral(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& q) { return q.get_den() == 1; });
}

Int lcd(const RatVector& v) {
  Int l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

RatVector scale(const RatVector& v, const Rat& s) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s;
  return out;
}

RatVector sub(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVector add(const RatVector& a, const RatVector& b) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

// ---- matrices --------------------------------------------------------------

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

namespace {

template <typename T>
Matrix<T> mul_impl(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidInstance, "dimension mismatch in matrix product");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      if (a(i, l) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, l) * b(l, j);
    }
  return out;
}

template <typename M, typename V>
V mulv_impl(const M& a, const V& v) {
  if (a.cols() != v.size()) throw Error(ErrorKind::InvalidInstance, "dimension mismatch in matrix-vector product");
  V out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

}  // namespace

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) { return mul_impl(a, b); }
RatMatrix mul(const RatMatrix& a, const RatMatrix& b) { return mul_impl(a, b); }
IntVector mul(const IntMatrix& a, const IntVector& v) { return mulv_impl(a, v); }
RatVector mul(const RatMatrix& a, const RatVector& v) { return mulv_impl(a, v); }

RatVector mul(const IntMatrix& a, const RatVector& v) {
  if (a.cols() != v.size()) throw Error(ErrorKind::InvalidInstance, "dimension mismatch in matrix-vector product");
  RatVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

IntMatrix scale(const IntMatrix& m, const Int& s) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * s;
  return out;
}

IntMatrix sub(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::InvalidInstance, "row mismatch in hconcat");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

IntMatrix column_matrix(const IntVector& v) {
  IntMatrix out(v.size(), 1);
  out.set_column(0, v);
  return out;
}

Int max_abs_entry(const IntMatrix& m) {
  Int best = 0;
  for (const auto& e : m.data()) {
    Int a = ::abs(e);
    if (a > best) best = a;
  }
  return best;
}

IntMatrix minor_matrix(const IntMatrix& m, std::size_t row, std::size_t col) {
  IntMatrix out(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

IntMatrix leading_block(const IntMatrix& m, std::size_t size) {
  IntMatrix out(size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) out(i, j) = m(i, j);
  return out;
}

namespace {

void swap_rows(IntMatrix& a, std::size_t r1, std::size_t r2) {
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

void divexact(Int& a, const Int& d) { mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t()); }

}  // namespace

Int bareiss_det(const IntMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::InvalidInstance, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(a, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        divexact(a(i, j), prev);
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t p = r;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    swap_rows(a, r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = col + 1; j < a.cols(); ++j) {
        a(i, j) = a(i, j) * a(r, col) - a(i, col) * a(r, j);
        divexact(a(i, j), prev);
      }
      a(i, col) = 0;
    }
    prev = a(r, col);
    ++r;
  }
  return r;
}

DetAdj bareiss_det_adj(const IntMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::InvalidInstance, "adjugate of non-square matrix");
  const std::size_t n = m.rows();
  DetAdj out;
  out.max_intermediate = std::max(Int(1), max_abs_entry(m));
  if (n == 0) {
    out.det = 1;
    return out;
  }
  if (n == 1) {
    out.det = m(0, 0);
    out.adj = IntMatrix::identity(1);
    return out;
  }

  // Fraction-free Gauss-Jordan on [M | I]: the left block ends as D*I and the
  // right block as D*M^{-1} with D = det of the row-permuted M.
  IntMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  int sign = 1;
  Int prev = 1;
  bool singular = false;
  for (std::size_t k = 0; k < n && !singular; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) {
        singular = true;
        break;
      }
      swap_rows(a, k, p);
      sign = -sign;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Int f = a(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        a(i, j) = a(k, k) * a(i, j) - f * a(k, j);
        divexact(a(i, j), prev);
        Int mag = ::abs(a(i, j));
        if (mag > out.max_intermediate) out.max_intermediate = mag;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }

  out.adj = IntMatrix(n, n);
  if (!singular) {
    out.det = sign * a(0, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out.adj(i, j) = sign * a(i, n + j);
    return out;
  }

  // Rank-deficient: adj(i,j) = (-1)^(i+j) det(M without row j, column i).
  out.det = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int d = bareiss_det(minor_matrix(m, j, i));
      out.adj(i, j) = ((i + j) % 2 == 0) ? d : Int(-d);
    }
  return out;
}

RatMatrix rat_inverse(const RatMatrix& m) {
  if (!m.square()) throw Error(ErrorKind::InvalidInstance, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw Error(ErrorKind::SingularMatrix, "matrix has determinant 0");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    const Rat piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

RatVector solve(const IntMatrix& m, const IntVector& rhs) {
  DetAdj da = bareiss_det_adj(m);
  if (da.det == 0) throw Error(ErrorKind::SingularMatrix, "cannot solve with a singular matrix");
  IntVector num = mul(da.adj, rhs);
  RatVector out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    out[i] = Rat(num[i], da.det);
    out[i].canonicalize();
  }
  return out;
}

IntMatrix hnf(const IntMatrix& input) {
  const std::size_t n = input.rows();
  const std::size_t m = input.cols();
  if (m < n) throw Error(ErrorKind::RankDeficient, "fewer columns than rows");
  IntMatrix h = input;

  // col_a <- s*col_a + t*col_b ; col_b <- u*col_a + v*col_b  (unimodular)
  auto combine = [&](std::size_t ca, std::size_t cb, const Int& s, const Int& t, const Int& u, const Int& v) {
    for (std::size_t r = 0; r < n; ++r) {
      Int x = h(r, ca), y = h(r, cb);
      h(r, ca) = s * x + t * y;
      h(r, cb) = u * x + v * y;
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (h(i, j) == 0) continue;
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h(i, i).get_mpz_t(), h(i, j).get_mpz_t());
      Int a_g = h(i, i) / g;
      Int b_g = h(i, j) / g;
      combine(i, j, s, t, Int(-b_g), a_g);
    }
    if (h(i, i) == 0) throw Error(ErrorKind::RankDeficient, "matrix does not have full row rank");
    if (h(i, i) < 0)
      for (std::size_t r = 0; r < n; ++r) h(r, i) = -h(r, i);
    for (std::size_t j = 0; j < i; ++j) {
      Int q = floor_div(h(i, j), h(i, i));
      if (q == 0) continue;
      for (std::size_t r = i; r < n; ++r) h(r, j) -= q * h(r, i);
    }
  }
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = h(i, j);
  return out;
}

std::vector<Int> snf_diagonal(const IntMatrix& input) {
  if (!input.square()) throw Error(ErrorKind::InvalidInstance, "snf of non-square matrix");
  if (bareiss_det(input) == 0) throw Error(ErrorKind::SingularMatrix, "snf requires a nonsingular matrix");
  const std::size_t n = input.rows();
  IntMatrix a = input;
  std::vector<Int> diag(n);

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (pi == n || ::abs(a(i, j)) < ::abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      swap_rows(a, t, pi);
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, t), a(i, pj));

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        Int q = floor_div(a(i, t), a(t, t));
        for (std::size_t j = t; j < n; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Int q = floor_div(a(t, j), a(t, t));
        for (std::size_t i = t; i < n; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold an offending row into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            for (std::size_t c = t; c < n; ++c) a(t, c) += a(i, c);
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag[t] = ::abs(a(t, t));
  }
  return diag;
}

Int norm_value(const IntVector& v, NormKind p) {
  Int acc = 0;
  for (const auto& e : v) {
    switch (p) {
      case NormKind::L1: acc += ::abs(e); break;
      case NormKind::L2: acc += e * e; break;
      case NormKind::LINF: {
        Int a = ::abs(e);
        if (a > acc) acc = a;
        break;
      }
    }
  }
  return acc;
}

Rat norm_value(const RatVector& v, NormKind p) {
  Rat acc = 0;
  for (const auto& e : v) {
    switch (p) {
      case NormKind::L1: acc += abs(e); break;
      case NormKind::L2: acc += e * e; break;
      case NormKind::LINF: {
        Rat a = abs(e);
        if (a > acc) acc = a;
        break;
      }
    }
  }
  return acc;
}

RatVector centered_frac(const RatVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - Rat(round_half_up(v[i]));
  return out;
}

Rat gamma_scaled(const Rat& value, const Gamma& g, NormKind p) {
  Rat f(g.num, g.den);
  f.canonicalize();
  return p == NormKind::L2 ? Rat(value * f * f) : Rat(value * f);
}

bool within_gamma(const Rat& achieved, const Rat& optimal, const Gamma& g, NormKind p) {
  // achieved * den^e <= num^e * optimal, e = 2 for squared L2 values.
  if (p == NormKind::L2) return achieved * g.den * g.den <= optimal * g.num * g.num;
  return achieved * g.den <= optimal * g.num;
}

}  // namespace salat
