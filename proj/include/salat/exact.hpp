#pragma once

// Exact integer/rational scalars, dense matrices and the linear algebra the
// rest of the library is built on. Nothing in here touches floating point.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "salat/error.hpp"

namespace salat {

using Int = mpz_class;
using Rat = mpq_class;  // mpq_class keeps den > 0 and gcd(num, den) = 1 after canonicalize()

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

enum class NormKind { L1, L2, LINF };

std::string_view to_string(NormKind p);
NormKind parse_norm(std::string_view s);

/// Row-major dense matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::InvalidInstance, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_column(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  const std::vector<T>& data() const noexcept { return data_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

/// Exact approximation factor gamma = num/den, carried as the integer pair.
struct Gamma {
  Int num = 1;
  Int den = 1;
};

Gamma parse_gamma(std::string_view s);
std::string to_string(const Gamma& g);

// ---- scalar helpers -------------------------------------------------------

Int floor_div(const Int& a, const Int& b);
Int floor(const Rat& q);
/// Nearest integer with ties rounded toward +infinity.
Int round_half_up(const Rat& q);
Int pow(const Int& base, unsigned long exp);
/// Number of bits in |a| (0 for a = 0).
std::size_t bitlength(const Int& a);
/// ceil(log2(a)) for a >= 1.
std::size_t ceil_log2(const Int& a);
Rat abs(const Rat& q);

std::string to_string(const Int& a);
/// Always "num/den", also for integral values.
std::string to_string(const Rat& q);
Int parse_int(std::string_view s);
/// Accepts "num/den" or a bare integer.
Rat parse_rat(std::string_view s);

// ---- vectors ---------------------------------------------------------------

RatVector to_rat(const IntVector& v);
/// Throws NoSolution if some entry is not an integer.
IntVector to_int(const RatVector& v);
bool is_integral(const RatVector& v);
/// Least common denominator of the entries (1 for the empty vector).
Int lcd(const RatVector& v);
RatVector scale(const RatVector& v, const Rat& s);
RatVector sub(const RatVector& a, const RatVector& b);
RatVector add(const RatVector& a, const RatVector& b);

// ---- matrices --------------------------------------------------------------

RatMatrix to_rat(const IntMatrix& m);
IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
RatMatrix mul(const RatMatrix& a, const RatMatrix& b);
IntVector mul(const IntMatrix& a, const IntVector& v);
RatVector mul(const IntMatrix& a, const RatVector& v);
RatVector mul(const RatMatrix& a, const RatVector& v);
IntMatrix scale(const IntMatrix& m, const Int& s);
IntMatrix sub(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& m);
/// Concatenate columns: [a | b].
IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
IntMatrix column_matrix(const IntVector& v);
Int max_abs_entry(const IntMatrix& m);
/// Remove one row and one column.
IntMatrix minor_matrix(const IntMatrix& m, std::size_t row, std::size_t col);
/// Top-left `size` x `size` block.
IntMatrix leading_block(const IntMatrix& m, std::size_t size);

struct DetAdj {
  Int det;
  IntMatrix adj;
  /// Largest magnitude seen during elimination (fraction-free, so every
  /// intermediate is a minor of [M | I] and obeys Hadamard's bound).
  Int max_intermediate;
};

/// Fraction-free (Bareiss) elimination. M * adj = adj * M = det * I.
/// Singular input still yields the adjugate, built from Bareiss minors.
DetAdj bareiss_det_adj(const IntMatrix& m);
Int bareiss_det(const IntMatrix& m);
/// Rank over Q via fraction-free elimination.
std::size_t rank(const IntMatrix& m);

/// Exact inverse over Q. Throws SingularMatrix.
RatMatrix rat_inverse(const RatMatrix& m);
/// Solves m * x = rhs exactly via the adjugate. Throws SingularMatrix.
RatVector solve(const IntMatrix& m, const IntVector& rhs);

/// Column-style Hermite normal form of an n x m matrix of full row rank:
/// lower triangular n x n, positive diagonal, 0 <= h(i,j) < h(i,i) for j < i.
/// Spans the same Z-module as the columns of `a`. Throws RankDeficient.
IntMatrix hnf(const IntMatrix& a);

/// Elementary divisors d1 | d2 | ... | dn of a nonsingular square matrix.
std::vector<Int> snf_diagonal(const IntMatrix& a);

/// Comparable exact norm value: sum |v_i| (L1), sum v_i^2 (L2, squared!),
/// max |v_i| (LINF).
Rat norm_value(const RatVector& v, NormKind p);
Int norm_value(const IntVector& v, NormKind p);

/// v minus its nearest integer vector, ties toward +infinity; entries in [-1/2, 1/2).
RatVector centered_frac(const RatVector& v);

/// Scale an ordinary norm bound by gamma at the level of norm values
/// (gamma^2 for the squared L2 value).
Rat gamma_scaled(const Rat& value, const Gamma& g, NormKind p);
/// achieved <= gamma * optimal, decided by cross-multiplication.
bool within_gamma(const Rat& achieved, const Rat& optimal, const Gamma& g, NormKind p);

}  // namespace salat
