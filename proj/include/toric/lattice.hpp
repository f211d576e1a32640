#pragma once

// Exact integer linear algebra: lattice vectors, integer matrices, Hermite and
// Smith normal forms, determinants, kernels and saturated sublattices.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "toric/errors.hpp"

namespace toric {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

/// Floor division for a positive divisor.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Remainder in [0, |b|).
inline Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r < 0) r += boost::multiprecision::abs(b);
  return r;
}

/// An element of Z^rank. Equality is coordinate-wise, ordering lexicographic.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t rank) : coords_(rank) {}
  explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long long> coords) {
    coords_.reserve(coords.size());
    for (long long c : coords) coords_.emplace_back(c);
  }

  std::size_t rank() const noexcept { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  std::span<const Integer> coords() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    check_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  LatticeVector& operator*=(const Integer& k) {
    for (auto& c : coords_) c *= k;
    return *this;
  }

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }
  friend LatticeVector operator*(const Integer& k, LatticeVector a) { return a *= k; }

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
    if (a.rank() != b.rank()) return a.rank() <=> b.rank();
    for (std::size_t i = 0; i < a.rank(); ++i) {
      if (a.coords_[i] < b.coords_[i]) return std::strong_ordering::less;
      if (a.coords_[i] > b.coords_[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const LatticeVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.rank(); ++i) os << (i ? "," : "") << v.coords_[i];
    return os << ')';
  }

 private:
  void check_rank(const LatticeVector& o) const {
    if (o.rank() != rank()) throw DimensionError("lattice vector rank mismatch");
  }

  std::vector<Integer> coords_;
};

struct LatticeVectorHash {
  std::size_t operator()(const LatticeVector& v) const noexcept {
    std::size_t h = v.rank();
    std::hash<Integer> hasher;
    for (const auto& c : v) h ^= hasher(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// The pairing M x N -> Z realised as the coordinate dot product.
inline Integer pairing(const LatticeVector& m, const LatticeVector& v) {
  if (m.rank() != v.rank()) throw DimensionError("pairing: rank mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < m.rank(); ++i) s += m[i] * v[i];
  return s;
}

inline Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& c : v) g = gcd(g, c);
  return g;
}

/// Divides out the coordinate gcd. Sign is preserved.
inline LatticeVector primitivize(const LatticeVector& v) {
  Integer g = content(v);
  if (g == 0) throw DegenerateInputError("primitivize: zero vector");
  LatticeVector out = v;
  if (g != 1)
    for (std::size_t i = 0; i < out.rank(); ++i) out[i] /= g;
  return out;
}

inline LatticeVector sum(std::span<const LatticeVector> vs, std::size_t rank) {
  LatticeVector s(rank);
  for (const auto& v : vs) s += v;
  return s;
}

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      for (long long x : r) entries_.emplace_back(x);
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntegerMatrix from_rows(std::span<const LatticeVector> rows, std::size_t cols) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].rank() != cols) throw DimensionError("from_rows: rank mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntegerMatrix from_columns(std::span<const LatticeVector> cols, std::size_t rows) {
    return from_rows(cols, rows).transposed();
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  LatticeVector row(std::size_t i) const {
    return LatticeVector(std::vector<Integer>(entries_.begin() + i * cols_, entries_.begin() + (i + 1) * cols_));
  }
  LatticeVector column(std::size_t j) const {
    LatticeVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntegerMatrix transposed() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: shape mismatch");
    IntegerMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend LatticeVector operator*(const IntegerMatrix& a, const LatticeVector& v) {
    if (a.cols_ != v.rank()) throw DimensionError("matrix-vector product: shape mismatch");
    LatticeVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && (*this)(i, j) != 0) return false;
    return true;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) os << (i ? ";" : "") << m.row(i);
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// Determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntegerMatrix a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Smith decomposition: left * original * right is diagonal with entries diag
/// (padded by zeros). left_inverse is kept so sublattice bases can be read off.
struct SmithDecomposition {
  std::vector<Integer> diag;  // nonzero invariant factors, each dividing the next
  IntegerMatrix left;
  IntegerMatrix left_inverse;
  IntegerMatrix right;
  IntegerMatrix original;

  std::size_t rank() const noexcept { return diag.size(); }
};

namespace detail {

inline bool find_min_pivot(const IntegerMatrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = boost::multiprecision::abs(a(i, j));
      if (!found || v < best) {
        best = v;
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntegerMatrix& original) {
  const std::size_t m = original.rows();
  const std::size_t n = original.cols();
  IntegerMatrix a = original;
  IntegerMatrix left = IntegerMatrix::identity(m);
  IntegerMatrix linv = IntegerMatrix::identity(m);
  IntegerMatrix right = IntegerMatrix::identity(n);

  // Row operations are mirrored on left (as row ops) and on left_inverse (as
  // the inverse column ops), column operations on right.
  auto row_swap = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    left.swap_rows(i, j);
    linv.swap_cols(i, j);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
    a.add_row(dst, src, k);
    left.add_row(dst, src, k);
    linv.add_col(src, dst, -k);
  };
  auto row_negate = [&](std::size_t r) {
    a.negate_row(r);
    left.negate_row(r);
    linv.negate_col(r);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    right.swap_cols(i, j);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& k) {
    a.add_col(dst, src, k);
    right.add_col(dst, src, k);
  };

  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = t, pj = t;
    if (!detail::find_min_pivot(a, t, pi, pj)) break;
    row_swap(t, pi);
    col_swap(t, pj);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        row_add(i, t, -q);
        if (a(i, t) != 0) {
          row_swap(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        col_add(j, t, -q);
        if (a(t, j) != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Pivot must divide the remaining block.
      bool fixed = true;
      for (std::size_t i = t + 1; i < m && fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_add(t, i, 1);
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (a(t, t) < 0) row_negate(t);
    diag.push_back(a(t, t));
  }
  return SmithDecomposition{std::move(diag), std::move(left), std::move(linv), std::move(right), original};
}

inline std::size_t matrix_rank(const IntegerMatrix& a) {
  return smith_normal_form(a).rank();
}

/// Row-style Hermite normal form of the row lattice: echelon rows with positive
/// pivots and entries above each pivot reduced into [0, pivot). Zero rows dropped.
inline IntegerMatrix hermite_normal_form(const IntegerMatrix& input) {
  IntegerMatrix a = input;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      // smallest nonzero |entry| in column c among rows >= r
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (a(i, c) != 0 && (best == m || boost::multiprecision::abs(a(i, c)) < boost::multiprecision::abs(a(best, c))))
          best = i;
      if (best == m) break;
      a.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (a(i, c) == 0) continue;
        a.add_row(i, r, -(a(i, c) / a(r, c)));
        if (a(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) a.add_row(i, r, -floor_div(a(i, c), a(r, c)));
    pivots.push_back(c);
    ++r;
  }
  IntegerMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j);
  return out;
}

/// Lattice basis of the real span of `vectors` intersected with Z^ambient_rank,
/// in Hermite normal form.
struct SaturatedSpan {
  std::vector<LatticeVector> basis;
  std::size_t rank = 0;
};

inline SaturatedSpan saturate_span(std::span<const LatticeVector> vectors, std::size_t ambient_rank) {
  if (vectors.empty()) return {};
  IntegerMatrix cols = IntegerMatrix::from_columns(vectors, ambient_rank);
  SmithDecomposition snf = smith_normal_form(cols);
  const std::size_t r = snf.rank();
  if (r == 0) return {};
  // Columns of left_inverse beyond the rank are irrelevant; the first r span
  // (R-span of vectors) cap Z^n.
  IntegerMatrix basis_rows(r, ambient_rank);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < ambient_rank; ++j) basis_rows(i, j) = snf.left_inverse(j, i);
  IntegerMatrix hnf = hermite_normal_form(basis_rows);
  SaturatedSpan out;
  out.rank = r;
  for (std::size_t i = 0; i < hnf.rows(); ++i) out.basis.push_back(hnf.row(i));
  return out;
}

/// Coordinates of v in an HNF basis (rows echelon). Returns nullopt when v is
/// not an integer combination of the basis.
inline std::optional<LatticeVector> coordinates_in_hnf_basis(std::span<const LatticeVector> basis,
                                                              const LatticeVector& v) {
  LatticeVector rest = v;
  LatticeVector x(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::size_t p = 0;
    while (p < basis[i].rank() && basis[i][p] == 0) ++p;
    if (p == basis[i].rank()) throw DegenerateInputError("zero row in HNF basis");
    if (rest[p] % basis[i][p] != 0) return std::nullopt;
    x[i] = rest[p] / basis[i][p];
    rest -= x[i] * basis[i];
  }
  if (!rest.is_zero()) return std::nullopt;
  return x;
}

/// Integer basis of {x : a x = 0}.
inline std::vector<LatticeVector> integer_kernel(const IntegerMatrix& a) {
  SmithDecomposition snf = smith_normal_form(a);
  std::vector<LatticeVector> out;
  for (std::size_t j = snf.rank(); j < a.cols(); ++j) out.push_back(snf.right.column(j));
  return out;
}

// Rational helpers -----------------------------------------------------------

using RationalVector = std::vector<Rational>;

inline RationalVector to_rational(const LatticeVector& v) {
  RationalVector out;
  out.reserve(v.rank());
  for (const auto& c : v) out.emplace_back(c);
  return out;
}

/// Rank of a list of rational vectors (rows).
inline std::size_t rational_rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < n; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

/// Solves a x = b for square nonsingular a; nullopt when singular.
inline std::optional<RationalVector> solve(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
      b[i] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

inline Rational rational_determinant(std::vector<RationalVector> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[c], a[p]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

/// Clears denominators and primitivizes a nonzero rational vector.
inline LatticeVector primitive_integer_multiple(const RationalVector& v) {
  Integer den = 1;
  for (const auto& c : v) den = lcm(den, boost::multiprecision::denominator(c));
  LatticeVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = boost::multiprecision::numerator(v[i]) * (den / boost::multiprecision::denominator(v[i]));
  return primitivize(out);
}

}  // namespace toric
