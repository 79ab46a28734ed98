#pragma once

// Exact integer primitives shared by every module: the arbitrary-precision
// scalar types, lattice points, dense integer matrices, unimodular affine maps
// and the typed error hierarchy.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace klein {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define KLEIN_DEFINE_ERROR(Name)         \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  };

KLEIN_DEFINE_ERROR(RankError)
KLEIN_DEFINE_ERROR(DegenerateError)
KLEIN_DEFINE_ERROR(DimensionError)
KLEIN_DEFINE_ERROR(ParameterError)
KLEIN_DEFINE_ERROR(NotEmptyError)
KLEIN_DEFINE_ERROR(NotAPyramidError)
KLEIN_DEFINE_ERROR(SingleStoryError)
KLEIN_DEFINE_ERROR(NotInListError)
KLEIN_DEFINE_ERROR(QuadrangleInDimTwoError)
KLEIN_DEFINE_ERROR(NotEnoughPointsError)
KLEIN_DEFINE_ERROR(IrrationalSpectrumError)
KLEIN_DEFINE_ERROR(BudgetExceededError)
KLEIN_DEFINE_ERROR(EpsilonSearchError)
KLEIN_DEFINE_ERROR(InternalError)

#undef KLEIN_DEFINE_ERROR

// ---------------------------------------------------------------------------
// Scalar helpers

inline Integer abs(Integer const& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

// Floor division; `b` must be nonzero.
inline Integer floorDiv(Integer const& a, Integer const& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Integer floorOf(Rational const& x) {
  return floorDiv(boost::multiprecision::numerator(x),
                  boost::multiprecision::denominator(x));
}

inline bool isIntegral(Rational const& x) {
  return boost::multiprecision::denominator(x) == 1;
}

inline Integer toInteger(Rational const& x) {
  if (!isIntegral(x)) throw InternalError("rational value is not an integer");
  return boost::multiprecision::numerator(x);
}

// Multiplicative inverse of `a` modulo `m` (m >= 2, gcd(a, m) = 1).
inline Integer modInverse(Integer const& a, Integer const& m) {
  Integer old_r = floorDiv(a, m) * -m + a, r = m;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = std::move(r);
    r = std::move(t);
    t = old_s - q * s;
    old_s = std::move(s);
    s = std::move(t);
  }
  if (old_r != 1) throw ParameterError("value is not invertible modulo m");
  return floorDiv(old_s, m) * -m + old_s;
}

// ---------------------------------------------------------------------------
// LatticePoint

class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::size_t dim) : coords_(dim) {}
  explicit LatticePoint(std::vector<Integer> coords)
      : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<long long> coords) {
    coords_.reserve(coords.size());
    for (long long c : coords) coords_.emplace_back(c);
  }

  static LatticePoint zero(std::size_t dim) { return LatticePoint(dim); }
  static LatticePoint unit(std::size_t dim, std::size_t axis) {
    LatticePoint p(dim);
    p[axis] = 1;
    return p;
  }

  std::size_t dim() const { return coords_.size(); }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  Integer const& operator[](std::size_t i) const { return coords_[i]; }
  std::vector<Integer> const& coords() const { return coords_; }

  bool isZero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](Integer const& c) { return c == 0; });
  }

  // gcd of the coordinates; 0 for the zero vector.
  Integer content() const {
    Integer g = 0;
    for (auto const& c : coords_) g = gcd(g, c);
    return g;
  }
  bool isPrimitive() const { return content() == 1; }
  LatticePoint primitive() const {
    Integer g = content();
    if (g == 0) return *this;
    LatticePoint p = *this;
    for (auto& c : p.coords_) c /= g;
    return p;
  }

  LatticePoint& operator+=(LatticePoint const& o) {
    checkDim(o);
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  LatticePoint& operator-=(LatticePoint const& o) {
    checkDim(o);
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  LatticePoint& operator*=(Integer const& k) {
    for (auto& c : coords_) c *= k;
    return *this;
  }
  friend LatticePoint operator+(LatticePoint a, LatticePoint const& b) {
    return a += b;
  }
  friend LatticePoint operator-(LatticePoint a, LatticePoint const& b) {
    return a -= b;
  }
  friend LatticePoint operator-(LatticePoint a) {
    for (auto& c : a.coords_) c = -c;
    return a;
  }
  friend LatticePoint operator*(Integer const& k, LatticePoint a) {
    return a *= k;
  }

  friend bool operator==(LatticePoint const&, LatticePoint const&) = default;
  friend bool operator<(LatticePoint const& a, LatticePoint const& b) {
    return a.coords_ < b.coords_;
  }

  std::string str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < dim(); ++i) {
      if (i) os << ',';
      os << coords_[i];
    }
    os << ')';
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, LatticePoint const& p) {
    return os << p.str();
  }

 private:
  void checkDim(LatticePoint const& o) const {
    if (o.dim() != dim()) throw DimensionError("lattice point dimensions differ");
  }

  std::vector<Integer> coords_;
};

inline Integer dot(LatticePoint const& a, LatticePoint const& b) {
  if (a.dim() != b.dim()) throw DimensionError("dot: dimensions differ");
  Integer s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline LatticePoint cross(LatticePoint const& a, LatticePoint const& b) {
  if (a.dim() != 3 || b.dim() != 3) throw DimensionError("cross needs 3D");
  return LatticePoint(std::vector<Integer>{a[1] * b[2] - a[2] * b[1],
                                           a[2] * b[0] - a[0] * b[2],
                                           a[0] * b[1] - a[1] * b[0]});
}

using PointList = std::vector<LatticePoint>;

inline PointList sortedUnique(PointList pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// ---------------------------------------------------------------------------
// Dense matrices

template <typename Scalar>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      throw DimensionError("matrix entry count does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (auto const& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      for (long long v : r) entries_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Columns are the given points.
  static Matrix fromColumns(PointList const& cols) {
    if (cols.empty()) return {};
    Matrix m(cols[0].dim(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].dim() != m.rows_) throw DimensionError("ragged column list");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }
  static Matrix fromRows(PointList const& rows) {
    return fromColumns(rows).transposed();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool isSquare() const { return rows_ == cols_; }
  std::vector<Scalar> const& entries() const { return entries_; }

  Scalar& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  Scalar const& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(Matrix const& a, Matrix const& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  void swapRows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swapCols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += k * row[src]
  void addRow(std::size_t dst, std::size_t src, Scalar const& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  void addCol(std::size_t dst, std::size_t src, Scalar const& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negateRow(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negateCol(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  friend bool operator==(Matrix const&, Matrix const&) = default;

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) os << ',';
      os << '[';
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) os << ',';
        os << (*this)(i, j);
      }
      os << ']';
    }
    os << ']';
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, Matrix const& m) {
    return os << m.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

inline LatticePoint operator*(IntegerMatrix const& m, LatticePoint const& p) {
  if (m.cols() != p.dim()) throw DimensionError("matrix-vector shape mismatch");
  LatticePoint out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * p[j];
  return out;
}

inline LatticePoint column(IntegerMatrix const& m, std::size_t j) {
  LatticePoint p(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) p[i] = m(i, j);
  return p;
}
inline LatticePoint row(IntegerMatrix const& m, std::size_t i) {
  LatticePoint p(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) p[j] = m(i, j);
  return p;
}

inline RationalMatrix toRational(IntegerMatrix const& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntegerMatrix m) {
  if (!m.isSquare()) throw DimensionError("determinant of non-square matrix");
  std::size_t const n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swapRows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Rank via exact rational elimination.
inline std::size_t rank(RationalMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swapRows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      m.addRow(i, r, -f);
    }
    ++r;
  }
  return r;
}
inline std::size_t rank(IntegerMatrix const& m) { return rank(toRational(m)); }
inline std::size_t rank(PointList const& vectors) {
  if (vectors.empty()) return 0;
  return rank(IntegerMatrix::fromRows(vectors));
}

// Inverse of a square rational matrix; nullopt when singular.
inline std::optional<RationalMatrix> inverse(RationalMatrix m) {
  if (!m.isSquare()) throw DimensionError("inverse of non-square matrix");
  std::size_t const n = m.rows();
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    m.swapRows(c, p);
    inv.swapRows(c, p);
    Rational piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rational f = -m(i, c);
      m.addRow(i, c, f);
      inv.addRow(i, c, f);
    }
  }
  return inv;
}

inline std::optional<IntegerMatrix> toIntegerMatrix(RationalMatrix const& m) {
  IntegerMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!isIntegral(m(i, j))) return std::nullopt;
      out(i, j) = boost::multiprecision::numerator(m(i, j));
    }
  return out;
}

inline RationalMatrix operator*(RationalMatrix const& a, IntegerMatrix const& b) {
  return a * toRational(b);
}
inline RationalMatrix operator*(IntegerMatrix const& a, RationalMatrix const& b) {
  return toRational(a) * b;
}

// ---------------------------------------------------------------------------
// IntegerAffineMap: x -> linear * x + translation, with |det(linear)| = 1.

class IntegerAffineMap {
 public:
  IntegerAffineMap(IntegerMatrix linear, LatticePoint translation)
      : linear_(std::move(linear)), translation_(std::move(translation)) {
    if (!linear_.isSquare() || linear_.rows() != translation_.dim())
      throw DimensionError("affine map shape mismatch");
    if (abs(determinant(linear_)) != 1)
      throw ParameterError("affine map linear part is not unimodular");
  }
  explicit IntegerAffineMap(IntegerMatrix linear)
      : IntegerAffineMap(linear, LatticePoint::zero(linear.rows())) {}

  static IntegerAffineMap identity(std::size_t n) {
    return IntegerAffineMap(IntegerMatrix::identity(n));
  }
  static IntegerAffineMap translation(LatticePoint t) {
    std::size_t const n = t.dim();
    return IntegerAffineMap(IntegerMatrix::identity(n), std::move(t));
  }

  std::size_t dim() const { return translation_.dim(); }
  IntegerMatrix const& linear() const { return linear_; }
  LatticePoint const& translation() const { return translation_; }

  LatticePoint operator()(LatticePoint const& p) const {
    if (p.dim() != dim()) throw DimensionError("affine map dimension mismatch");
    return linear_ * p + translation_;
  }

  // (this ∘ inner)(x) = this(inner(x))
  IntegerAffineMap after(IntegerAffineMap const& inner) const {
    return IntegerAffineMap(linear_ * inner.linear_,
                            linear_ * inner.translation_ + translation_);
  }

  IntegerAffineMap inverse() const {
    auto inv = klein::inverse(toRational(linear_));
    auto lin = toIntegerMatrix(*inv);
    return IntegerAffineMap(*lin, -(*lin * translation_));
  }

  friend bool operator==(IntegerAffineMap const&, IntegerAffineMap const&) = default;

 private:
  IntegerMatrix linear_;
  LatticePoint translation_;
};

}  // namespace klein
