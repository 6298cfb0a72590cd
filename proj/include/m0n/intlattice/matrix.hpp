#ifndef M0N_INTLATTICE_MATRIX_HPP
#define M0N_INTLATTICE_MATRIX_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "m0n/errors.hpp"

namespace m0n {

using BigInt = mpz_class;

/// Raised by checked machine-word arithmetic; callers retry with BigInt.
class ArithmeticOverflow : public std::overflow_error {
 public:
  ArithmeticOverflow() : std::overflow_error("64-bit integer overflow") {}
};

namespace arith {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow();
  return r;
}
inline std::int64_t neg(std::int64_t a) { return sub(0, a); }
inline std::int64_t abs(std::int64_t a) { return a < 0 ? neg(a) : a; }
inline int sign(std::int64_t a) { return (a > 0) - (a < 0); }
/// Quotient rounded toward zero.
inline std::int64_t quot(std::int64_t a, std::int64_t b) {
  if (b == -1) return neg(a);
  return a / b;
}
inline std::int64_t rem(std::int64_t a, std::int64_t b) { return b == -1 ? 0 : a % b; }
inline std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = abs(a);
  b = abs(b);
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt neg(const BigInt& a) { return -a; }
inline BigInt abs(const BigInt& a) { return ::abs(a); }
inline int sign(const BigInt& a) { return sgn(a); }
inline BigInt quot(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline BigInt rem(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_tdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool less_abs(std::int64_t a, std::int64_t b) {
  // Compare as unsigned magnitudes so INT64_MIN does not trap.
  auto mag = [](std::int64_t x) { return x < 0 ? 0ULL - static_cast<std::uint64_t>(x) : static_cast<std::uint64_t>(x); };
  return mag(a) < mag(b);
}
inline bool less_abs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()) < 0; }
inline bool is_unit(std::int64_t a) { return a == 1 || a == -1; }
inline bool is_unit(const BigInt& a) { return a == 1 || a == -1; }

inline BigInt to_big(std::int64_t a) { return BigInt(static_cast<long>(a)); }
inline BigInt to_big(const BigInt& a) { return a; }

inline bool fits_int64(const BigInt& a) { return a.fits_slong_p(); }
inline std::int64_t to_int64(const BigInt& a) {
  if (!a.fits_slong_p()) throw ArithmeticOverflow();
  return a.get_si();
}

}  // namespace arith

/// Dense row-major integer matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DomainError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<T>> v;
    for (const auto& r : rows) {
      std::vector<T> row;
      for (long x : r) row.push_back(T(x));
      v.push_back(std::move(row));
    }
    return from_rows(v);
  }

  /// Matrix whose columns are the given vectors, all of length `rows`.
  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DomainError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  T* row(std::size_t i) { return data_.data() + i * cols_; }
  const T* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      T* ci = c.row(i);
      const T* ai = a.row(i);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (ai[k] == 0) continue;
        const T aik = ai[k];
        const T* bk = b.row(k);
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (bk[j] != 0) ci[j] = arith::add(ci[j], arith::mul(aik, bk[j]));
      }
    }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw DomainError("matrix-vector dimension mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i) {
      const T* ai = a.row(i);
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (ai[k] != 0 && v[k] != 0) out[i] = arith::add(out[i], arith::mul(ai[k], v[k]));
    }
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = arith::add(c.data_[k], b.data_[k]);
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = arith::sub(c.data_[k], b.data_[k]);
    return c;
  }

  Matrix operator-() const {
    Matrix c = *this;
    for (auto& x : c.data_) x = arith::neg(x);
    return c;
  }

  /// Rows stacked: [a; b].
  static Matrix vstack(const std::vector<Matrix>& parts) {
    if (parts.empty()) return {};
    std::size_t r = 0;
    for (const auto& p : parts) {
      if (p.cols_ != parts[0].cols_) throw DomainError("vstack column mismatch");
      r += p.rows_;
    }
    Matrix m(r, parts[0].cols_);
    std::size_t off = 0;
    for (const auto& p : parts) {
      std::copy(p.data_.begin(), p.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(off * m.cols_));
      off += p.rows_;
    }
    return m;
  }

  /// Columns side by side: [a | b].
  static Matrix hstack(const std::vector<Matrix>& parts) {
    std::vector<Matrix> t;
    for (const auto& p : parts) t.push_back(p.transpose());
    return vstack(t).transpose();
  }

  Matrix submatrix(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
    Matrix m(r1 - r0, c1 - c0);
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) m(i - r0, j - c0) = (*this)(i, j);
    return m;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == 0; });
  }

  /// Each row and column has exactly one entry, equal to 1.
  bool is_permutation_matrix() const {
    if (rows_ != cols_) return false;
    std::vector<int> col_hits(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      int hits = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        const T& x = (*this)(i, j);
        if (x == 0) continue;
        if (x != 1) return false;
        ++hits;
        ++col_hits[j];
      }
      if (hits != 1) return false;
    }
    return std::all_of(col_hits.begin(), col_hits.end(), [](int h) { return h == 1; });
  }

  const std::vector<T>& data() const { return data_; }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Action matrices and other small-entry matrices.
using IntMatrix = Matrix<std::int64_t>;
/// Arbitrary-precision matrices.
using BigMatrix = Matrix<BigInt>;

inline BigMatrix to_big(const IntMatrix& m) {
  BigMatrix b(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) b(i, j) = arith::to_big(m(i, j));
  return b;
}

inline const BigMatrix& to_big(const BigMatrix& m) { return m; }

/// Throws ArithmeticOverflow when an entry does not fit.
inline IntMatrix to_int(const BigMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = arith::to_int64(m(i, j));
  return r;
}

inline const IntMatrix& to_int(const IntMatrix& m) { return m; }

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

/// a^e for a square matrix, e >= 0.
template <class T>
Matrix<T> matrix_power(const Matrix<T>& a, long long e) {
  Matrix<T> acc = Matrix<T>::identity(a.rows());
  Matrix<T> base = a;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

}  // namespace m0n

#endif  // M0N_INTLATTICE_MATRIX_HPP
