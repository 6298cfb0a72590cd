#ifndef M0N_INTLATTICE_SMITH_HPP
#define M0N_INTLATTICE_SMITH_HPP

#include <optional>
#include <utility>
#include <vector>

#include "m0n/intlattice/matrix.hpp"

namespace m0n {

/// L * A * R = D with L, R unimodular and D diagonal. In Smith form the
/// nonzero diagonal entries are positive and each divides the next.
template <class T>
struct SmithForm {
  Matrix<T> D;
  Matrix<T> L;
  Matrix<T> R;
  std::size_t rank = 0;

  std::vector<T> diagonal() const {
    std::vector<T> d;
    for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

inline std::int64_t gcdext(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, arith::sub(old_r, arith::mul(q, r)));
    std::tie(old_s, s) = std::make_pair(s, arith::sub(old_s, arith::mul(q, s)));
    std::tie(old_t, t) = std::make_pair(t, arith::sub(old_t, arith::mul(q, t)));
  }
  if (old_r < 0) {
    old_r = arith::neg(old_r);
    old_s = arith::neg(old_s);
    old_t = arith::neg(old_t);
  }
  x = old_s;
  y = old_t;
  return old_r;
}

inline BigInt gcdext(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  BigInt g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Unimodular elimination to diagonal form with minimal-magnitude pivots.
/// L is tracked as rows, R as the rows of its transpose so that every
/// update is a contiguous row operation.
template <class T>
class Diagonalizer {
 public:
  Diagonalizer(Matrix<T> a, bool track_l, bool track_r)
      : d_(std::move(a)), m_(d_.rows()), n_(d_.cols()), track_l_(track_l), track_r_(track_r) {
    if (track_l_) l_ = Matrix<T>::identity(m_);
    if (track_r_) rt_ = Matrix<T>::identity(n_);
  }

  std::size_t run() {
    std::size_t t = 0;
    const std::size_t lim = std::min(m_, n_);
    while (t < lim) {
      auto piv = find_pivot(t);
      if (!piv) break;
      swap_rows(t, piv->first);
      swap_cols(t, piv->second);
      reduce(t);
      if (d_(t, t) < 0) negate_row(t);
      ++t;
    }
    return t;
  }

  /// Turns the leading `rank` diagonal entries into a divisibility chain.
  void make_divisibility_chain(std::size_t rank) {
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = i + 1; j < rank; ++j) {
        const T a = d_(i, i), b = d_(j, j);
        if (arith::rem(b, a) == 0) continue;
        T x, y;
        const T g = gcdext(a, b, x, y);
        const T ap = arith::quot(a, g), bp = arith::quot(b, g);
        d_(i, i) = g;
        d_(j, j) = arith::mul(a, bp);
        if (track_l_) {
          row_axpy(l_, i, j, T(1));                 // row_i += row_j
          row_axpy(l_, j, i, arith::neg(arith::mul(bp, y)));  // row_j -= b' y row_i
        }
        if (track_r_) {
          // new col_i = x col_i + y col_j, new col_j = -b' col_i + a' col_j
          T* ri = rt_.row(i);
          T* rj = rt_.row(j);
          for (std::size_t k = 0; k < n_; ++k) {
            const T ci = ri[k], cj = rj[k];
            ri[k] = arith::add(arith::mul(x, ci), arith::mul(y, cj));
            rj[k] = arith::add(arith::mul(arith::neg(bp), ci), arith::mul(ap, cj));
          }
        }
      }
  }

  Matrix<T>& D() { return d_; }
  Matrix<T>& L() { return l_; }
  Matrix<T> R() const { return rt_.transpose(); }
  const Matrix<T>& Rt() const { return rt_; }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m_; ++i) {
      const T* r = d_.row(i);
      for (std::size_t j = t; j < n_; ++j) {
        if (r[j] == 0) continue;
        if (!best || arith::less_abs(r[j], d_(best->first, best->second))) {
          best = {i, j};
          if (arith::is_unit(r[j])) return best;
        }
      }
    }
    return best;
  }

  void reduce(std::size_t t) {
    std::vector<std::size_t> nz;
    while (true) {
      // Clear column t below the pivot with row operations.
      nz.clear();
      const T* pr = d_.row(t);
      for (std::size_t j = t; j < n_; ++j)
        if (pr[j] != 0) nz.push_back(j);
      const T p = d_(t, t);
      bool remainder = false;
      for (std::size_t i = t + 1; i < m_; ++i) {
        T* ri = d_.row(i);
        if (ri[t] == 0) continue;
        const T q = arith::quot(ri[t], p);
        if (q != 0) {
          const T* prow = d_.row(t);
          for (std::size_t j : nz) ri[j] = arith::sub(ri[j], arith::mul(q, prow[j]));
          if (track_l_) row_axpy(l_, i, t, arith::neg(q));
        }
        if (ri[t] != 0) remainder = true;
      }
      if (remainder) {
        std::size_t best = t;
        for (std::size_t i = t + 1; i < m_; ++i)
          if (d_(i, t) != 0 && (best == t || arith::less_abs(d_(i, t), d_(best, t)))) best = i;
        swap_rows(t, best);
        continue;
      }
      // Column t is now zero below the pivot, so column operations only
      // touch row t of D.
      remainder = false;
      T* prow = d_.row(t);
      for (std::size_t j = t + 1; j < n_; ++j) {
        if (prow[j] == 0) continue;
        const T q = arith::quot(prow[j], p);
        if (q != 0) {
          prow[j] = arith::sub(prow[j], arith::mul(q, p));
          if (track_r_) row_axpy(rt_, j, t, arith::neg(q));
        }
        if (prow[j] != 0) remainder = true;
      }
      if (!remainder) return;
      std::size_t best = t;
      for (std::size_t j = t + 1; j < n_; ++j)
        if (prow[j] != 0 && (best == t || arith::less_abs(prow[j], prow[best]))) best = j;
      swap_cols(t, best);
    }
  }

  static void row_axpy(Matrix<T>& m, std::size_t dst, std::size_t src, const T& c) {
    T* a = m.row(dst);
    const T* b = m.row(src);
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (b[k] != 0) a[k] = arith::add(a[k], arith::mul(c, b[k]));
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(d_.row(a), d_.row(a) + n_, d_.row(b));
    if (track_l_) std::swap_ranges(l_.row(a), l_.row(a) + m_, l_.row(b));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m_; ++i) std::swap(d_(i, a), d_(i, b));
    if (track_r_) std::swap_ranges(rt_.row(a), rt_.row(a) + n_, rt_.row(b));
  }

  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < n_; ++j) d_(t, j) = arith::neg(d_(t, j));
    if (track_l_)
      for (std::size_t j = 0; j < m_; ++j) l_(t, j) = arith::neg(l_(t, j));
  }

  Matrix<T> d_;
  std::size_t m_, n_;
  bool track_l_, track_r_;
  Matrix<T> l_;
  Matrix<T> rt_;
};

template <class T>
SmithForm<T> smith_impl(Matrix<T> a, bool track_l, bool track_r, bool chain) {
  Diagonalizer<T> dz(std::move(a), track_l, track_r);
  const std::size_t rank = dz.run();
  if (chain) dz.make_divisibility_chain(rank);
  SmithForm<T> out;
  out.rank = rank;
  out.D = std::move(dz.D());
  if (track_l) out.L = std::move(dz.L());
  if (track_r) out.R = dz.R();
  return out;
}

template <class T>
SmithForm<BigInt> to_big(const SmithForm<T>& s) {
  return {to_big(s.D), to_big(s.L), to_big(s.R), s.rank};
}

}  // namespace detail

/// Full Smith normal form with transforms. Runs in 64-bit arithmetic and
/// restarts with arbitrary precision on overflow.
inline SmithForm<BigInt> smith_normal_form(const IntMatrix& a) {
  try {
    return detail::to_big(detail::smith_impl(a, true, true, true));
  } catch (const ArithmeticOverflow&) {
    return detail::smith_impl(to_big(a), true, true, true);
  }
}

inline SmithForm<BigInt> smith_normal_form(const BigMatrix& a) {
  return detail::smith_impl(a, true, true, true);
}

/// Nonzero Smith invariants of A in increasing (divisibility) order.
inline std::vector<BigInt> invariant_factors(const IntMatrix& a) {
  std::vector<BigInt> out;
  try {
    auto s = detail::smith_impl(a, false, false, true);
    for (auto x : s.diagonal()) out.push_back(arith::to_big(x));
  } catch (const ArithmeticOverflow&) {
    out = detail::smith_impl(to_big(a), false, false, true).diagonal();
  }
  return out;
}

inline std::vector<BigInt> invariant_factors(const BigMatrix& a) {
  return detail::smith_impl(a, false, false, true).diagonal();
}

inline std::size_t matrix_rank(const IntMatrix& a) {
  try {
    return detail::smith_impl(a, false, false, false).rank;
  } catch (const ArithmeticOverflow&) {
    return detail::smith_impl(to_big(a), false, false, false).rank;
  }
}

}  // namespace m0n

#endif  // M0N_INTLATTICE_SMITH_HPP
