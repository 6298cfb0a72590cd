#ifndef M0N_TESTS_ORACLES_MINORS_SNF_HPP
#define M0N_TESTS_ORACLES_MINORS_SNF_HPP

// Invariant factors as quotients of determinantal divisors:
// d_k = gcd of all k x k minors, s_k = d_k / d_(k-1).

#include <functional>
#include <vector>

#include "m0n/intlattice/matrix.hpp"

namespace oracle {

/// Fraction-free Bareiss elimination on a square BigInt matrix.
inline m0n::BigInt determinant(std::vector<std::vector<m0n::BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  m0n::BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline m0n::BigInt determinant_of(const m0n::BigMatrix& m) {
  m0n::ensure(m.rows() == m.cols(), "determinant of a non-square matrix");
  std::vector<std::vector<m0n::BigInt>> a(m.rows(), std::vector<m0n::BigInt>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return determinant(std::move(a));
}

inline std::vector<m0n::BigInt> invariant_factors_by_minors(const m0n::IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<m0n::BigInt> divisors{1};
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    m0n::BigInt g = 0;
    std::vector<std::size_t> rsel, csel;
    std::function<void(std::size_t)> pick_cols;
    std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
      if (rsel.size() == k) {
        pick_cols(0);
        return;
      }
      for (std::size_t i = start; i < rows; ++i) {
        rsel.push_back(i);
        pick_rows(i + 1);
        rsel.pop_back();
      }
    };
    pick_cols = [&](std::size_t start) {
      if (csel.size() == k) {
        std::vector<std::vector<m0n::BigInt>> sub(k, std::vector<m0n::BigInt>(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub[a][b] = m0n::BigInt(static_cast<long>(m(rsel[a], csel[b])));
        m0n::BigInt d = determinant(std::move(sub));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        return;
      }
      for (std::size_t j = start; j < cols; ++j) {
        csel.push_back(j);
        pick_cols(j + 1);
        csel.pop_back();
      }
    };
    pick_rows(0);
    if (g == 0) break;
    divisors.push_back(g);
  }
  std::vector<m0n::BigInt> out;
  for (std::size_t k = 1; k < divisors.size(); ++k) out.push_back(divisors[k] / divisors[k - 1]);
  return out;
}

}  // namespace oracle

#endif
