#ifndef M0N_INTLATTICE_LATTICE_HPP
#define M0N_INTLATTICE_LATTICE_HPP

#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "m0n/intlattice/smith.hpp"

namespace m0n {

namespace detail {

/// Runs f on 64-bit entries, retrying with arbitrary precision on overflow.
/// The result must fit back into 64 bits.
template <class F>
IntMatrix int_with_fallback(const IntMatrix& a, F&& f) {
  try {
    return f(a);
  } catch (const ArithmeticOverflow&) {
    return to_int(f(to_big(a)));
  }
}

template <class T>
Matrix<T> inverse_impl(const Matrix<T>& u) {
  if (u.rows() != u.cols()) throw DomainError("inverse of a non-square matrix");
  auto s = smith_impl(u, true, true, false);
  if (s.rank != u.rows()) throw DomainError("matrix is singular");
  for (std::size_t i = 0; i < s.rank; ++i)
    if (!arith::is_unit(s.D(i, i))) throw DomainError("matrix is not unimodular");
  // D is the identity after sign normalization, so U^-1 = R * L.
  return s.R * s.L;
}

template <class T>
Matrix<T> kernel_impl(const Matrix<T>& a) {
  auto s = smith_impl(a, false, true, false);
  return s.R.submatrix(0, a.cols(), s.rank, a.cols());
}

template <class T>
Matrix<T> saturation_impl(const Matrix<T>& b) {
  auto s = smith_impl(b, true, false, false);
  // span_Q(B) = L^-1 * span(e_1..e_rank).
  Matrix<T> linv = inverse_impl(s.L);
  return linv.submatrix(0, b.rows(), 0, s.rank);
}

}  // namespace detail

/// Columns form a Z-basis of {x : A x = 0}; the basis is saturated.
inline IntMatrix kernel_basis(const IntMatrix& a) {
  return detail::int_with_fallback(a, [](const auto& m) { return detail::kernel_impl(m); });
}

/// Columns form a basis of (Q-span of the columns of B) intersected with Z^rows.
inline IntMatrix saturation(const IntMatrix& b) {
  return detail::int_with_fallback(b, [](const auto& m) { return detail::saturation_impl(m); });
}

/// Inverse of a unimodular matrix; throws DomainError otherwise.
inline IntMatrix unimodular_inverse(const IntMatrix& u) {
  return detail::int_with_fallback(u, [](const auto& m) { return detail::inverse_impl(m); });
}

inline bool is_unimodular(const IntMatrix& u) {
  if (u.rows() != u.cols()) return false;
  auto f = invariant_factors(u);
  if (f.size() != u.rows()) return false;
  for (const auto& x : f)
    if (x != 1) return false;
  return true;
}

/// A saturated sublattice of Z^r with coordinate and quotient maps.
///   basis:      r x k, columns are the basis
///   coords:     k x r, coords * basis = I and basis * coords * v = v on the span
///   quotient:   (r-k) x r, surjective onto Z^(r-k) with kernel the span
///   lift:       r x (r-k), quotient * lift = I
struct Sublattice {
  IntMatrix basis;
  IntMatrix coords;
  IntMatrix quotient;
  IntMatrix lift;

  std::size_t ambient_rank() const { return basis.rows(); }
  std::size_t rank() const { return basis.cols(); }
};

/// Builds the sublattice data for a saturated basis; throws InvariantViolation
/// if the columns are dependent or not saturated.
inline Sublattice make_sublattice(const IntMatrix& basis) {
  const std::size_t r = basis.rows(), k = basis.cols();
  auto build = [&](const auto& b) {
    using T = std::decay_t<decltype(b(0, 0))>;
    auto s = detail::smith_impl(b, true, true, true);
    ensure(s.rank == k, "sublattice basis is not linearly independent");
    for (std::size_t i = 0; i < k; ++i) ensure(s.D(i, i) == 1, "sublattice basis is not saturated");
    Matrix<T> top = s.L.submatrix(0, k, 0, r);
    Matrix<T> coords = s.R * top;
    Matrix<T> quotient = s.L.submatrix(k, r, 0, r);
    Matrix<T> linv = detail::inverse_impl(s.L);
    Matrix<T> lift = linv.submatrix(0, r, k, r);
    return std::vector<Matrix<T>>{coords, quotient, lift};
  };
  Sublattice out;
  out.basis = basis;
  std::vector<IntMatrix> parts;
  try {
    parts = build(basis);
  } catch (const ArithmeticOverflow&) {
    for (auto& m : build(to_big(basis))) parts.push_back(to_int(m));
  }
  out.coords = parts[0];
  out.quotient = parts[1];
  out.lift = parts[2];
  return out;
}

/// Some x with B x = v, if one exists.
inline std::optional<std::vector<std::int64_t>> solve_integer(const IntMatrix& b, const std::vector<std::int64_t>& v) {
  if (v.size() != b.rows()) throw DomainError("right-hand side length mismatch");
  auto s = smith_normal_form(b);
  std::vector<BigInt> lv(b.rows());
  for (std::size_t i = 0; i < b.rows(); ++i) {
    BigInt acc = 0;
    for (std::size_t j = 0; j < b.rows(); ++j) acc += s.L(i, j) * arith::to_big(v[j]);
    lv[i] = acc;
  }
  std::vector<BigInt> y(b.cols(), 0);
  for (std::size_t i = 0; i < b.rows(); ++i) {
    if (i < s.rank) {
      if (lv[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = lv[i] / s.D(i, i);
    } else if (lv[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<std::int64_t> x(b.cols());
  for (std::size_t i = 0; i < b.cols(); ++i) {
    BigInt acc = 0;
    for (std::size_t j = 0; j < b.cols(); ++j) acc += s.R(i, j) * y[j];
    x[i] = arith::to_int64(acc);
  }
  return x;
}

}  // namespace m0n

#endif  // M0N_INTLATTICE_LATTICE_HPP
