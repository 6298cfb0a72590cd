#ifndef M0N_SCHUBERT_SCHUBERT_HPP
#define M0N_SCHUBERT_SCHUBERT_HPP

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "m0n/errors.hpp"
#include "m0n/intlattice/matrix.hpp"
#include "m0n/schubert/partition.hpp"

namespace m0n {

/// C(a, i); zero when i < 0 or a < i, including negative a.
inline BigInt binomial(long a, long i) {
  if (i < 0 || a < i) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(i));
  return out;
}

/// Product formula for d_n(lambda): prod over i < j of (l_i - l_j + j - i) / (j - i).
inline BigInt dim_schur_product(int n, const Partition& lambda) {
  if (n < 0) throw DomainError("n must be nonnegative");
  if (n < lambda.height()) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= lambda[i] - lambda[j] + j - i;
      den *= j - i;
    }
  ensure(num % den == 0, "Weyl dimension quotient is not integral");
  return num / den;
}

/// Hook-content formula: prod over boxes (a, b) of (n - a + b) / hook(a, b).
inline BigInt dim_schur_hook(int n, const Partition& lambda) {
  if (n < 0) throw DomainError("n must be nonnegative");
  if (n < lambda.height()) return 0;
  const Partition t = lambda.transpose();
  BigInt num = 1, den = 1;
  for (int a = 0; a < lambda.height(); ++a)
    for (int b = 0; b < lambda[a]; ++b) {
      num *= n - a + b;
      den *= (lambda[a] - b - 1) + (t[b] - a - 1) + 1;
    }
  ensure(num % den == 0, "hook-content quotient is not integral");
  return num / den;
}

/// d_n(lambda) = dim S_lambda(C^n); 0 when n < ht(lambda).
inline BigInt dim_schur(int n, const Partition& lambda) {
  BigInt a = dim_schur_product(n, lambda);
  ensure(a == dim_schur_hook(n, lambda), "dimension formulas disagree");
  return a;
}

/// m_k(lambda) = sum_{i=0..k} (-1)^i C(|lambda|+1, i) d_{k-i}(lambda).
inline BigInt m_k(int k, const Partition& lambda) {
  if (k < 0) throw DomainError("k must be nonnegative");
  BigInt s = 0;
  for (int i = 0; i <= k; ++i) {
    BigInt term = binomial(lambda.weight() + 1, i) * dim_schur(k - i, lambda);
    if (i % 2) s -= term;
    else s += term;
  }
  return s;
}

/// f(x) = sum coeffs[i] x^i.
inline BigInt eval_poly(const std::vector<BigInt>& coeffs, const BigInt& x) {
  BigInt acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

/// sum_{i=0..d+1} (-1)^i C(d+1, i) f(x - i); vanishes when deg f <= d.
inline BigInt iterated_difference(const std::vector<BigInt>& coeffs, int d, long x) {
  if (d < 0) throw DomainError("d must be nonnegative");
  BigInt s = 0;
  for (int i = 0; i <= d + 1; ++i) {
    BigInt term = binomial(d + 1, i) * eval_poly(coeffs, BigInt(x - i));
    if (i % 2) s -= term;
    else s += term;
  }
  return s;
}

/// [X] . sigma_lambda for the generic torus orbit closure X in Gr(p, p+q).
inline BigInt klyachko_pairing(int p, int q, const Partition& lambda) {
  if (p < 1 || q < 1) throw DomainError("p and q must be positive");
  if (!lambda.fits(p, q)) throw DomainError("partition does not fit the p x q box");
  if (lambda.weight() != p + q - 1) throw DomainError("partition weight must be p + q - 1");
  return m_k(p, lambda);
}

namespace detail {

/// Counts LR tableaux of shape nu/lambda and content mu: rows weakly
/// increase, columns strictly increase, and the reverse reading word
/// (right to left, top to bottom) is a lattice word.
class LrCounter {
 public:
  LrCounter(const Partition& lambda, const Partition& mu, const Partition& nu)
      : lam_(lambda), mu_(mu), nu_(nu), rows_(nu.height()) {
    for (int r = 0; r < rows_; ++r) fill_.emplace_back(nu[r], 0);
    used_.assign(mu.height() + 1, 0);
  }

  long count() {
    total_ = 0;
    place(0, nu_[0] - 1);
    return total_;
  }

 private:
  void place(int r, int c) {
    while (r < rows_ && c < lam_[r]) {
      ++r;
      if (r < rows_) c = nu_[r] - 1;
    }
    if (r >= rows_) {
      ++total_;
      return;
    }
    // Entry at (r, c): at most the entry to its right, larger than the one above.
    int hi = mu_.height();
    if (c + 1 < nu_[r]) hi = std::min(hi, fill_[r][c + 1]);
    int lo = 1;
    if (r > 0 && c < nu_[r - 1]) lo = std::max(lo, c >= lam_[r - 1] ? fill_[r - 1][c] + 1 : 1);
    for (int v = lo; v <= hi; ++v) {
      if (used_[v] >= mu_[v - 1]) continue;
      if (v > 1 && used_[v] + 1 > used_[v - 1]) continue;
      fill_[r][c] = v;
      ++used_[v];
      place(r, c - 1);
      --used_[v];
    }
    fill_[r][c] = 0;
  }

  const Partition& lam_;
  const Partition& mu_;
  const Partition& nu_;
  int rows_;
  std::vector<std::vector<int>> fill_;
  std::vector<int> used_;
  long total_ = 0;
};

inline std::mutex& lr_memo_mutex() {
  static std::mutex m;
  return m;
}

inline std::map<std::tuple<Partition, Partition, Partition>, long>& lr_memo() {
  static std::map<std::tuple<Partition, Partition, Partition>, long> memo;
  return memo;
}

}  // namespace detail

/// Littlewood-Richardson coefficient c^nu_{lambda, mu}.
inline long lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (lambda.weight() + mu.weight() != nu.weight() || !nu.contains(lambda) || !nu.contains(mu)) return 0;
  if (mu.empty()) return lambda == nu ? 1 : 0;
  if (lambda.empty()) return mu == nu ? 1 : 0;
  // c^nu_{lambda,mu} = c^nu_{mu,lambda}; key on the ordered pair.
  auto key = lambda < mu ? std::make_tuple(lambda, mu, nu) : std::make_tuple(mu, lambda, nu);
  {
    std::lock_guard lock(detail::lr_memo_mutex());
    auto it = detail::lr_memo().find(key);
    if (it != detail::lr_memo().end()) return it->second;
  }
  const long c = detail::LrCounter(std::get<0>(key), std::get<1>(key), nu).count();
  std::lock_guard lock(detail::lr_memo_mutex());
  detail::lr_memo().emplace(std::move(key), c);
  return c;
}

/// Integer combination of Schubert classes in H^*(Gr(p, p+q)).
class CohomologyClass {
 public:
  CohomologyClass(int p, int q) : p_(p), q_(q) {
    if (p < 0 || q < 0) throw DomainError("box dimensions must be nonnegative");
  }

  static CohomologyClass schubert(int p, int q, const Partition& lambda) {
    CohomologyClass c(p, q);
    c.add(lambda, 1);
    return c;
  }

  int p() const { return p_; }
  int q() const { return q_; }
  const std::map<Partition, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  BigInt coefficient(const Partition& lambda) const {
    auto it = terms_.find(lambda);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  void add(const Partition& lambda, const BigInt& c) {
    if (!lambda.fits(p_, q_)) throw DomainError("partition " + lambda.to_string() + " does not fit the box");
    if (c == 0) return;
    BigInt& slot = terms_[lambda];
    slot += c;
    if (slot == 0) terms_.erase(lambda);
  }

  CohomologyClass& operator+=(const CohomologyClass& o) {
    check_box(o);
    for (const auto& [l, c] : o.terms_) add(l, c);
    return *this;
  }

  friend CohomologyClass operator+(CohomologyClass a, const CohomologyClass& b) { return a += b; }

  friend CohomologyClass operator*(const BigInt& s, const CohomologyClass& a) {
    CohomologyClass out(a.p_, a.q_);
    for (const auto& [l, c] : a.terms_) out.add(l, s * c);
    return out;
  }

  friend bool operator==(const CohomologyClass& a, const CohomologyClass& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.terms_ == b.terms_;
  }

  /// "10*(5,3) + 8*(5,2,1)"; "0" when zero.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += it->second.get_str() + "*" + it->first.to_string();
    }
    return out;
  }

  void check_box(const CohomologyClass& o) const {
    if (o.p_ != p_ || o.q_ != q_) throw DomainError("cohomology classes live in different boxes");
  }

 private:
  int p_, q_;
  std::map<Partition, BigInt> terms_;
};

/// Cup product: LR coefficients, dropping partitions outside the box.
inline CohomologyClass schubert_product(const CohomologyClass& a, const CohomologyClass& b) {
  a.check_box(b);
  CohomologyClass out(a.p(), a.q());
  std::map<int, std::vector<Partition>> by_weight;
  for (const auto& [la, ca] : a.terms())
    for (const auto& [lb, cb] : b.terms()) {
      const int w = la.weight() + lb.weight();
      auto it = by_weight.find(w);
      if (it == by_weight.end()) it = by_weight.emplace(w, partitions_in_box(a.p(), a.q(), w)).first;
      for (const auto& nu : it->second) {
        const long c = lr_coefficient(la, lb, nu);
        if (c) out.add(nu, ca * cb * c);
      }
    }
  return out;
}

/// [X] = sum over lambda in (q-1)^(p-1) of sigma_lambda sigma_lambda~,
/// lambda~ the complement of lambda in that rectangle.
inline CohomologyClass generic_orbit_class(int p, int q) {
  if (p < 1 || q < 1) throw DomainError("p and q must be positive");
  CohomologyClass out(p, q);
  for (const auto& lambda : partitions_in_box(p - 1, q - 1)) {
    const Partition comp = lambda.complement(p - 1, q - 1);
    out += schubert_product(CohomologyClass::schubert(p, q, lambda), CohomologyClass::schubert(p, q, comp));
  }
  return out;
}

/// Degree of a . sigma_lambda: the coefficient of the dual of lambda.
inline BigInt poincare_pairing(const CohomologyClass& a, const Partition& lambda) {
  return a.coefficient(lambda.complement(a.p(), a.q()));
}

}  // namespace m0n

#endif  // M0N_SCHUBERT_SCHUBERT_HPP
