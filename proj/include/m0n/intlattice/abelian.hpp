#ifndef M0N_INTLATTICE_ABELIAN_HPP
#define M0N_INTLATTICE_ABELIAN_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "m0n/intlattice/smith.hpp"

namespace m0n {

/// A finitely generated abelian group Z^free + Z/d1 + ... + Z/dk in
/// canonical form: every d_i >= 2 and d_i divides d_(i+1).
class AbelianInvariants {
 public:
  AbelianInvariants() = default;

  /// Normalizes an arbitrary list of cyclic orders (0 meaning Z, 1 ignored).
  static AbelianInvariants from_cyclic_orders(const std::vector<BigInt>& orders) {
    AbelianInvariants a;
    std::vector<BigInt> torsion;
    for (const auto& d : orders) {
      if (d < 0) throw DomainError("negative cyclic order");
      if (d == 0)
        ++a.free_rank_;
      else if (d != 1)
        torsion.push_back(d);
    }
    if (!torsion.empty()) {
      BigMatrix diag(torsion.size(), torsion.size());
      for (std::size_t i = 0; i < torsion.size(); ++i) diag(i, i) = torsion[i];
      for (const auto& x : invariant_factors(diag))
        if (x != 1) a.torsion_.push_back(x);
    }
    return a;
  }

  static AbelianInvariants from_cyclic_orders(std::initializer_list<long> orders) {
    std::vector<BigInt> v;
    for (long o : orders) v.emplace_back(o);
    return from_cyclic_orders(v);
  }

  static AbelianInvariants free(std::size_t rank) {
    AbelianInvariants a;
    a.free_rank_ = rank;
    return a;
  }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<BigInt>& torsion() const { return torsion_; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }

  /// |torsion part|.
  BigInt torsion_order() const {
    BigInt o = 1;
    for (const auto& d : torsion_) o *= d;
    return o;
  }

  /// Number of cyclic factors of even order, i.e. the F_2-dimension of the
  /// torsion tensored with Z/2.
  std::size_t two_rank() const {
    return static_cast<std::size_t>(std::count_if(torsion_.begin(), torsion_.end(), [](const BigInt& d) { return d % 2 == 0; }));
  }

  /// "0", "Z/2", "Z/2+Z/4", "Z^3", "Z^2+Z/2".
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string out;
    if (free_rank_ == 1) out = "Z";
    if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
    for (const auto& d : torsion_) {
      if (!out.empty()) out += "+";
      out += "Z/" + d.get_str();
    }
    return out;
  }

  /// Inverse of to_string.
  static AbelianInvariants parse(const std::string& text) {
    if (text == "0") return {};
    std::vector<BigInt> orders;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('+', start);
      if (end == std::string::npos) end = text.size();
      const std::string piece = text.substr(start, end - start);
      if (piece == "Z") {
        orders.emplace_back(0);
      } else if (piece.rfind("Z^", 0) == 0) {
        const std::string num = piece.substr(2);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("bad abelian group term \"" + piece + "\"");
        for (unsigned long k = std::stoul(num); k > 0; --k) orders.emplace_back(0);
      } else if (piece.rfind("Z/", 0) == 0) {
        const std::string num = piece.substr(2);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("bad abelian group term \"" + piece + "\"");
        orders.emplace_back(num);
      } else {
        throw ParseError("bad abelian group term \"" + piece + "\"");
      }
      start = end + 1;
    }
    return from_cyclic_orders(orders);
  }

  friend bool operator==(const AbelianInvariants& a, const AbelianInvariants& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<BigInt> torsion_;
};

inline AbelianInvariants abelian_from_diagonal(const std::vector<BigInt>& nonzero_invariants, std::size_t free_rank) {
  std::vector<BigInt> orders = nonzero_invariants;
  for (std::size_t i = 0; i < free_rank; ++i) orders.emplace_back(0);
  return AbelianInvariants::from_cyclic_orders(orders);
}

/// Z^rows / (column span of A).
inline AbelianInvariants cokernel_invariants(const IntMatrix& a) {
  auto f = invariant_factors(a);
  return abelian_from_diagonal(f, a.rows() - f.size());
}

inline AbelianInvariants cokernel_invariants(const BigMatrix& a) {
  auto f = invariant_factors(a);
  return abelian_from_diagonal(f, a.rows() - f.size());
}

}  // namespace m0n

#endif  // M0N_INTLATTICE_ABELIAN_HPP
