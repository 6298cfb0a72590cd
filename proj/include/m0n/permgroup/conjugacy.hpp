#ifndef M0N_PERMGROUP_CONJUGACY_HPP
#define M0N_PERMGROUP_CONJUGACY_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "m0n/permgroup/group.hpp"

namespace m0n {

namespace detail {

using Bits = std::vector<std::uint64_t>;

inline bool any_bit(const Bits& b) {
  for (auto w : b)
    if (w) return true;
  return false;
}

inline void and_into(Bits& dst, const Bits& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] &= src[i];
}

inline void set_bit(Bits& b, std::size_t k) { b[k / 64] |= 1ULL << (k % 64); }
inline bool test_bit(const Bits& b, std::size_t k) { return (b[k / 64] >> (k % 64)) & 1ULL; }

}  // namespace detail

/// Encodes the cycle type as counts of each cycle length, 4 bits per length.
inline std::uint64_t cycle_type_code(const Permutation& p) {
  std::uint64_t code = 0;
  for (int len : p.cycle_type()) code += 1ULL << (4 * (len - 1));
  return code;
}

/// Lookup tables over the elements of a target subgroup, reusable across
/// many conjugator searches into the same target.
class SubgroupIndex {
 public:
  explicit SubgroupIndex(const PermutationGroup& g) : SubgroupIndex(g.degree(), g.elements()) {}

  SubgroupIndex(int degree, std::vector<Permutation> elements)
      : n_(degree), elements_(std::move(elements)), words_((elements_.size() + 63) / 64) {
    pos_.assign(static_cast<std::size_t>(n_) * n_, detail::Bits(words_, 0));
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      for (int a = 0; a < n_; ++a) detail::set_bit(pos_[a * n_ + elements_[k](a)], k);
      auto [it, inserted] = by_type_.try_emplace(cycle_type_code(elements_[k]), detail::Bits(words_, 0));
      detail::set_bit(it->second, k);
    }
  }

  int degree() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t words() const { return words_; }
  const std::vector<Permutation>& elements() const { return elements_; }
  /// Elements l with l(a) = b.
  const detail::Bits& mapping(int a, int b) const { return pos_[a * n_ + b]; }
  const detail::Bits* of_type(std::uint64_t code) const {
    auto it = by_type_.find(code);
    return it == by_type_.end() ? nullptr : &it->second;
  }

 private:
  int n_;
  std::vector<Permutation> elements_;
  std::size_t words_;
  std::vector<detail::Bits> pos_;
  std::unordered_map<std::uint64_t, detail::Bits> by_type_;
};

namespace detail {

/// Backtracking over the images of points, pruned by requiring that each
/// partially determined conjugate w a w^-1 still agrees with some element
/// of the target.
class ConjugatorSearch {
 public:
  ConjugatorSearch(const std::vector<Permutation>& source_gens, const SubgroupIndex& target)
      : n_(target.degree()), target_(target) {
    for (const auto& g : source_gens)
      if (!g.is_identity()) {
        gens_.push_back(g);
        inv_.push_back(g.inverse());
      }
    std::vector<bool> placed(n_, false);
    for (int s = 0; s < n_; ++s) {
      if (placed[s]) continue;
      std::vector<int> q{s};
      placed[s] = true;
      for (std::size_t i = 0; i < q.size(); ++i)
        for (const auto& g : gens_)
          for (int y : {g(q[i]), g.inverse()(q[i])})
            if (!placed[y]) {
              placed[y] = true;
              q.push_back(y);
            }
      order_.insert(order_.end(), q.begin(), q.end());
    }
  }

  std::optional<Permutation> run() {
    std::vector<Bits> cand;
    for (const auto& g : gens_) {
      const Bits* b = target_.of_type(cycle_type_code(g));
      if (!b) return std::nullopt;
      cand.push_back(*b);
    }
    image_.assign(n_, -1);
    used_.assign(n_, false);
    if (!dfs(0, cand)) return std::nullopt;
    std::vector<int> one_based(n_);
    for (int i = 0; i < n_; ++i) one_based[i] = image_[i] + 1;
    return Permutation::from_images(one_based);
  }

 private:
  bool dfs(std::size_t depth, const std::vector<Bits>& cand) {
    if (depth == order_.size()) return true;
    const int x = order_[depth];
    std::vector<Bits> next(cand.size());
    for (int y = 0; y < n_; ++y) {
      if (used_[y]) continue;
      image_[x] = y;
      used_[y] = true;
      bool ok = true;
      for (std::size_t i = 0; i < gens_.size() && ok; ++i) {
        next[i] = cand[i];
        const int fx = gens_[i](x);
        if (image_[fx] >= 0) and_into(next[i], target_.mapping(y, image_[fx]));
        const int pre = inv_[i](x);
        if (pre != x && image_[pre] >= 0) and_into(next[i], target_.mapping(image_[pre], y));
        ok = any_bit(next[i]);
      }
      if (ok && dfs(depth + 1, next)) return true;
      image_[x] = -1;
      used_[y] = false;
    }
    return false;
  }

  int n_;
  const SubgroupIndex& target_;
  std::vector<Permutation> gens_;
  std::vector<Permutation> inv_;
  std::vector<int> order_;
  std::vector<int> image_;
  std::vector<bool> used_;
};

}  // namespace detail

/// Some w with w * <source_gens> * w^-1 inside the indexed target.
inline std::optional<Permutation> search_conjugator(const std::vector<Permutation>& source_gens,
                                                    const SubgroupIndex& target) {
  return detail::ConjugatorSearch(source_gens, target).run();
}

/// Some w in S_n with w * A * w^-1 contained in B, if one exists.
inline std::optional<Permutation> find_conjugator_into(const PermutationGroup& a, const PermutationGroup& b) {
  if (a.degree() != b.degree()) throw DomainError("subgroups of different degrees");
  if (b.order() % a.order() != 0) return std::nullopt;
  return search_conjugator(a.generators(), SubgroupIndex(b));
}

/// A witness w with w * G1 * w^-1 = G2 as sets, or nothing when the two
/// subgroups are not conjugate in S_n.
inline std::optional<Permutation> is_conjugate_subgroup(const PermutationGroup& g1, const PermutationGroup& g2) {
  if (g1.degree() != g2.degree()) throw DomainError("subgroups of different degrees");
  if (g1.order() != g2.order()) return std::nullopt;
  if (g1.orbit_lengths() != g2.orbit_lengths()) return std::nullopt;
  if (g1.cycle_type_histogram() != g2.cycle_type_histogram()) return std::nullopt;
  return search_conjugator(g1.generators(), SubgroupIndex(g2));
}

/// Conjugate subgroup w * G * w^-1.
inline PermutationGroup conjugate_group(const PermutationGroup& g, const Permutation& w) {
  std::vector<Permutation> gens;
  for (const auto& x : g.generators()) gens.push_back(x.conjugated_by(w));
  return PermutationGroup(g.degree(), std::move(gens));
}

}  // namespace m0n

#endif  // M0N_PERMGROUP_CONJUGACY_HPP
