#ifndef M0N_TESTS_ORACLES_BRUTE_SUBGROUPS_HPP
#define M0N_TESTS_ORACLES_BRUTE_SUBGROUPS_HPP

// Every subgroup of S_n as a sorted element list, then classes by taking the
// least conjugate over all of S_n. Feasible for n <= 6.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "m0n/permgroup/group.hpp"

namespace oracle {

using Elements = std::vector<int>;  // indices into the S_n list, sorted

class BruteSubgroups {
 public:
  explicit BruteSubgroups(int n) : n_(n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    do perms_.push_back(m0n::Permutation::from_images(img));
    while (std::next_permutation(img.begin(), img.end()));
    for (std::size_t i = 0; i < perms_.size(); ++i) index_[perms_[i]] = static_cast<int>(i);
    const std::size_t s = perms_.size();
    mul_.assign(s * s, 0);
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b) mul_[a * s + b] = index_.at(perms_[a] * perms_[b]);
    conj_.assign(s * s, 0);
    for (std::size_t w = 0; w < s; ++w)
      for (std::size_t a = 0; a < s; ++a) conj_[w * s + a] = index_.at(perms_[a].conjugated_by(perms_[w]));
  }

  /// All subgroups, each reached as <H, g> from a smaller subgroup H.
  std::set<Elements> all_subgroups() const {
    std::set<Elements> found{{index_.at(m0n::Permutation::identity(n_))}};
    std::vector<std::pair<Elements, std::vector<int>>> queue{{*found.begin(), {}}};
    const std::size_t s = perms_.size();
    for (std::size_t k = 0; k < queue.size(); ++k) {
      // <H, g> depends only on the coset Hg.
      const auto [base, gens] = queue[k];
      std::vector<bool> seen(s, false);
      for (int h : base) seen[h] = true;
      for (std::size_t g = 0; g < s; ++g) {
        if (seen[g]) continue;
        for (int h : base) seen[mul_[static_cast<std::size_t>(h) * s + g]] = true;
        std::vector<int> more = gens;
        more.push_back(static_cast<int>(g));
        Elements e = closure(base, more);
        if (found.insert(e).second) queue.push_back({std::move(e), std::move(more)});
      }
    }
    return found;
  }

  Elements canonical(const Elements& e) const {
    Elements best;
    const std::size_t s = perms_.size();
    for (std::size_t w = 0; w < s; ++w) {
      Elements c;
      for (int a : e) c.push_back(conj_[w * s + a]);
      std::sort(c.begin(), c.end());
      if (best.empty() || c < best) best = c;
    }
    return best;
  }

  std::set<Elements> class_canonicals() const {
    std::set<Elements> out;
    for (const auto& e : all_subgroups()) out.insert(canonical(e));
    return out;
  }

  Elements elements_of(const m0n::PermutationGroup& g) const {
    Elements e;
    for (const auto& x : g.elements()) e.push_back(index_.at(x));
    std::sort(e.begin(), e.end());
    return e;
  }

 private:
  Elements closure(const Elements& base, const std::vector<int>& gens) const {
    const std::size_t s = perms_.size();
    std::vector<bool> in(s, false);
    Elements out = base;
    for (int x : out) in[x] = true;
    for (std::size_t k = 0; k < out.size(); ++k)
      for (int h : gens) {
        const int y = mul_[static_cast<std::size_t>(h) * s + out[k]];
        if (!in[y]) {
          in[y] = true;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  int n_;
  std::vector<m0n::Permutation> perms_;
  std::map<m0n::Permutation, int> index_;
  std::vector<int> mul_, conj_;
};

}  // namespace oracle

#endif
