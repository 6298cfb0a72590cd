#ifndef M0N_PERMGROUP_GROUP_HPP
#define M0N_PERMGROUP_GROUP_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "m0n/errors.hpp"
#include "m0n/permgroup/permutation.hpp"

namespace m0n {

/// Default cap on |G| for element enumeration.
inline constexpr std::size_t kDefaultElementCap = 10'000'000;

/// A finitely generated subgroup of S_n. The element list is computed on
/// first use and cached; copies share the cache, and the object is safe to
/// use from several threads.
class PermutationGroup {
 public:
  PermutationGroup(int degree, std::vector<Permutation> generators)
      : degree_(degree), gens_(std::move(generators)), cache_(std::make_shared<Cache>()) {
    if (gens_.empty()) gens_.push_back(Permutation::identity(degree));
    for (const auto& g : gens_)
      if (g.degree() != degree) throw DomainError("generator degree differs from group degree");
  }

  static PermutationGroup parse(std::string_view generator_list, int degree) {
    return PermutationGroup(degree, parse_generator_list(generator_list, degree));
  }

  static PermutationGroup trivial(int degree) { return PermutationGroup(degree, {Permutation::identity(degree)}); }

  static PermutationGroup symmetric(int degree) {
    if (degree == 1) return trivial(1);
    std::vector<int> cyc(degree);
    for (int i = 0; i < degree; ++i) cyc[i] = (i + 1) % degree + 1;
    std::vector<int> tr(degree);
    for (int i = 0; i < degree; ++i) tr[i] = i + 1;
    std::swap(tr[0], tr[1]);
    return PermutationGroup(degree, {Permutation::from_images(tr), Permutation::from_images(cyc)});
  }

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  /// All elements, sorted. Throws CapExceeded when |G| > cap.
  const std::vector<Permutation>& elements(std::size_t cap = kDefaultElementCap) const {
    std::lock_guard lock(cache_->mutex);
    if (!cache_->elements) cache_->elements = enumerate(cap);
    if (cache_->elements->size() > cap) throw CapExceeded("group order exceeds element cap");
    return *cache_->elements;
  }

  std::size_t order(std::size_t cap = kDefaultElementCap) const { return elements(cap).size(); }

  bool contains(const Permutation& p) const {
    const auto& el = elements();
    return std::binary_search(el.begin(), el.end(), p);
  }

  /// Every generator of `other` lies in this group.
  bool contains_group(const PermutationGroup& other) const {
    return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const Permutation& g) { return contains(g); });
  }

  bool same_elements(const PermutationGroup& other) const {
    return degree_ == other.degree_ && order() == other.order() && contains_group(other);
  }

  /// Orbits on {0..n-1}, each sorted, ordered by smallest point.
  std::vector<std::vector<int>> orbits() const {
    std::vector<int> comp(degree_, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < degree_; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> orb{s};
      comp[s] = static_cast<int>(out.size());
      for (std::size_t k = 0; k < orb.size(); ++k)
        for (const auto& g : gens_) {
          int y = g(orb[k]);
          if (comp[y] < 0) {
            comp[y] = comp[s];
            orb.push_back(y);
          }
        }
      std::sort(orb.begin(), orb.end());
      out.push_back(std::move(orb));
    }
    return out;
  }

  /// Orbit lengths in increasing order.
  std::vector<int> orbit_lengths() const {
    std::vector<int> out;
    for (const auto& o : orbits()) out.push_back(static_cast<int>(o.size()));
    std::sort(out.begin(), out.end());
    return out;
  }

  bool has_odd_orbit() const {
    for (int len : orbit_lengths())
      if (len % 2 == 1) return true;
    return false;
  }

  bool fixes_point() const {
    auto l = orbit_lengths();
    return !l.empty() && l.front() == 1;
  }

  /// Leaves some 2-element subset of points invariant.
  bool has_invariant_pair() const {
    int fixed = 0;
    for (int len : orbit_lengths()) {
      if (len == 2) return true;
      if (len == 1) ++fixed;
    }
    return fixed >= 2;
  }

  /// Count of elements per cycle type; a cheap conjugacy invariant.
  std::map<std::vector<int>, std::size_t> cycle_type_histogram() const {
    std::map<std::vector<int>, std::size_t> h;
    for (const auto& e : elements()) ++h[e.cycle_type()];
    return h;
  }

  /// Word (sequence of generator indices) for every element, read so that
  /// the element equals gens[w[0]] * gens[w[1]] * ... .
  std::unordered_map<Permutation, std::vector<int>> words(std::size_t cap = kDefaultElementCap) const {
    std::unordered_map<Permutation, std::vector<int>> w;
    std::vector<Permutation> queue{Permutation::identity(degree_)};
    w[queue[0]] = {};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
        Permutation y = gens_[gi] * queue[k];
        if (!w.contains(y)) {
          auto word = w[queue[k]];
          word.insert(word.begin(), static_cast<int>(gi));
          w.emplace(y, std::move(word));
          queue.push_back(y);
          if (queue.size() > cap) throw CapExceeded("group order exceeds element cap");
        }
      }
    }
    return w;
  }

  /// "(1,2); (3,4)" style rendering of the generators.
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (i) out += "; ";
      out += gens_[i].to_cycles();
    }
    return out;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::optional<std::vector<Permutation>> elements;
  };

  std::vector<Permutation> enumerate(std::size_t cap) const {
    std::unordered_set<Permutation> seen;
    std::vector<Permutation> queue{Permutation::identity(degree_)};
    seen.insert(queue[0]);
    for (std::size_t k = 0; k < queue.size(); ++k) {
      for (const auto& g : gens_) {
        Permutation y = g * queue[k];
        if (seen.insert(y).second) {
          queue.push_back(y);
          if (queue.size() > cap) throw CapExceeded("group order exceeds element cap");
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
  }

  int degree_;
  std::vector<Permutation> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Subgroup of S_n generated by the listed permutations, ignoring
/// redundant generators is the caller's business.
inline PermutationGroup make_group(int degree, std::initializer_list<std::string_view> cycles) {
  std::vector<Permutation> gens;
  for (auto c : cycles) gens.push_back(Permutation::parse_cycles(c, degree));
  return PermutationGroup(degree, std::move(gens));
}

/// The Klein-four group <iota_1, iota_2> built from three blocks of
/// transposition pairs: iota_1 swaps pairs in blocks one and three,
/// iota_2 swaps pairs in blocks two and three.
inline std::pair<Permutation, Permutation> iota_generators(int n1, int n2, int n3) {
  if (n1 < 0 || n2 < 0 || n3 < 0) throw DomainError("iota block sizes must be nonnegative");
  const int n = 2 * (n1 + n2 + n3);
  if (n < 6) throw DomainError("iota generators need n = 2(n1+n2+n3) >= 6");
  std::vector<int> a(n), b(n);
  for (int i = 0; i < n; ++i) a[i] = b[i] = i + 1;
  auto swap_pair = [](std::vector<int>& v, int i) {  // pair (2i-1, 2i), 1-based i
    std::swap(v[2 * i - 2], v[2 * i - 1]);
  };
  for (int i = 1; i <= n1; ++i) swap_pair(a, i);
  for (int i = n1 + n2 + 1; i <= n1 + n2 + n3; ++i) swap_pair(a, i);
  for (int i = n1 + 1; i <= n1 + n2 + n3; ++i) swap_pair(b, i);
  return {Permutation::from_images(a), Permutation::from_images(b)};
}

}  // namespace m0n

#endif  // M0N_PERMGROUP_GROUP_HPP
