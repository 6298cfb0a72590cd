#ifndef M0N_PERMGROUP_SUBGROUPS_HPP
#define M0N_PERMGROUP_SUBGROUPS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "m0n/permgroup/catalog.hpp"
#include "m0n/permgroup/conjugacy.hpp"

namespace m0n {

/// Which conjugation identifies two subgroups of G.
enum class ConjugacyScope {
  within_group,  // conjugate by elements of G
  symmetric,     // conjugate by elements of S_n
};

enum class SubgroupFamily {
  all,
  prime_power,  // nontrivial p-subgroups for every prime p, plus the trivial group
};

/// Default cap on |G| for subgroup enumeration.
inline constexpr std::size_t kSubgroupEnumerationCap = 20'000;

/// One representative per conjugacy class of subgroups of G, sorted by order.
/// Every subgroup is reached as <K, g> from a representative K, so
/// extending representatives only is complete. A p-group has a normal
/// subgroup of index p, so for the prime-power family only extensions by
/// elements x normalizing K with x^p in K are needed.
inline std::vector<PermutationGroup> subgroup_classes_of(const PermutationGroup& g,
                                                         ConjugacyScope scope = ConjugacyScope::within_group,
                                                         std::size_t cap = kSubgroupEnumerationCap,
                                                         SubgroupFamily family = SubgroupFamily::all) {
  const auto& elems = g.elements(cap);
  const std::size_t n = elems.size();
  std::unordered_map<Permutation, std::uint32_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx.emplace(elems[i], static_cast<std::uint32_t>(i));
  const std::uint32_t id = idx.at(Permutation::identity(g.degree()));

  auto closure = [&](const std::vector<Permutation>& gens) {
    std::vector<bool> in(n, false);
    std::vector<std::uint32_t> out{id};
    in[id] = true;
    for (std::size_t k = 0; k < out.size(); ++k)
      for (const auto& s : gens) {
        const std::uint32_t y = idx.at(s * elems[out[k]]);
        if (!in[y]) {
          in[y] = true;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  };

  struct Rep {
    std::vector<std::uint32_t> elems;
    std::vector<Permutation> gens;
    ClassKey key;
  };
  std::vector<Rep> reps;
  std::multimap<ClassKey, std::size_t> by_key;
  std::set<std::vector<std::uint32_t>> seen;

  auto key_of = [&](const std::vector<std::uint32_t>& e, const std::vector<Permutation>& gens) {
    ClassKey k;
    k.order = e.size();
    k.orbit_lengths = PermutationGroup(g.degree(), gens).orbit_lengths();
    std::map<std::uint64_t, std::size_t> counts;
    for (auto x : e) ++counts[cycle_type_code(elems[x])];
    k.type_counts.assign(counts.begin(), counts.end());
    return k;
  };

  auto conjugate_in_g = [&](const std::vector<Permutation>& gens, const std::vector<std::uint32_t>& target) {
    for (const auto& w : elems) {
      bool ok = true;
      for (const auto& s : gens)
        if (!std::binary_search(target.begin(), target.end(), idx.at(s.conjugated_by(w)))) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  };

  auto consider = [&](std::vector<std::uint32_t> e, std::vector<Permutation> gens) {
    if (!seen.insert(e).second) return;
    ClassKey key = key_of(e, gens);
    auto [lo, hi] = by_key.equal_range(key);
    for (auto it = lo; it != hi; ++it) {
      const Rep& r = reps[it->second];
      bool conj = false;
      if (scope == ConjugacyScope::within_group) {
        conj = conjugate_in_g(gens, r.elems);
      } else {
        std::vector<Permutation> target;
        for (auto x : r.elems) target.push_back(elems[x]);
        conj = search_conjugator(gens, SubgroupIndex(g.degree(), std::move(target))).has_value();
      }
      if (conj) return;
    }
    by_key.emplace(key, reps.size());
    reps.push_back({std::move(e), std::move(gens), std::move(key)});
  };

  consider({id}, {Permutation::identity(g.degree())});
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const std::vector<std::uint32_t> base = reps[i].elems;
    const std::vector<Permutation> base_gens = reps[i].gens;
    std::vector<bool> in_base(n, false);
    for (auto x : base) in_base[x] = true;
    std::size_t p = 0;  // prime of a nontrivial p-group base
    if (family == SubgroupFamily::prime_power && base.size() > 1)
      for (p = 2; base.size() % p; ++p) {
      }
    for (std::uint32_t x = 0; x < n; ++x) {
      if (in_base[x]) continue;
      if (family == SubgroupFamily::prime_power) {
        const Permutation& y = elems[x];
        if (p == 0) {
          const long long o = y.order();
          bool prime = o > 1;
          for (long long d = 2; d * d <= o; ++d)
            if (o % d == 0) prime = false;
          if (!prime) continue;
        } else {
          if (!in_base[idx.at(y.pow(static_cast<long long>(p)))]) continue;
          bool normalizes = true;
          for (const auto& s : base_gens)
            if (!in_base[idx.at(s.conjugated_by(y))]) {
              normalizes = false;
              break;
            }
          if (!normalizes) continue;
        }
      }
      std::vector<Permutation> gens;
      for (const auto& s : base_gens)
        if (!s.is_identity()) gens.push_back(s);
      gens.push_back(elems[x]);
      auto e = closure(gens);
      consider(std::move(e), std::move(gens));
    }
  }

  std::vector<std::size_t> order(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return reps[a].key < reps[b].key; });
  std::vector<PermutationGroup> out;
  for (auto i : order) out.emplace_back(g.degree(), reps[i].gens);
  return out;
}

}  // namespace m0n

#endif  // M0N_PERMGROUP_SUBGROUPS_HPP
