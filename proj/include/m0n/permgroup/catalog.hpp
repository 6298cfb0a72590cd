#ifndef M0N_PERMGROUP_CATALOG_HPP
#define M0N_PERMGROUP_CATALOG_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "m0n/permgroup/conjugacy.hpp"
#include "m0n/permgroup/group.hpp"

namespace m0n {

enum class CatalogProvenance { exhaustive, cyclic_extension, imported_file };
enum class CatalogMethod { cyclic_extension };

inline std::string to_string(CatalogProvenance p) {
  switch (p) {
    case CatalogProvenance::exhaustive: return "exhaustive";
    case CatalogProvenance::cyclic_extension: return "cyclic-extension";
    case CatalogProvenance::imported_file: return "imported-file";
  }
  return "unknown";
}

inline CatalogProvenance parse_provenance(const std::string& s) {
  if (s == "exhaustive") return CatalogProvenance::exhaustive;
  if (s == "cyclic-extension") return CatalogProvenance::cyclic_extension;
  if (s == "imported-file") return CatalogProvenance::imported_file;
  throw ParseError("unknown catalog provenance \"" + s + "\"");
}

/// Conjugacy invariants used to bucket and order classes.
struct ClassKey {
  std::size_t order = 0;
  std::vector<int> orbit_lengths;
  std::vector<std::pair<std::uint64_t, std::size_t>> type_counts;

  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
  friend bool operator==(const ClassKey&, const ClassKey&) = default;
};

inline ClassKey class_key(const PermutationGroup& g) {
  ClassKey k;
  k.order = g.order();
  k.orbit_lengths = g.orbit_lengths();
  std::map<std::uint64_t, std::size_t> counts;
  for (const auto& e : g.elements()) ++counts[cycle_type_code(e)];
  k.type_counts.assign(counts.begin(), counts.end());
  return k;
}

/// One representative per conjugacy class of subgroups of S_degree.
struct SubgroupClassCatalog {
  int degree = 0;
  std::vector<std::string> names;
  std::vector<PermutationGroup> classes;
  CatalogProvenance provenance = CatalogProvenance::cyclic_extension;

  std::size_t size() const { return classes.size(); }

  /// Index of the class conjugate to g, if present.
  std::optional<std::size_t> find_class(const PermutationGroup& g) const {
    if (g.degree() != degree) return std::nullopt;
    const ClassKey key = class_key(g);
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (class_key(classes[i]) == key && is_conjugate_subgroup(g, classes[i])) return i;
    return std::nullopt;
  }
};

inline std::string class_name(std::size_t index) {
  std::string digits = std::to_string(index + 1);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  return "G" + digits;
}

namespace detail {

/// All of S_n (n <= 8) in lexicographic order of image lists, with the
/// lexicographic rank as index.
class SymmetricTable {
 public:
  explicit SymmetricTable(int n) : n_(n) {
    fact_.assign(n + 1, 1);
    for (int i = 1; i <= n; ++i) fact_[i] = fact_[i - 1] * static_cast<std::uint32_t>(i);
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i + 1;
    perms_.reserve(fact_[n]);
    do {
      perms_.push_back(Permutation::from_images(img));
    } while (std::next_permutation(img.begin(), img.end()));
    codes_.reserve(perms_.size());
    for (const auto& p : perms_) codes_.push_back(cycle_type_code(p));
  }

  int degree() const { return n_; }
  std::uint32_t size() const { return fact_[n_]; }
  const Permutation& at(std::uint32_t r) const { return perms_[r]; }
  std::uint64_t code(std::uint32_t r) const { return codes_[r]; }

  std::uint32_t rank(const Permutation& p) const {
    std::uint32_t r = 0;
    unsigned used = 0;
    for (int i = 0; i < n_; ++i) {
      const unsigned v = static_cast<unsigned>(p(i));
      const int smaller = std::popcount(~used & ((1U << v) - 1U));
      r += static_cast<std::uint32_t>(smaller) * fact_[n_ - 1 - i];
      used |= 1U << v;
    }
    return r;
  }

 private:
  int n_;
  std::vector<std::uint32_t> fact_;
  std::vector<Permutation> perms_;
  std::vector<std::uint64_t> codes_;
};

/// Sorted ranks of the closure of `gens`.
inline std::vector<std::uint32_t> closure_ranks(const SymmetricTable& t, const std::vector<Permutation>& gens) {
  std::vector<bool> in(t.size(), false);
  std::vector<std::uint32_t> out{t.rank(Permutation::identity(t.degree()))};
  in[out[0]] = true;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& g : gens) {
      const std::uint32_t r = t.rank(g * t.at(out[k]));
      if (!in[r]) {
        in[r] = true;
        out.push_back(r);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Greedy generating set: scan elements in rank order, keep those not yet
/// generated, then drop any that became redundant.
inline std::vector<Permutation> small_generating_set(const SymmetricTable& t,
                                                     const std::vector<std::uint32_t>& elems) {
  std::vector<Permutation> gens;
  std::vector<std::uint32_t> current{elems.front()};
  for (std::uint32_t r : elems) {
    if (std::binary_search(current.begin(), current.end(), r)) continue;
    gens.push_back(t.at(r));
    current = closure_ranks(t, gens);
    if (current.size() == elems.size()) break;
  }
  for (std::size_t i = gens.size(); i-- > 0;) {
    if (gens.size() == 1) break;
    std::vector<Permutation> rest = gens;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (closure_ranks(t, rest).size() == elems.size()) gens = std::move(rest);
  }
  if (gens.empty()) gens.push_back(Permutation::identity(t.degree()));
  return gens;
}

struct PerfectSeed {
  int support;
  std::vector<const char*> gens;
};

/// Perfect subgroups of S_8 up to conjugacy, as generators on points 1..support.
inline const std::vector<PerfectSeed>& perfect_seeds() {
  static const std::vector<PerfectSeed> seeds = {
      {1, {"()"}},
      {5, {"(1,2,3)", "(3,4,5)"}},                                   // A5, natural
      {6, {"(1,2,3,4,5)", "(1,6)(2,5)"}},                            // A5 transitive on 6
      {6, {"(1,2,3)", "(2,3,4,5,6)"}},                               // A6
      {7, {"(1,2,3)", "(1,2,3,4,5,6,7)"}},                           // A7
      {7, {"(1,2,3,4,5,6,7)", "(3,5)(6,7)"}},                        // PSL(2,7) on 7
      {8, {"(1,2,3)", "(2,3,4,5,6,7,8)"}},                           // A8
      {8, {"(1,2,3,4,5,6,7)", "(1,8)(2,7)(3,4)(5,6)"}},              // PSL(2,7) on 8
      {8, {"(1,2)(3,4)(5,6)(7,8)", "(2,3,5)(4,7,6)", "(2,4)(6,8)"}},  // AGL(3,2)
  };
  return seeds;
}

class CyclicExtension {
 public:
  explicit CyclicExtension(int degree) : n_(degree), table_(degree) {}

  std::vector<std::vector<std::uint32_t>> run() {
    for (const auto& seed : perfect_seeds()) {
      if (seed.support > n_) continue;
      std::vector<Permutation> gens;
      for (const char* c : seed.gens) gens.push_back(Permutation::parse_cycles(c, n_));
      consider(std::move(gens));
    }
    for (std::size_t i = 0; i < reps_.size(); ++i) extend(i);
    std::vector<std::vector<std::uint32_t>> out;
    for (auto& r : reps_) out.push_back(std::move(r.elems));
    return out;
  }

  const SymmetricTable& table() const { return table_; }

 private:
  struct Rep {
    std::vector<std::uint32_t> elems;
    std::vector<Permutation> gens;
    ClassKey key;
    std::unique_ptr<SubgroupIndex> index;
  };

  ClassKey key_of(const std::vector<std::uint32_t>& elems, const std::vector<Permutation>& gens) const {
    ClassKey k;
    k.order = elems.size();
    k.orbit_lengths = PermutationGroup(n_, gens).orbit_lengths();
    std::map<std::uint64_t, std::size_t> counts;
    for (auto r : elems) ++counts[table_.code(r)];
    k.type_counts.assign(counts.begin(), counts.end());
    return k;
  }

  void consider(std::vector<Permutation> gens) {
    auto elems = closure_ranks(table_, gens);
    consider(std::move(elems), std::move(gens));
  }

  void consider(std::vector<std::uint32_t> elems, std::vector<Permutation> gens) {
    if (!seen_.insert(elems).second) return;
    ClassKey key = key_of(elems, gens);
    auto [lo, hi] = by_key_.equal_range(key);
    for (auto it = lo; it != hi; ++it)
      if (search_conjugator(gens, *reps_[it->second].index)) return;
    Rep rep;
    std::vector<Permutation> perms;
    perms.reserve(elems.size());
    for (auto r : elems) perms.push_back(table_.at(r));
    rep.index = std::make_unique<SubgroupIndex>(n_, std::move(perms));
    rep.elems = std::move(elems);
    rep.gens = std::move(gens);
    rep.key = key;
    by_key_.emplace(std::move(key), reps_.size());
    reps_.push_back(std::move(rep));
  }

  void extend(std::size_t i) {
    // Copy what we need: consider() may grow reps_.
    const std::vector<std::uint32_t> h_elems = reps_[i].elems;
    const std::vector<Permutation> h_gens = reps_[i].gens;
    const std::uint32_t total = table_.size();
    std::vector<bool> in_h(total, false);
    for (auto r : h_elems) in_h[r] = true;

    std::vector<bool> done = in_h;
    for (std::uint32_t w = 0; w < total; ++w) {
      if (done[w]) continue;
      const Permutation& g = table_.at(w);
      bool normalizes = true;
      for (const auto& h : h_gens)
        if (!in_h[table_.rank(h.conjugated_by(g))]) {
          normalizes = false;
          break;
        }
      if (!normalizes) continue;
      // Order of gH in N(H)/H.
      int k = 1;
      Permutation x = g;
      while (!in_h[table_.rank(x)]) {
        x = x * g;
        ++k;
      }
      if (!is_prime(k)) continue;
      std::vector<std::uint32_t> elems;
      elems.reserve(h_elems.size() * static_cast<std::size_t>(k));
      Permutation gi = Permutation::identity(n_);
      for (int e = 0; e < k; ++e) {
        for (auto r : h_elems) {
          const std::uint32_t y = table_.rank(table_.at(r) * gi);
          elems.push_back(y);
          done[y] = true;
        }
        gi = gi * g;
      }
      std::sort(elems.begin(), elems.end());
      std::vector<Permutation> gens = h_gens;
      gens.push_back(g);
      consider(std::move(elems), std::move(gens));
    }
  }

  static bool is_prime(int k) {
    if (k < 2) return false;
    for (int d = 2; d * d <= k; ++d)
      if (k % d == 0) return false;
    return true;
  }

  int n_;
  SymmetricTable table_;
  std::vector<Rep> reps_;
  std::multimap<ClassKey, std::size_t> by_key_;
  std::set<std::vector<std::uint32_t>> seen_;
};

/// Lexicographically least sorted element list among the conjugates w K w^-1
/// for the first few w in rank order, as bounded by `budget` element images.
inline std::vector<std::uint32_t> bounded_min_conjugate(const SymmetricTable& t,
                                                        const std::vector<std::uint32_t>& elems,
                                                        std::size_t budget) {
  const std::size_t tries = std::clamp<std::size_t>(budget / elems.size(), 1, t.size());
  std::vector<std::uint32_t> best = elems;
  std::vector<std::uint32_t> cur(elems.size());
  for (std::uint32_t w = 1; w < tries; ++w) {
    const Permutation& p = t.at(w);
    for (std::size_t i = 0; i < elems.size(); ++i) cur[i] = t.rank(t.at(elems[i]).conjugated_by(p));
    std::sort(cur.begin(), cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

}  // namespace detail

inline constexpr int kMaxCatalogDegree = 8;
inline constexpr std::size_t kCanonicalSearchBudget = 200'000;

/// Conjugacy classes of subgroups of S_degree, ordered by (order, orbit
/// lengths, cycle-type counts, canonical element list).
inline SubgroupClassCatalog subgroup_conjugacy_classes(int degree,
                                                       CatalogMethod method = CatalogMethod::cyclic_extension) {
  if (degree < 1 || degree > kMaxCatalogDegree)
    throw DomainError("built-in subgroup enumeration supports degrees 1.." + std::to_string(kMaxCatalogDegree));
  (void)method;
  detail::CyclicExtension ext(degree);
  auto raw = ext.run();
  const auto& table = ext.table();

  struct Entry {
    ClassKey key;
    std::vector<std::uint32_t> canon;
  };
  std::vector<Entry> entries;
  entries.reserve(raw.size());
  for (auto& elems : raw) {
    Entry e;
    e.canon = detail::bounded_min_conjugate(table, elems, kCanonicalSearchBudget);
    std::vector<Permutation> gens = detail::small_generating_set(table, e.canon);
    e.key = class_key(PermutationGroup(degree, gens));
    entries.push_back(std::move(e));
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.key, a.canon) < std::tie(b.key, b.canon); });

  SubgroupClassCatalog cat;
  cat.degree = degree;
  cat.provenance = CatalogProvenance::cyclic_extension;
  for (const auto& e : entries) {
    cat.names.push_back(class_name(cat.classes.size()));
    cat.classes.emplace_back(degree, detail::small_generating_set(table, e.canon));
  }
  return cat;
}

}  // namespace m0n

#endif  // M0N_PERMGROUP_CATALOG_HPP
