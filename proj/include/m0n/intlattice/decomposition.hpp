#ifndef M0N_INTLATTICE_DECOMPOSITION_HPP
#define M0N_INTLATTICE_DECOMPOSITION_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "m0n/intlattice/cohomology.hpp"
#include "m0n/intlattice/glattice.hpp"

namespace m0n {

enum class DecompositionStatus { certified, not_permutation, unknown };

inline std::string to_string(DecompositionStatus s) {
  switch (s) {
    case DecompositionStatus::certified: return "certified";
    case DecompositionStatus::not_permutation: return "not-permutation";
    case DecompositionStatus::unknown: return "unknown";
  }
  return "unknown";
}

/// Z[G/H] with multiplicity.
struct PermutationSummand {
  PermutationGroup stabilizer;
  std::size_t index = 0;  // [G : H]
  std::size_t multiplicity = 0;
};

struct DecompositionReport {
  DecompositionStatus status = DecompositionStatus::unknown;
  std::vector<PermutationSummand> summands;
  std::optional<IntMatrix> witness;  // columns: the permuted basis
  std::string obstruction;
  std::size_t nodes = 0;

  /// e.g. "Z[G]^19 + Z[G/<(1,2)>]^3 + Z^5"
  std::string summary() const {
    std::string out;
    for (const auto& s : summands) {
      if (!out.empty()) out += " + ";
      if (s.index == 1) out += "Z";
      else if (s.stabilizer.order() == 1) out += "Z[G]";
      else out += "Z[G/<" + s.stabilizer.to_string() + ">]";
      if (s.multiplicity != 1) out += "^" + std::to_string(s.multiplicity);
    }
    return out;
  }
};

inline constexpr std::size_t kDefaultSearchBudget = 200'000;
/// Largest |G| whose p-subgroups are enumerated for orbit-type targets.
inline constexpr std::size_t kPSubgroupCap = 50'000;

namespace detail {

/// Partial basis kept primitive: U is unimodular and U * (chosen vectors)
/// is the identity on the first k coordinates.
class PrimitiveExtender {
 public:
  explicit PrimitiveExtender(std::size_t r) : r_(r), u_(IntMatrix::identity(r)) {}

  std::size_t size() const { return k_; }

  /// Residues mod p of the image of v in Z^r / span(chosen), in the tail
  /// coordinates.
  std::vector<std::uint8_t> tail_residues(const std::vector<std::int64_t>& v, std::int64_t p) const {
    std::vector<std::int64_t> acc(r_ - k_, 0);
    for (std::size_t j = 0; j < r_; ++j) {
      const std::int64_t vj = v[j] % p;
      if (vj == 0) continue;
      for (std::size_t i = k_; i < r_; ++i) acc[i - k_] = (acc[i - k_] + (u_(i, j) % p) * vj) % p;
    }
    std::vector<std::uint8_t> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint8_t>(((acc[i] % p) + p) % p);
    return out;
  }

  /// Adds v if the span stays saturated; otherwise leaves the state unchanged
  /// only up to row operations among the tail rows, and returns false.
  bool add(const std::vector<std::int64_t>& v) {
    if (k_ >= r_) return false;
    std::vector<std::int64_t> w(r_, 0);
    for (std::size_t j = 0; j < r_; ++j) {
      if (v[j] == 0) continue;
      for (std::size_t i = k_; i < r_; ++i)
        if (u_(i, j) != 0) w[i] = arith::add(w[i], arith::mul(u_(i, j), v[j]));
    }
    while (true) {
      std::size_t piv = r_;
      bool several = false;
      for (std::size_t i = k_; i < r_; ++i) {
        if (w[i] == 0) continue;
        if (piv != r_) several = true;
        if (piv == r_ || arith::less_abs(w[i], w[piv])) piv = i;
      }
      if (piv == r_) return false;  // dependent
      if (!several) {
        if (!arith::is_unit(w[piv])) return false;  // span not saturated
        swap_rows(piv, k_, w);
        if (w[k_] < 0) {
          w[k_] = -w[k_];
          for (std::size_t j = 0; j < r_; ++j) u_(k_, j) = -u_(k_, j);
        }
        ++k_;
        return true;
      }
      for (std::size_t i = k_; i < r_; ++i) {
        if (i == piv || w[i] == 0) continue;
        const std::int64_t q = w[i] / w[piv];
        if (q == 0) continue;
        w[i] -= q * w[piv];
        std::int64_t* ri = u_.row(i);
        const std::int64_t* rp = u_.row(piv);
        for (std::size_t j = 0; j < r_; ++j)
          if (rp[j] != 0) ri[j] = arith::sub(ri[j], arith::mul(q, rp[j]));
      }
    }
  }

 private:
  void swap_rows(std::size_t a, std::size_t b, std::vector<std::int64_t>& w) {
    if (a == b) return;
    std::swap(w[a], w[b]);
    std::swap_ranges(u_.row(a), u_.row(a) + r_, u_.row(b));
  }

  std::size_t r_;
  std::size_t k_ = 0;
  IntMatrix u_;
};

struct VectorOrbit {
  std::vector<std::vector<std::int64_t>> vectors;
  std::vector<std::size_t> contribution;  // K-orbit counts per target slot
};

struct OrbitTypeTarget {
  std::size_t p = 0;
  std::vector<std::size_t> count;  // K-orbits with stabilizer order p^e
};

/// Orbit of v under the group generated by `gens`.
inline std::vector<std::vector<std::int64_t>> vector_orbit(const std::vector<IntMatrix>& gens,
                                                           const std::vector<std::int64_t>& v) {
  std::vector<std::vector<std::int64_t>> out{v};
  std::set<std::vector<std::int64_t>> seen{v};
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& a : gens) {
      auto w = a * out[k];
      if (seen.insert(w).second) out.push_back(std::move(w));
    }
  return out;
}

/// Rank over F_p of the given residue vectors.
inline std::size_t rank_mod_p(std::vector<std::vector<std::uint8_t>> rows, unsigned p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    unsigned inv = 1;
    while ((inv * rows[rank][c]) % p != 1) ++inv;
    for (auto& x : rows[rank]) x = static_cast<std::uint8_t>((x * inv) % p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const unsigned f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j)
        rows[i][j] = static_cast<std::uint8_t>((rows[i][j] + p * p - f * rows[rank][j]) % p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Checks that the columns of `basis` form a Z-basis permuted by every
/// generator of M's group.
inline bool verify_permutation_basis(const GLattice& m, const IntMatrix& basis) {
  if (basis.rows() != m.rank() || basis.cols() != m.rank()) return false;
  IntMatrix inv;
  try {
    inv = unimodular_inverse(basis);
  } catch (const DomainError&) {
    return false;
  }
  for (const auto& a : m.actions())
    if (!(inv * (a * basis)).is_permutation_matrix()) return false;
  return true;
}

/// Summands of M read off a verified permutation basis (columns): one
/// Z[G/H] per orbit of basis vectors, H the stabilizer, grouped by
/// G-conjugacy of H.
inline std::vector<PermutationSummand> summands_from_basis(const GLattice& m, const IntMatrix& basis) {
  ensure(verify_permutation_basis(m, basis), "basis is not permuted by the group");
  const std::size_t r = m.rank();
  const auto& g = m.group();
  const IntMatrix inv = unimodular_inverse(basis);
  std::vector<std::vector<int>> gen_perm;
  for (const auto& a : m.actions()) {
    IntMatrix pm = inv * (a * basis);
    std::vector<int> img(r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < r; ++i)
        if (pm(i, j) == 1) img[j] = static_cast<int>(i);
    gen_perm.push_back(std::move(img));
  }
  // Pairs (element, induced permutation of basis indices).
  std::vector<std::pair<Permutation, std::vector<int>>> elems;
  std::unordered_map<Permutation, std::size_t> seen;
  std::vector<int> id(r);
  for (std::size_t i = 0; i < r; ++i) id[i] = static_cast<int>(i);
  elems.push_back({Permutation::identity(g.degree()), id});
  seen.emplace(elems[0].first, 0);
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (std::size_t s = 0; s < gen_perm.size(); ++s) {
      Permutation x = g.generators()[s] * elems[k].first;
      if (seen.contains(x)) continue;
      std::vector<int> img(r);
      for (std::size_t i = 0; i < r; ++i) img[i] = gen_perm[s][elems[k].second[i]];
      seen.emplace(x, elems.size());
      elems.push_back({std::move(x), std::move(img)});
    }

  std::vector<PermutationSummand> out;
  std::vector<bool> done(r, false);
  for (std::size_t b = 0; b < r; ++b) {
    if (done[b]) continue;
    std::vector<Permutation> stab;
    for (const auto& [x, img] : elems) {
      done[img[b]] = true;
      if (img[b] == static_cast<int>(b)) stab.push_back(x);
    }
    std::vector<Permutation> sgens;
    for (const auto& x : stab)
      if (!x.is_identity() && (sgens.empty() || !PermutationGroup(g.degree(), sgens).contains(x))) sgens.push_back(x);
    if (sgens.empty()) sgens.push_back(Permutation::identity(g.degree()));
    PermutationGroup h(g.degree(), sgens);
    bool merged = false;
    for (auto& s : out) {
      if (s.stabilizer.order() != h.order()) continue;
      for (const auto& [w, img] : elems) {
        bool ok = true;
        for (const auto& x : sgens)
          if (!s.stabilizer.contains(x.conjugated_by(w))) {
            ok = false;
            break;
          }
        if (ok) {
          merged = true;
          break;
        }
      }
      if (merged) {
        ++s.multiplicity;
        break;
      }
    }
    if (!merged) out.push_back({h, elems.size() / stab.size(), 1});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.index > y.index; });
  return out;
}

struct SearchOptions {
  std::size_t budget = kDefaultSearchBudget;
  /// Subgroups for the H^1 precheck are taken up to this conjugacy.
  ConjugacyScope scope = ConjugacyScope::within_group;
  bool check_h1 = true;
};

/// Semi-decision procedure for "M is a permutation lattice".
///
/// Returns not_permutation when some subgroup has nonzero H^1 on M or M*,
/// or when Hhat^0 of a p-subgroup is not the profile of any permutation
/// lattice. Otherwise searches for a basis made of whole G-orbits of the
/// supplied distinguished vectors (the standard basis when none are
/// given): each orbit must be sign-free, the union must stay primitive,
/// the remaining candidates must span the quotient mod 2 and mod 3, and
/// for every p-subgroup K the K-orbit types of the chosen vectors must
/// match the elementary divisors of Hhat^0(K, M).
inline DecompositionReport permutation_basis_search(const GLattice& m,
                                                    std::vector<std::vector<std::int64_t>> distinguished = {},
                                                    const SearchOptions& opt = {}) {
  DecompositionReport rep;
  const std::size_t r = m.rank();
  const auto& g = m.group();
  if (r == 0) {
    rep.status = DecompositionStatus::certified;
    rep.witness = IntMatrix(0, 0);
    return rep;
  }

  if (opt.check_h1) {
    auto t = h1_test(m, opt.scope);
    if (!t.passed) {
      rep.status = DecompositionStatus::not_permutation;
      rep.obstruction =
          "H^1(<" + t.witness->to_string() + ">, " + t.failing_module + ") = " + t.failing_value.to_string();
      return rep;
    }
  }

  if (distinguished.empty())
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<std::int64_t> e(r, 0);
      e[i] = 1;
      distinguished.push_back(e);
    }

  // G-orbits of the distinguished vectors; orbits containing -v are dropped.
  std::vector<detail::VectorOrbit> orbits;
  {
    std::set<std::vector<std::int64_t>> covered;
    for (const auto& v : distinguished) {
      if (v.size() != r) throw DomainError("distinguished vector has the wrong length");
      if (covered.contains(v)) continue;
      detail::VectorOrbit orb;
      orb.vectors = detail::vector_orbit(m.actions(), v);
      std::set<std::vector<std::int64_t>> members(orb.vectors.begin(), orb.vectors.end());
      bool sign_free = true;
      for (const auto& w : orb.vectors) {
        covered.insert(w);
        std::vector<std::int64_t> neg(w.size());
        for (std::size_t k = 0; k < w.size(); ++k) neg[k] = -w[k];
        if (members.contains(neg)) sign_free = false;
      }
      if (sign_free) orbits.push_back(std::move(orb));
    }
  }

  std::vector<std::vector<std::int64_t>> pool;
  std::map<std::vector<std::int64_t>, std::size_t> pool_index;
  for (const auto& orb : orbits)
    for (const auto& w : orb.vectors) {
      pool_index.emplace(w, pool.size());
      pool.push_back(w);
    }

  // Orbit-type targets. For a p-subgroup K, Hhat^0(K, Z[K/L]) = Z/|L|, so a
  // permutation basis has exactly as many K-orbits with stabilizer order
  // p^e as Hhat^0(K, M) has elementary divisors p^e.
  std::vector<detail::OrbitTypeTarget> targets;
  std::vector<PermutationGroup> p_subgroups;
  try {
    p_subgroups = subgroup_classes_of(g, ConjugacyScope::within_group, kPSubgroupCap, SubgroupFamily::prime_power);
  } catch (const CapExceeded&) {
    // Too large to enumerate: search without orbit-type targets.
  }
  for (const auto& k : p_subgroups) {
    const std::size_t order = k.order();
    if (order == 1) continue;
    std::size_t p = 2;
    while (order % p != 0) ++p;
    std::size_t rest = order;
    while (rest % p == 0) rest /= p;
    if (rest != 1) continue;
    IntMatrix norm(r, r);
    for (const auto& x : k.elements()) norm = norm + m.element_matrix(x);
    std::vector<IntMatrix> kgens;
    for (const auto& x : k.generators()) kgens.push_back(m.element_matrix(x));
    auto h0 = detail::relative_quotient(fixed_basis(kgens, r), norm);
    std::size_t levels = 0;
    for (std::size_t q = 1; q < order; q *= p) ++levels;
    detail::OrbitTypeTarget t;
    t.p = p;
    t.count.assign(levels + 1, 0);
    std::size_t covered_rank = 0;
    for (const auto& d : h0.torsion()) {
      std::size_t e = 0;
      BigInt x = d;
      while (x % static_cast<unsigned long>(p) == 0) {
        x /= static_cast<unsigned long>(p);
        ++e;
      }
      if (x != 1 || e > levels) {
        rep.status = DecompositionStatus::not_permutation;
        rep.obstruction = "Hhat^0(<" + k.to_string() + ">, M) = " + h0.to_string() + " is not a permutation profile";
        return rep;
      }
      ++t.count[e];
      covered_rank += order / d.get_ui();
    }
    if (covered_rank > r || (r - covered_rank) % order != 0) {
      rep.status = DecompositionStatus::not_permutation;
      rep.obstruction = "Hhat^0 rank mismatch for <" + k.to_string() + ">";
      return rep;
    }
    t.count[0] = (r - covered_rank) / order;
    // K-orbit lengths on the pool of candidate vectors, from the generators.
    std::vector<std::size_t> parent(pool.size());
    for (std::size_t v = 0; v < pool.size(); ++v) parent[v] = v;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
      return parent[v] == v ? v : parent[v] = find(parent[v]);
    };
    for (const auto& a : kgens)
      for (std::size_t v = 0; v < pool.size(); ++v) {
        auto it = pool_index.find(a * pool[v]);
        ensure(it != pool_index.end(), "candidate pool is not stable under the group");
        parent[find(v)] = find(it->second);
      }
    std::vector<std::size_t> orbit_len(pool.size(), 0);
    for (std::size_t v = 0; v < pool.size(); ++v) ++orbit_len[find(v)];
    for (auto& orb : orbits) {
      std::vector<std::size_t> c(t.count.size(), 0);
      for (const auto& w : orb.vectors) {
        std::size_t e = 0;
        for (std::size_t q = order / orbit_len[find(pool_index.at(w))]; q > 1; q /= p) ++e;
        ++c[e];
      }
      // A K-orbit with stabilizer order p^e has order / p^e vectors.
      for (std::size_t e = 0; e < c.size(); ++e) {
        std::size_t len = order;
        for (std::size_t j = 0; j < e; ++j) len /= p;
        orb.contribution.push_back(c[e] / len);
      }
    }
    targets.push_back(std::move(t));
  }

  // Large orbits first: they fix most of the basis early.
  std::stable_sort(orbits.begin(), orbits.end(),
                   [](const auto& a, const auto& b) { return a.vectors.size() > b.vectors.size(); });

  std::vector<std::size_t> goal;
  for (const auto& t : targets) goal.insert(goal.end(), t.count.begin(), t.count.end());
  const std::size_t nc = goal.size();
  std::vector<std::size_t> suffix(orbits.size() + 1, 0);
  std::vector<std::vector<std::size_t>> suffix_c(orbits.size() + 1, std::vector<std::size_t>(nc, 0));
  for (std::size_t i = orbits.size(); i-- > 0;) {
    suffix[i] = suffix[i + 1] + orbits[i].vectors.size();
    for (std::size_t j = 0; j < nc; ++j) suffix_c[i][j] = suffix_c[i + 1][j] + orbits[i].contribution[j];
  }

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> used(nc, 0);
  std::size_t nodes = 0;
  bool found = false;
  bool exhausted_budget = false;

  std::function<void(std::size_t, const detail::PrimitiveExtender&)> dfs = [&](std::size_t i,
                                                                               const detail::PrimitiveExtender& ext) {
    if (found || exhausted_budget) return;
    if (ext.size() == r) {
      found = true;
      return;
    }
    if (i == orbits.size() || ext.size() + suffix[i] < r) return;
    for (std::size_t j = 0; j < nc; ++j)
      if (used[j] + suffix_c[i][j] < goal[j]) return;
    if (++nodes > opt.budget) {
      exhausted_budget = true;
      return;
    }
    // The remaining candidates must span the quotient by the chosen span.
    for (std::int64_t p : {2, 3}) {
      std::vector<std::vector<std::uint8_t>> rows;
      for (std::size_t o = i; o < orbits.size(); ++o)
        for (const auto& w : orbits[o].vectors) rows.push_back(ext.tail_residues(w, p));
      if (detail::rank_mod_p(std::move(rows), static_cast<unsigned>(p)) < r - ext.size()) return;
    }
    const auto& orb = orbits[i];
    bool fits = ext.size() + orb.vectors.size() <= r;
    for (std::size_t j = 0; j < nc && fits; ++j) fits = used[j] + orb.contribution[j] <= goal[j];
    if (fits) {
      detail::PrimitiveExtender next = ext;
      bool ok = true;
      for (const auto& w : orb.vectors)
        if (!next.add(w)) {
          ok = false;
          break;
        }
      if (ok) {
        chosen.push_back(i);
        for (std::size_t j = 0; j < nc; ++j) used[j] += orb.contribution[j];
        dfs(i + 1, next);
        if (found) return;
        for (std::size_t j = 0; j < nc; ++j) used[j] -= orb.contribution[j];
        chosen.pop_back();
      }
    }
    dfs(i + 1, ext);
  };
  dfs(0, detail::PrimitiveExtender(r));
  rep.nodes = nodes;

  if (!found) {
    rep.status = DecompositionStatus::unknown;
    rep.obstruction = exhausted_budget ? "search budget exhausted" : "no basis from the supplied orbits";
    return rep;
  }

  std::vector<std::vector<std::int64_t>> cols;
  for (auto i : chosen)
    for (const auto& w : orbits[i].vectors) cols.push_back(w);
  IntMatrix basis = IntMatrix::from_columns(r, cols);
  rep.summands = summands_from_basis(m, basis);
  rep.status = DecompositionStatus::certified;
  rep.witness = std::move(basis);
  return rep;
}

/// Certifies a basis found elsewhere (e.g. the Kapranov basis for groups
/// fixing a point).
inline DecompositionReport report_from_basis(const GLattice& m, const IntMatrix& basis) {
  DecompositionReport rep;
  rep.summands = summands_from_basis(m, basis);
  rep.status = DecompositionStatus::certified;
  rep.witness = basis;
  return rep;
}

}  // namespace m0n

#endif  // M0N_INTLATTICE_DECOMPOSITION_HPP
