#ifndef M0N_INTLATTICE_GLATTICE_HPP
#define M0N_INTLATTICE_GLATTICE_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "m0n/intlattice/lattice.hpp"
#include "m0n/permgroup/group.hpp"

namespace m0n {

/// g_gen^power.
struct Letter {
  int gen = 0;
  long long power = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// Parses "g1 g2^-1 g1^3" (also '*'-separated) against generator names.
inline Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  Word w;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::string name = token;
    long long power = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      name = token.substr(0, caret);
      const std::string exp = token.substr(caret + 1);
      try {
        std::size_t used = 0;
        power = std::stoll(exp, &used);
        if (used != exp.size()) throw ParseError("");
      } catch (const std::exception&) {
        throw ParseError("bad exponent in word token \"" + token + "\"");
      }
    }
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw DomainError("unknown generator symbol \"" + name + "\"");
    w.push_back({static_cast<int>(it - names.begin()), power});
    token.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '*' || c == '\t')
      flush();
    else
      token += c;
  }
  flush();
  return w;
}

/// Permutation represented by a word in the group's generators.
inline Permutation evaluate_word(const PermutationGroup& g, const Word& w) {
  Permutation p = Permutation::identity(g.degree());
  for (const auto& l : w) {
    if (l.gen < 0 || l.gen >= static_cast<int>(g.generators().size()))
      throw DomainError("unknown generator index " + std::to_string(l.gen));
    p = p * g.generators()[l.gen].pow(l.power);
  }
  return p;
}

/// Default cap on |G| for exhaustive homomorphism verification.
inline constexpr std::size_t kVerifyElementCap = 50'000;

/// A free Z-module of finite rank with a left action of a permutation
/// group, given by one unimodular matrix per generator. Optionally carries
/// a rule producing the matrix of an arbitrary group element directly.
class GLattice {
 public:
  using ElementAction = std::function<IntMatrix(const Permutation&)>;

  enum class Verify { exhaustive, relators_only, none };

  GLattice(PermutationGroup group, std::vector<IntMatrix> action, ElementAction element_action = {},
           Verify verify = Verify::exhaustive, const std::vector<Word>& relators = {})
      : group_(std::move(group)), action_(std::move(action)), element_action_(std::move(element_action)) {
    if (action_.size() != group_.generators().size())
      throw DomainError("one action matrix per generator is required");
    rank_ = action_.empty() ? 0 : action_[0].rows();
    for (const auto& a : action_)
      if (a.rows() != rank_ || a.cols() != rank_) throw DomainError("action matrices must be square of equal size");
    if (verify == Verify::none) return;
    for (std::size_t i = 0; i < action_.size(); ++i) {
      const long long ord = group_.generators()[i].order();
      if (!matrix_power(action_[i], ord).is_identity())
        throw DomainError("action of generator " + std::to_string(i + 1) + " does not have the generator's order");
    }
    for (const auto& r : relators)
      if (!action_matrix(r).is_identity()) throw DomainError("action fails a defining relation");
    if (verify == Verify::exhaustive) verify_homomorphism();
  }

  const PermutationGroup& group() const { return group_; }
  std::size_t rank() const { return rank_; }
  std::size_t generator_count() const { return action_.size(); }
  const std::vector<IntMatrix>& actions() const { return action_; }
  const IntMatrix& action(std::size_t i) const { return action_.at(i); }
  bool has_element_action() const { return static_cast<bool>(element_action_); }
  const ElementAction& element_action() const { return element_action_; }

  std::vector<std::string> generator_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < action_.size(); ++i) names.push_back("g" + std::to_string(i + 1));
    return names;
  }

  const IntMatrix& inverse_action(std::size_t i) const {
    std::lock_guard lock(cache_->mutex);
    if (cache_->inverses.empty()) {
      for (std::size_t k = 0; k < action_.size(); ++k) {
        const auto& g = group_.generators()[k];
        cache_->inverses.push_back(element_action_ ? element_action_(g.inverse())
                                                   : matrix_power(action_[k], g.order() - 1));
      }
    }
    return cache_->inverses.at(i);
  }

  /// Matrix of a word; the empty word gives the identity.
  IntMatrix action_matrix(const Word& w) const {
    IntMatrix m = IntMatrix::identity(rank_);
    for (const auto& l : w) {
      if (l.gen < 0 || l.gen >= static_cast<int>(action_.size()))
        throw DomainError("unknown generator index " + std::to_string(l.gen));
      const long long ord = group_.generators()[l.gen].order();
      long long e = l.power % ord;
      if (e < 0) e += ord;
      m = m * matrix_power(action_[l.gen], e);
    }
    return m;
  }

  IntMatrix action_matrix(const std::string& word_text) const {
    return action_matrix(parse_word(word_text, generator_names()));
  }

  /// Matrix of an arbitrary element of the group.
  IntMatrix element_matrix(const Permutation& g) const {
    if (element_action_) return element_action_(g);
    std::lock_guard lock(cache_->mutex);
    if (!cache_->words) cache_->words = group_.words();
    auto it = cache_->words->find(g);
    if (it == cache_->words->end()) throw DomainError("permutation " + g.to_cycles() + " is not in the group");
    IntMatrix m = IntMatrix::identity(rank_);
    for (int gi : it->second) m = m * action_[gi];
    return m;
  }

  /// Checks A(s) A(e) = A(s e) for every generator s and element e by
  /// propagating each basis vector along a spanning tree of the Cayley graph.
  void verify_homomorphism(std::size_t cap = kVerifyElementCap) const {
    const auto& elems = group_.elements(cap);
    std::unordered_map<Permutation, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
    // BFS tree: parent element and generator.
    std::vector<std::size_t> order{index.at(Permutation::identity(group_.degree()))};
    std::vector<bool> seen(elems.size(), false);
    seen[order[0]] = true;
    std::vector<std::pair<std::size_t, std::size_t>> tree(elems.size());
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t s = 0; s < action_.size(); ++s) {
        const std::size_t y = index.at(group_.generators()[s] * elems[order[k]]);
        if (!seen[y]) {
          seen[y] = true;
          tree[y] = {order[k], s};
          order.push_back(y);
        }
      }
    std::vector<std::vector<std::int64_t>> vec(elems.size());
    for (std::size_t j = 0; j < rank_; ++j) {
      std::vector<std::int64_t> ej(rank_, 0);
      ej[j] = 1;
      vec[order[0]] = ej;
      for (std::size_t k = 1; k < order.size(); ++k) {
        const auto [parent, s] = tree[order[k]];
        vec[order[k]] = action_[s] * vec[parent];
      }
      for (std::size_t e = 0; e < elems.size(); ++e)
        for (std::size_t s = 0; s < action_.size(); ++s) {
          const std::size_t y = index.at(group_.generators()[s] * elems[e]);
          if (action_[s] * vec[e] != vec[y]) throw DomainError("generator matrices do not define a group action");
        }
    }
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::vector<IntMatrix> inverses;
    std::optional<std::unordered_map<Permutation, std::vector<int>>> words;
  };

  PermutationGroup group_;
  std::vector<IntMatrix> action_;
  ElementAction element_action_;
  std::size_t rank_ = 0;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Contragredient module: g acts by the transpose of its inverse.
inline GLattice dual_module(const GLattice& m) {
  std::vector<IntMatrix> act;
  for (std::size_t i = 0; i < m.generator_count(); ++i) act.push_back(m.inverse_action(i).transpose());
  GLattice::ElementAction ea;
  if (m.has_element_action()) {
    auto inner = m.element_action();
    ea = [inner](const Permutation& g) { return inner(g.inverse()).transpose(); };
  }
  return GLattice(m.group(), std::move(act), std::move(ea), GLattice::Verify::none);
}

/// Restriction to a subgroup H whose generators are given as words in the
/// generators of M's group. The relations of H are verified.
inline GLattice restrict_module(const GLattice& m, const PermutationGroup& h, const std::vector<Word>& words) {
  if (words.size() != h.generators().size()) throw DomainError("one word per subgroup generator is required");
  std::vector<IntMatrix> act;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (evaluate_word(m.group(), words[i]) != h.generators()[i])
      throw DomainError("word " + std::to_string(i + 1) + " does not evaluate to the subgroup generator");
    act.push_back(m.action_matrix(words[i]));
  }
  return GLattice(h, std::move(act), m.element_action(),
                  h.order() <= kVerifyElementCap ? GLattice::Verify::exhaustive : GLattice::Verify::relators_only);
}

/// Restriction to a subgroup given by permutations lying in M's group.
inline GLattice restrict_module(const GLattice& m, const PermutationGroup& h) {
  if (h.degree() != m.group().degree()) throw DomainError("subgroup degree differs from group degree");
  std::vector<IntMatrix> act;
  for (const auto& g : h.generators()) act.push_back(m.element_matrix(g));
  // Matrices come from a verified action, so no further check is needed.
  return GLattice(h, std::move(act), m.element_action(), GLattice::Verify::none);
}

/// Lattice with basis indexed by {0..m-1}, each generator permuting the basis
/// as given: index_perm[g][i] is the image of basis vector i under generator g.
/// Throws DomainError if the permutations do not define an action.
inline GLattice permutation_module(const PermutationGroup& g, const std::vector<std::vector<int>>& index_perm) {
  if (index_perm.size() != g.generators().size()) throw DomainError("one index permutation per generator is required");
  const std::size_t m = index_perm.empty() ? 0 : index_perm[0].size();
  std::vector<Permutation> perms;
  std::vector<IntMatrix> act;
  for (const auto& p : index_perm) {
    if (p.size() != m) throw DomainError("index permutations of different sizes");
    std::vector<bool> hit(m, false);
    IntMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      if (p[i] < 0 || static_cast<std::size_t>(p[i]) >= m || hit[p[i]]) throw DomainError("index map is not a bijection");
      hit[p[i]] = true;
      a(p[i], i) = 1;
    }
    act.push_back(std::move(a));
  }
  // Homomorphism check on the index set: the map generator -> index
  // permutation must be constant on each fibre of the Cayley graph.
  const auto& elems = g.elements(kVerifyElementCap);
  std::unordered_map<Permutation, std::vector<int>> img;
  std::vector<int> id(m);
  for (std::size_t i = 0; i < m; ++i) id[i] = static_cast<int>(i);
  std::vector<Permutation> queue{Permutation::identity(g.degree())};
  img.emplace(queue[0], id);
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (std::size_t s = 0; s < index_perm.size(); ++s) {
      const Permutation y = g.generators()[s] * queue[k];
      const auto& cur = img.at(queue[k]);
      std::vector<int> composed(m);
      for (std::size_t i = 0; i < m; ++i) composed[i] = index_perm[s][cur[i]];
      auto it = img.find(y);
      if (it == img.end()) {
        img.emplace(y, std::move(composed));
        queue.push_back(y);
      } else if (it->second != composed) {
        throw DomainError("index permutations do not define a group action");
      }
    }
  ensure(queue.size() == elems.size(), "element count mismatch in permutation module check");
  return GLattice(g, std::move(act), {}, GLattice::Verify::none);
}

/// Z[G/H]: basis indexed by the left cosets gH in order of their least
/// element. Also returns the coset representatives.
inline GLattice coset_module(const PermutationGroup& g, const PermutationGroup& h) {
  if (!g.contains_group(h)) throw DomainError("subgroup is not contained in the group");
  const auto& elems = g.elements();
  const auto& helems = h.elements();
  std::map<Permutation, int> coset_of;  // element -> coset index
  int count = 0;
  for (const auto& x : elems) {
    if (coset_of.contains(x)) continue;
    for (const auto& y : helems) coset_of.emplace(x * y, count);
    ++count;
  }
  std::vector<Permutation> reps(count, Permutation::identity(g.degree()));
  std::vector<bool> have(count, false);
  for (const auto& [x, c] : coset_of)
    if (!have[c]) {
      reps[c] = x;
      have[c] = true;
    }
  std::vector<std::vector<int>> index_perm;
  for (const auto& s : g.generators()) {
    std::vector<int> p(count);
    for (int c = 0; c < count; ++c) p[c] = coset_of.at(s * reps[c]);
    index_perm.push_back(std::move(p));
  }
  return permutation_module(g, index_perm);
}

/// Z with every generator acting by +1 (or by its sign when `sign` is set).
inline GLattice rank_one_module(const PermutationGroup& g, bool sign) {
  std::vector<IntMatrix> act;
  for (const auto& s : g.generators()) {
    IntMatrix a(1, 1);
    a(0, 0) = (sign && !s.is_even()) ? -1 : 1;
    act.push_back(a);
  }
  return GLattice(g, std::move(act), {}, GLattice::Verify::none);
}

/// Direct sum of modules over the same group.
inline GLattice direct_sum(const std::vector<GLattice>& parts) {
  if (parts.empty()) throw DomainError("empty direct sum");
  std::size_t total = 0;
  for (const auto& p : parts) total += p.rank();
  std::vector<IntMatrix> act;
  for (std::size_t s = 0; s < parts[0].generator_count(); ++s) {
    IntMatrix a(total, total);
    std::size_t off = 0;
    for (const auto& p : parts) {
      if (p.generator_count() != parts[0].generator_count()) throw DomainError("direct sum over different groups");
      for (std::size_t i = 0; i < p.rank(); ++i)
        for (std::size_t j = 0; j < p.rank(); ++j) a(off + i, off + j) = p.action(s)(i, j);
      off += p.rank();
    }
    act.push_back(std::move(a));
  }
  return GLattice(parts[0].group(), std::move(act), {}, GLattice::Verify::none);
}

/// Action on a G-stable saturated sublattice, in its basis coordinates.
inline GLattice sublattice_module(const GLattice& m, const Sublattice& s) {
  std::vector<IntMatrix> act;
  for (const auto& a : m.actions()) {
    IntMatrix img = a * s.basis;
    ensure(s.basis * (s.coords * img) == img, "sublattice is not stable under the action");
    act.push_back(s.coords * img);
  }
  GLattice::ElementAction ea;
  if (m.has_element_action()) {
    auto inner = m.element_action();
    ea = [inner, s](const Permutation& g) { return s.coords * (inner(g) * s.basis); };
  }
  return GLattice(m.group(), std::move(act), std::move(ea), GLattice::Verify::none);
}

/// Action on M / S for a G-stable saturated sublattice S.
inline GLattice quotient_module(const GLattice& m, const Sublattice& s) {
  std::vector<IntMatrix> act;
  for (const auto& a : m.actions()) act.push_back(s.quotient * (a * s.lift));
  GLattice::ElementAction ea;
  if (m.has_element_action()) {
    auto inner = m.element_action();
    ea = [inner, s](const Permutation& g) { return s.quotient * (inner(g) * s.lift); };
  }
  return GLattice(m.group(), std::move(act), std::move(ea), GLattice::Verify::none);
}

}  // namespace m0n

#endif  // M0N_INTLATTICE_GLATTICE_HPP
