#ifndef M0N_INTLATTICE_COHOMOLOGY_HPP
#define M0N_INTLATTICE_COHOMOLOGY_HPP

#include <optional>
#include <string>
#include <vector>

#include "m0n/intlattice/abelian.hpp"
#include "m0n/intlattice/glattice.hpp"
#include "m0n/permgroup/subgroups.hpp"

namespace m0n {

/// H^1(G, M) for the group of M.
///
/// Since H^1(G, M tensor Q) = 0, H^1(G, M) is the group of m in M_Q with
/// (s - 1) m in M for every generator s, modulo M + M_Q^G. Diagonalizing
/// the stacked matrix [s_1 - 1; ...; s_k - 1] identifies this with the sum
/// of Z/d over its nonzero invariant factors d.
inline AbelianInvariants h1(const GLattice& m) {
  const std::size_t r = m.rank();
  if (r == 0) return {};
  std::vector<IntMatrix> blocks;
  for (const auto& a : m.actions()) blocks.push_back(a - IntMatrix::identity(r));
  return abelian_from_diagonal(invariant_factors(IntMatrix::vstack(blocks)), 0);
}

/// H^1 of the restriction of M to a subgroup of its group.
inline AbelianInvariants h1(const PermutationGroup& g, const GLattice& m) { return h1(restrict_module(m, g)); }

/// Basis (columns) of the sublattice fixed by every listed matrix; saturated.
inline IntMatrix fixed_basis(const std::vector<IntMatrix>& acts, std::size_t rank) {
  if (acts.empty()) return IntMatrix::identity(rank);
  std::vector<IntMatrix> blocks;
  for (const auto& a : acts) blocks.push_back(a - IntMatrix::identity(rank));
  return kernel_basis(IntMatrix::vstack(blocks));
}

/// Fixed sublattice of M under the subgroup S (given by permutations in M's group).
inline IntMatrix fixed_sublattice(const GLattice& m, const PermutationGroup& s) {
  std::vector<IntMatrix> acts;
  for (const auto& g : s.generators()) acts.push_back(m.element_matrix(g));
  return fixed_basis(acts, m.rank());
}

/// Fixed sublattice of M under a single element.
inline IntMatrix fixed_sublattice(const GLattice& m, const Permutation& g) {
  return fixed_basis({m.element_matrix(g)}, m.rank());
}

namespace detail {

/// Sum of a^i for i = 0..order-1.
inline IntMatrix norm_matrix(const IntMatrix& a, long long order) {
  IntMatrix acc(a.rows(), a.cols());
  IntMatrix p = IntMatrix::identity(a.rows());
  for (long long i = 0; i < order; ++i) {
    acc = acc + p;
    if (i + 1 < order) p = p * a;
  }
  return acc;
}

/// Z-span of the columns of `gens`, all lying in the saturated sublattice
/// K, as a quotient K / span.
inline AbelianInvariants relative_quotient(const IntMatrix& k_basis, const IntMatrix& gens) {
  if (k_basis.cols() == 0) return {};
  Sublattice k = make_sublattice(k_basis);
  IntMatrix c = k.coords * gens;
  ensure(k.basis * c == gens, "image does not lie in the expected sublattice");
  return cokernel_invariants(c);
}

}  // namespace detail

/// Tate H^1 of the cyclic group <g> given by its matrix a of order `order`:
/// ker(Norm) / im(a - 1).
inline AbelianInvariants h1_cyclic_matrix(const IntMatrix& a, long long order) {
  const std::size_t r = a.rows();
  if (r == 0) return {};
  IntMatrix norm = detail::norm_matrix(a, order);
  return detail::relative_quotient(kernel_basis(norm), a - IntMatrix::identity(r));
}

/// Tate H^2 = H^0-hat of <g>: M^g / Norm M.
inline AbelianInvariants h2_cyclic_matrix(const IntMatrix& a, long long order) {
  const std::size_t r = a.rows();
  if (r == 0) return {};
  IntMatrix norm = detail::norm_matrix(a, order);
  return detail::relative_quotient(kernel_basis(a - IntMatrix::identity(r)), norm);
}

inline AbelianInvariants h1_cyclic(const Permutation& g, const GLattice& m) {
  return h1_cyclic_matrix(m.element_matrix(g), g.order());
}

inline AbelianInvariants h2_cyclic(const Permutation& g, const GLattice& m) {
  return h2_cyclic_matrix(m.element_matrix(g), g.order());
}

/// Result of the (H1) test.
struct H1TestResult {
  bool passed = true;
  std::optional<PermutationGroup> witness;  // first failing subgroup
  std::string failing_module;               // "M" or "M*"
  AbelianInvariants failing_value;
};

/// H^1(G', M) = H^1(G', M*) = 0 for one representative G' of every
/// conjugacy class of subgroups of G, scanned in increasing order.
/// With scope = symmetric the classes are taken up to S_n-conjugacy, which
/// is valid when the action on M extends to S_n.
inline H1TestResult h1_test(const GLattice& m, ConjugacyScope scope = ConjugacyScope::within_group) {
  H1TestResult res;
  GLattice dual = dual_module(m);
  for (const auto& sub : subgroup_classes_of(m.group(), scope)) {
    if (sub.order() == 1) continue;
    auto a = h1(restrict_module(m, sub));
    if (!a.is_trivial()) return {false, sub, "M", a};
    auto b = h1(restrict_module(dual, sub));
    if (!b.is_trivial()) return {false, sub, "M*", b};
  }
  return res;
}

/// Multiplicities of Z, Z^- and Z[C_2] in a lattice over a group of order 2.
struct C2Decomposition {
  std::size_t trivial = 0;
  std::size_t sign = 0;
  std::size_t regular = 0;
  friend bool operator==(const C2Decomposition&, const C2Decomposition&) = default;
};

/// a = dim Hhat^0, b = dim H^1, c = (rank - a - b) / 2.
inline C2Decomposition c2_decomposition(const GLattice& m) {
  if (m.group().order() != 2) throw DomainError("c2_decomposition needs a group of order 2");
  Permutation g = m.group().elements()[0].is_identity() ? m.group().elements()[1] : m.group().elements()[0];
  IntMatrix a = m.element_matrix(g);
  auto h0 = h2_cyclic_matrix(a, 2);
  auto h1v = h1_cyclic_matrix(a, 2);
  for (const auto* x : {&h0, &h1v})
    for (const auto& d : x->torsion())
      ensure(d == 2 && x->is_finite(), "Tate cohomology of a C2-lattice is not 2-elementary");
  C2Decomposition out;
  out.trivial = h0.torsion().size();
  out.sign = h1v.torsion().size();
  ensure(out.trivial + out.sign <= m.rank() && (m.rank() - out.trivial - out.sign) % 2 == 0,
         "C2-lattice multiplicities violate the rank parity");
  out.regular = (m.rank() - out.trivial - out.sign) / 2;
  return out;
}

}  // namespace m0n

#endif  // M0N_INTLATTICE_COHOMOLOGY_HPP
