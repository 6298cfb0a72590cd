#ifndef M0N_SURVEY_PROP_COHOMO_HPP
#define M0N_SURVEY_PROP_COHOMO_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "m0n/intlattice/cohomology.hpp"
#include "m0n/picard/picard.hpp"

namespace m0n {

/// The checks behind H^1(<iota_1, iota_2>, M) = Z/2, in order.
enum class ProofStep {
  splitting,       // M = L + P as G-modules, P spanned by E_I with n-1 in I
  sigma_acyclic,   // H^1(<sigma>, M) = 0, P a permutation module, H^1(G,M) = H^1(<tau>, L^sigma)
  exact_sequence,  // N stable, sigma permutes N, 0 -> N^sigma -> L^sigma -> Q^sigma -> 0 exact
  n_sigma_free,    // the e_I form a basis of N^sigma freely permuted by tau
  q_sigma_basis,   // e_0, e_i, w_j, v_j form a basis of Q^sigma with the expected tau action
  final_value,     // all the H^1 values agree and equal Z/2
};

inline std::string to_string(ProofStep s) {
  switch (s) {
    case ProofStep::splitting: return "splitting";
    case ProofStep::sigma_acyclic: return "sigma-acyclic";
    case ProofStep::exact_sequence: return "exact-sequence";
    case ProofStep::n_sigma_free: return "n-sigma-free";
    case ProofStep::q_sigma_basis: return "q-sigma-basis";
    case ProofStep::final_value: return "final-value";
  }
  return "unknown";
}

class ProofStepFailure : public InvariantViolation {
 public:
  ProofStepFailure(ProofStep step, const std::string& what)
      : InvariantViolation(to_string(step) + ": " + what), step_(step) {}
  ProofStep step() const { return step_; }

 private:
  ProofStep step_;
};

struct FixedBasisWitness {
  int n = 0, n1 = 0, n2 = 0, n3 = 0;
  std::vector<SubsetMask> n_sigma_labels;                    // one I per e_I
  std::vector<std::vector<std::int64_t>> n_sigma_basis;      // e_I in Kapranov coordinates
  std::vector<std::pair<SubsetMask, SubsetMask>> tau_on_n;   // I -> I' with tau(e_I) = e_I'
  std::vector<std::string> q_sigma_names;                    // e0, e1, ..., w4, v4, ...
  std::vector<std::vector<std::int64_t>> q_sigma_basis;      // coordinates (H, E_1, ..., E_{n-2})
  std::vector<std::pair<std::string, std::string>> tau_on_q; // "e0" -> "-e0", "w4" -> "v4"
};

struct PropCohomoResult {
  FixedBasisWitness witness;
  AbelianInvariants h1_M;  // H^1(G, M), computed directly
  AbelianInvariants h1_Q;  // H^1(<tau>, Q^sigma)
  /// n1 = n2 = 0: G is cyclic and the N^sigma freeness step does not apply.
  bool cyclic_case = false;
  std::vector<ProofStep> checked;
};

namespace detail {

inline IntMatrix select(const IntMatrix& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IntMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

/// Every column of `a` lies in the Z-span of the columns of `b`.
inline bool span_contains(const IntMatrix& b, const IntMatrix& a) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!solve_integer(b, a.column(j))) return false;
  return true;
}

/// Two independent saturated column sets with the same rational span.
inline bool same_saturated_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) return false;
  auto fa = invariant_factors(a);
  if (fa.size() != a.cols()) return false;
  for (const auto& d : fa)
    if (d != 1) return false;
  return matrix_rank(IntMatrix::hstack({a, b})) == a.cols();
}

/// Action of g on the saturated sublattice spanned by `basis`.
inline IntMatrix action_on(const IntMatrix& a, const IntMatrix& basis) {
  Sublattice s = make_sublattice(basis);
  IntMatrix image = a * basis;
  IntMatrix t = s.coords * image;
  ensure(basis * t == image, "sublattice is not stable");
  return t;
}

}  // namespace detail

/// Replays the proof that H^1(<iota_1, iota_2>, Pic) = Z/2 as exact checks.
/// Throws ProofStepFailure naming the first violated step.
inline PropCohomoResult verify_prop_cohomo(const PicardModule& pic, int n1, int n2, int n3) {
  using detail::select;
  const int n = 2 * (n1 + n2 + n3);
  if (n1 < 0 || n2 < 0 || n3 < 1) throw DomainError("need n1, n2 >= 0 and n3 >= 1");
  // With exactly one of n1, n2 zero the group has H^1 = 0 and the argument does not apply.
  if ((n1 == 0) != (n2 == 0)) throw DomainError("n1 and n2 must be both positive or both zero");
  if (n < 6) throw DomainError("need n = 2(n1+n2+n3) >= 6");
  if (pic.n != n) throw DomainError("Picard module has the wrong n");
  const auto& b = *pic.basis;
  const std::size_t r = b.rank();

  PropCohomoResult res;
  res.cyclic_case = (n1 == 0 && n2 == 0);
  auto& wit = res.witness;
  wit.n = n;
  wit.n1 = n1;
  wit.n2 = n2;
  wit.n3 = n3;

  auto [iota1, iota2] = iota_generators(n1, n2, n3);
  const Permutation sigma = iota1 * iota2;
  const Permutation tau = iota2;
  const IntMatrix a_sigma = b.matrix_of(sigma);
  const IntMatrix a_tau = b.matrix_of(tau);
  PermutationGroup g = res.cyclic_case ? PermutationGroup(n, {tau}) : PermutationGroup(n, {iota1, iota2});

  const SubsetMask last = 1U << (n - 2);  // point n-1
  std::vector<std::size_t> l_idx{0}, p_idx, n_idx, q_idx{0};
  for (std::size_t i = 1; i < r; ++i) {
    const SubsetMask j = b.label_mask(i);
    if (j & last) {
      p_idx.push_back(i);
      continue;
    }
    l_idx.push_back(i);
    (std::popcount(j) >= 2 ? n_idx : q_idx).push_back(i);
  }

  // Splitting.
  for (const IntMatrix* a : {&a_sigma, &a_tau})
    if (!select(*a, p_idx, l_idx).is_zero() || !select(*a, l_idx, p_idx).is_zero())
      throw ProofStepFailure(ProofStep::splitting, "L and P are not both stable");
  res.checked.push_back(ProofStep::splitting);

  const IntMatrix l_sigma = select(a_sigma, l_idx, l_idx), l_tau = select(a_tau, l_idx, l_idx);
  const std::size_t rl = l_idx.size();

  // Acyclicity of sigma and reduction to <tau> acting on L^sigma.
  res.h1_M = h1(restrict_module(pic.module, g));
  if (!h1(restrict_module(pic.module, PermutationGroup(n, {sigma}))).is_trivial())
    throw ProofStepFailure(ProofStep::sigma_acyclic, "H^1(<sigma>, M) is nonzero");
  if (!select(a_sigma, p_idx, p_idx).is_permutation_matrix() || !select(a_tau, p_idx, p_idx).is_permutation_matrix())
    throw ProofStepFailure(ProofStep::sigma_acyclic, "P is not a permutation module");
  {
    std::vector<IntMatrix> l_act;
    for (const auto& x : g.generators()) l_act.push_back(select(b.matrix_of(x), l_idx, l_idx));
    if (h1(GLattice(g, std::move(l_act), {}, GLattice::Verify::none)) != res.h1_M)
      throw ProofStepFailure(ProofStep::sigma_acyclic, "H^1(G, L) differs from H^1(G, M)");
  }
  const IntMatrix l_fixed = fixed_basis({l_sigma}, rl);
  const AbelianInvariants h1_l_sigma = h1_cyclic_matrix(detail::action_on(l_tau, l_fixed), 2);
  if (h1_l_sigma != res.h1_M)
    throw ProofStepFailure(ProofStep::sigma_acyclic, "H^1(<tau>, L^sigma) differs from H^1(G, M)");
  res.checked.push_back(ProofStep::sigma_acyclic);

  // N inside L, the quotient Q in coordinates (H, E_1, ..., E_{n-2}).
  std::vector<std::size_t> l_pos_n, l_pos_q;
  for (std::size_t k = 0; k < rl; ++k) {
    const std::size_t i = l_idx[k];
    if (i != 0 && std::popcount(b.label_mask(i)) >= 2) l_pos_n.push_back(k);
    else l_pos_q.push_back(k);
  }
  for (const IntMatrix* a : {&l_sigma, &l_tau})
    if (!select(*a, l_pos_q, l_pos_n).is_zero()) throw ProofStepFailure(ProofStep::exact_sequence, "N is not stable");
  if (!select(l_sigma, l_pos_n, l_pos_n).is_permutation_matrix())
    throw ProofStepFailure(ProofStep::exact_sequence, "sigma does not permute the E_I spanning N");
  const IntMatrix q_sigma_act = select(l_sigma, l_pos_q, l_pos_q), q_tau_act = select(l_tau, l_pos_q, l_pos_q);
  const std::size_t rq = l_pos_q.size();
  const IntMatrix q_fixed = fixed_basis({q_sigma_act}, rq);
  {
    IntMatrix proj(rq, rl);
    for (std::size_t k = 0; k < rq; ++k) proj(k, l_pos_q[k]) = 1;
    const IntMatrix image = proj * l_fixed;
    if (!detail::span_contains(q_fixed, image) || !detail::span_contains(image, q_fixed))
      throw ProofStepFailure(ProofStep::exact_sequence, "L^sigma does not surject onto Q^sigma");
  }
  res.checked.push_back(ProofStep::exact_sequence);

  // N^sigma: e_I over I in {1..n-2}, 2 <= |I| <= n-4, one per sigma-orbit.
  if (!res.cyclic_case) {
    const SubsetMask inner = last - 1;  // points 1..n-2
    std::map<std::vector<std::int64_t>, SubsetMask> by_vector;
    for (SubsetMask i = 1; i <= inner; ++i) {
      const int k = std::popcount(i);
      if ((i & ~inner) || k < 2 || k > n - 4) continue;
      const SubsetMask si = apply_to_mask(sigma, i);
      if (si < i) continue;
      std::vector<std::int64_t> e(r, 0);
      e[b.index_of_e(i)] += 1;
      if (si != i) e[b.index_of_e(si)] += 1;
      wit.n_sigma_labels.push_back(i);
      wit.n_sigma_basis.push_back(e);
      by_vector.emplace(e, i);
    }
    std::vector<std::size_t> n_pos;
    for (auto k : l_pos_n) n_pos.push_back(l_idx[k]);
    IntMatrix e_cols(n_pos.size(), wit.n_sigma_basis.size());
    for (std::size_t c = 0; c < wit.n_sigma_basis.size(); ++c)
      for (std::size_t k = 0; k < n_pos.size(); ++k) e_cols(k, c) = wit.n_sigma_basis[c][n_pos[k]];
    const IntMatrix n_fixed = fixed_basis({select(a_sigma, n_pos, n_pos)}, n_pos.size());
    if (!detail::same_saturated_lattice(e_cols, n_fixed))
      throw ProofStepFailure(ProofStep::n_sigma_free, "the e_I do not form a basis of N^sigma");
    IntMatrix t_perm(wit.n_sigma_basis.size(), wit.n_sigma_basis.size());
    for (std::size_t c = 0; c < wit.n_sigma_basis.size(); ++c) {
      auto img = a_tau * wit.n_sigma_basis[c];
      auto it = by_vector.find(img);
      if (it == by_vector.end()) throw ProofStepFailure(ProofStep::n_sigma_free, "tau(e_I) is not some e_I'");
      if (it->second == wit.n_sigma_labels[c])
        throw ProofStepFailure(ProofStep::n_sigma_free, "tau fixes e_" + mask_string(it->second));
      wit.tau_on_n.push_back({wit.n_sigma_labels[c], it->second});
      const auto pos = std::find(wit.n_sigma_labels.begin(), wit.n_sigma_labels.end(), it->second) -
                       wit.n_sigma_labels.begin();
      t_perm(pos, c) = 1;
    }
    if (!h1_cyclic_matrix(t_perm, 2).is_trivial() || !h2_cyclic_matrix(t_perm, 2).is_trivial())
      throw ProofStepFailure(ProofStep::n_sigma_free, "N^sigma has nonzero Tate cohomology");
    res.checked.push_back(ProofStep::n_sigma_free);
  }

  // Q^sigma basis.
  {
    const int m = n1 + n2, half = (n - 2) / 2;
    auto e_unit = [&](int point) {  // E_point in Q coordinates
      std::vector<std::int64_t> v(rq, 0);
      v[point] = 1;
      return v;
    };
    std::vector<std::int64_t> e0(rq, -1);
    e0[0] = 1;  // H - sum of E_1 .. E_{n-2}
    auto plus = [](std::vector<std::int64_t> a, const std::vector<std::int64_t>& c) {
      for (std::size_t k = 0; k < a.size(); ++k) a[k] += c[k];
      return a;
    };
    std::map<std::string, std::vector<std::int64_t>> named;
    auto add = [&](const std::string& name, std::vector<std::int64_t> v) {
      wit.q_sigma_names.push_back(name);
      wit.q_sigma_basis.push_back(v);
      named.emplace(name, std::move(v));
    };
    add("e0", e0);
    for (int i = 1; i <= m; ++i) add("e" + std::to_string(i), plus(plus(e0, e_unit(2 * i - 1)), e_unit(2 * i)));
    for (int j = m + 1; j <= half; ++j) {
      add("w" + std::to_string(j), e_unit(2 * j - 1));
      add("v" + std::to_string(j), plus(e0, e_unit(2 * j)));
    }
    const IntMatrix qb = IntMatrix::from_columns(rq, wit.q_sigma_basis);
    if (qb.cols() != q_fixed.cols() || !detail::span_contains(q_fixed, qb) || !detail::span_contains(qb, q_fixed))
      throw ProofStepFailure(ProofStep::q_sigma_basis, "e_i, w_j, v_j do not form a basis of Q^sigma");
    auto neg = [](std::vector<std::int64_t> a) {
      for (auto& x : a) x = -x;
      return a;
    };
    auto expect = [&](const std::string& from, const std::string& to, const std::vector<std::int64_t>& target) {
      if (q_tau_act * named.at(from) != target)
        throw ProofStepFailure(ProofStep::q_sigma_basis, "tau(" + from + ") != " + to);
      wit.tau_on_q.push_back({from, to});
    };
    expect("e0", "-e0", neg(e0));
    for (int i = 1; i <= m; ++i) expect("e" + std::to_string(i), "e" + std::to_string(i), named.at("e" + std::to_string(i)));
    for (int j = m + 1; j <= half; ++j) {
      expect("w" + std::to_string(j), "v" + std::to_string(j), named.at("v" + std::to_string(j)));
      expect("v" + std::to_string(j), "w" + std::to_string(j), named.at("w" + std::to_string(j)));
    }
    res.h1_Q = h1_cyclic_matrix(detail::action_on(q_tau_act, qb), 2);
    if (res.h1_Q != AbelianInvariants::from_cyclic_orders({2}))
      throw ProofStepFailure(ProofStep::q_sigma_basis, "H^1(<tau>, Q^sigma) = " + res.h1_Q.to_string());
    res.checked.push_back(ProofStep::q_sigma_basis);
  }

  if (!res.cyclic_case) {
    if (res.h1_M != res.h1_Q || res.h1_M != AbelianInvariants::from_cyclic_orders({2}))
      throw ProofStepFailure(ProofStep::final_value, "H^1(G, M) = " + res.h1_M.to_string());
    res.checked.push_back(ProofStep::final_value);
  }
  return res;
}

inline PropCohomoResult verify_prop_cohomo(int n1, int n2, int n3) {
  const int n = 2 * (n1 + n2 + n3);
  if (n < 6 || n > kMaxPicardN) throw DomainError("need 6 <= n = 2(n1+n2+n3) <= " + std::to_string(kMaxPicardN));
  return verify_prop_cohomo(build_picard(n), n1, n2, n3);
}

}  // namespace m0n

#endif  // M0N_SURVEY_PROP_COHOMO_HPP
