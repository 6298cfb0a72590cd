#ifndef M0N_PICARD_PICARD_HPP
#define M0N_PICARD_PICARD_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "m0n/intlattice/cohomology.hpp"
#include "m0n/intlattice/glattice.hpp"
#include "m0n/permgroup/group.hpp"

namespace m0n {

/// Subsets of {1..n} as bit masks, bit i-1 for point i.
using SubsetMask = std::uint32_t;

inline constexpr int kMinPicardN = 5;
inline constexpr int kMaxPicardN = 12;
/// Largest n for which build_picard checks the Coxeter relations by default.
inline constexpr int kCoxeterCheckMaxN = 10;

inline std::vector<int> mask_points(SubsetMask m) {
  std::vector<int> pts;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1U) pts.push_back(i + 1);
  return pts;
}

inline SubsetMask mask_of(const std::vector<int>& points) {
  SubsetMask m = 0;
  for (int p : points) m |= 1U << (p - 1);
  return m;
}

inline std::string mask_string(SubsetMask m) {
  std::string s;
  for (int p : mask_points(m)) s += (s.empty() ? "" : ",") + std::to_string(p);
  return s;
}

inline SubsetMask apply_to_mask(const Permutation& g, SubsetMask m) {
  SubsetMask out = 0;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1U) out |= 1U << g(i);
  return out;
}

/// Rank of Pic of the moduli space: 2^(n-1) - C(n,2) - 1.
inline std::size_t picard_rank(int n) {
  return (std::size_t{1} << (n - 1)) - static_cast<std::size_t>(n) * (n - 1) / 2 - 1;
}

/// The Kapranov basis H, E_J and the boundary-class dictionary for fixed n.
class KapranovBasis {
 public:
  explicit KapranovBasis(int n) : n_(n), index_(std::size_t{1} << n, -1) {
    if (n < kMinPicardN || n > kMaxPicardN)
      throw DomainError("n must lie in " + std::to_string(kMinPicardN) + ".." + std::to_string(kMaxPicardN));
    const SubsetMask full_minus_n = (1U << (n - 1)) - 1U;
    std::vector<SubsetMask> js;
    for (SubsetMask j = 1; j <= full_minus_n; ++j) {
      const int k = std::popcount(j);
      if (k >= 1 && k <= n - 4) js.push_back(j);
    }
    std::sort(js.begin(), js.end(), [](SubsetMask a, SubsetMask b) {
      const int ka = std::popcount(a), kb = std::popcount(b);
      if (ka != kb) return ka < kb;
      return mask_points(a) < mask_points(b);
    });
    masks_.push_back(0);  // H
    for (auto j : js) {
      index_[j] = static_cast<int>(masks_.size());
      masks_.push_back(j);
    }
    ensure(masks_.size() == picard_rank(n), "Kapranov label count differs from the rank formula");
  }

  int n() const { return n_; }
  std::size_t rank() const { return masks_.size(); }
  /// Mask of E_J for index >= 1; index 0 is H.
  SubsetMask label_mask(std::size_t idx) const { return masks_.at(idx); }
  std::string label(std::size_t idx) const { return idx == 0 ? "H" : "E_{" + mask_string(masks_.at(idx)) + "}"; }

  /// Basis index of E_J; -1 when J is not a Kapranov label.
  int index_of_e(SubsetMask j) const { return j < index_.size() ? index_[j] : -1; }

  SubsetMask all_points() const { return (1U << n_) - 1U; }
  SubsetMask last_point() const { return 1U << (n_ - 1); }

  /// D_I = D_{I^c}; the representative contains n.
  SubsetMask canonical_boundary(SubsetMask i) const {
    if (i & ~all_points()) throw DomainError("boundary label has points outside 1..n");
    const int k = std::popcount(i);
    if (k < 2 || n_ - k < 2) throw DomainError("boundary label needs |I| >= 2 and |I^c| >= 2");
    return (i & last_point()) ? i : (all_points() & ~i);
  }

  /// Sparse coordinates of D_I: pairs (basis index, coefficient).
  std::vector<std::pair<int, std::int64_t>> boundary_sparse(SubsetMask i) const {
    const SubsetMask c = canonical_boundary(i);
    const SubsetMask j = c & ~last_point();
    const int k = std::popcount(j);
    if (k <= n_ - 4) return {{index_of_e(j), 1}};
    // |J| = n-3: D_I = H - sum of E_K over nonempty K in J with |K| <= n-4.
    std::vector<std::pair<int, std::int64_t>> v{{0, 1}};
    for (SubsetMask kmask = (j - 1) & j; kmask; kmask = (kmask - 1) & j) v.push_back({index_of_e(kmask), -1});
    std::sort(v.begin(), v.end());
    return v;
  }

  std::vector<std::int64_t> boundary_class(SubsetMask i) const {
    std::vector<std::int64_t> v(rank(), 0);
    for (auto [idx, c] : boundary_sparse(i)) v[idx] += c;
    return v;
  }

  /// Canonical boundary labels sorted by (|I|, points).
  std::vector<SubsetMask> boundary_labels() const {
    std::vector<SubsetMask> out;
    for (SubsetMask i = 0; i <= all_points(); ++i) {
      if (!(i & last_point())) continue;
      const int k = std::popcount(i);
      if (k >= 2 && n_ - k >= 2) out.push_back(i);
    }
    std::sort(out.begin(), out.end(), [](SubsetMask a, SubsetMask b) {
      const int ka = std::popcount(a), kb = std::popcount(b);
      if (ka != kb) return ka < kb;
      return mask_points(a) < mask_points(b);
    });
    return out;
  }

  /// Matrix of a permutation of {1..n}: E_J goes to D_{g(J + n)} and H to
  /// the image of its boundary expansion H = D_{3..n} + sum_J D_{J + n},
  /// J over nonempty subsets of {3..n-1} of size <= n-4.
  IntMatrix matrix_of(const Permutation& g) const {
    if (g.degree() != n_) throw DomainError("permutation degree differs from n");
    const std::size_t r = rank();
    IntMatrix a(r, r);
    auto add_col = [&](std::size_t col, SubsetMask image) {
      for (auto [idx, c] : boundary_sparse(image)) a(idx, col) += c;
    };
    for (std::size_t col = 1; col < r; ++col) add_col(col, apply_to_mask(g, masks_[col] | last_point()));
    for (const auto& term : h_expansion()) add_col(0, apply_to_mask(g, term));
    return a;
  }

  /// Boundary labels whose classes sum to H.
  std::vector<SubsetMask> h_expansion() const {
    const SubsetMask rest = all_points() & ~0b11U & ~last_point();  // {3..n-1}
    std::vector<SubsetMask> terms{rest | last_point()};
    for (SubsetMask j = rest; j; j = (j - 1) & rest)
      if (std::popcount(j) <= n_ - 4) terms.push_back(j | last_point());
    return terms;
  }

 private:
  int n_;
  std::vector<SubsetMask> masks_;
  std::vector<int> index_;
};

/// Generators (1,2) and (1,2,...,n) of S_n.
inline PermutationGroup symmetric_group_std(int n) {
  std::vector<int> cyc(n), tr(n);
  for (int i = 0; i < n; ++i) {
    cyc[i] = (i + 1) % n + 1;
    tr[i] = i + 1;
  }
  std::swap(tr[0], tr[1]);
  return PermutationGroup(n, {Permutation::from_images(tr), Permutation::from_images(cyc)});
}

/// Pic of the moduli space with its S_n action.
struct PicardModule {
  int n = 0;
  std::shared_ptr<const KapranovBasis> basis;
  GLattice module;

  std::size_t rank() const { return module.rank(); }
  std::vector<std::int64_t> boundary_class(SubsetMask i) const { return basis->boundary_class(i); }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < basis->rank(); ++i) out.push_back(basis->label(i));
    return out;
  }
  IntMatrix matrix_of(const Permutation& g) const { return basis->matrix_of(g); }
};

/// psi_i = sum of D_I over I containing i and missing j, k (the two smallest
/// other points).
inline std::vector<std::int64_t> psi_class(const KapranovBasis& b, int i) {
  const int n = b.n();
  if (i < 1 || i > n) throw DomainError("psi index out of range");
  std::vector<int> others;
  for (int p = 1; p <= n && others.size() < 2; ++p)
    if (p != i) others.push_back(p);
  const SubsetMask bi = 1U << (i - 1);
  const SubsetMask bjk = (1U << (others[0] - 1)) | (1U << (others[1] - 1));
  std::vector<std::int64_t> v(b.rank(), 0);
  for (SubsetMask s = 0; s <= b.all_points(); ++s) {
    if (!(s & bi) || (s & bjk)) continue;
    const int k = std::popcount(s);
    if (k < 2 || n - k < 2) continue;
    for (auto [idx, c] : b.boundary_sparse(s)) v[idx] += c;
  }
  return v;
}

/// psi_1..psi_n followed by every boundary class; the candidate pool for
/// permutation-basis searches.
inline std::vector<std::vector<std::int64_t>> distinguished_vectors(const KapranovBasis& b) {
  std::vector<std::vector<std::int64_t>> out;
  for (int i = 1; i <= b.n(); ++i) out.push_back(psi_class(b, i));
  for (auto lab : b.boundary_labels()) out.push_back(b.boundary_class(lab));
  return out;
}

namespace detail {

/// Checks the Coxeter relations for the adjacent transpositions, and that
/// the two generators are the expected products of them.
inline void check_coxeter_relations(const KapranovBasis& b) {
  const int n = b.n();
  std::vector<IntMatrix> s;
  for (int i = 1; i < n; ++i) {
    std::vector<int> img(n);
    for (int k = 0; k < n; ++k) img[k] = k + 1;
    std::swap(img[i - 1], img[i]);
    s.push_back(b.matrix_of(Permutation::from_images(img)));
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (!(s[i] * s[i]).is_identity()) throw InvariantViolation("s_i^2 != 1 in the Picard action");
    for (int j = i + 1; j + 1 < n; ++j) {
      IntMatrix p = s[i] * s[j];
      const int ord = (j == i + 1) ? 3 : 2;
      if (!matrix_power(p, ord).is_identity()) throw InvariantViolation("braid relation fails in the Picard action");
    }
  }
  // (1,2,...,n) = s_1 s_2 ... s_(n-1).
  IntMatrix c = IntMatrix::identity(b.rank());
  for (const auto& m : s) c = c * m;
  auto gens = symmetric_group_std(n).generators();
  if (c != b.matrix_of(gens[1])) throw InvariantViolation("n-cycle matrix differs from the product of transpositions");
  if (s[0] != b.matrix_of(gens[0])) throw InvariantViolation("transposition matrix mismatch");
}

/// Re-derives H = D_{3..n} + sum_J D_{J+n} by solving for the coefficients
/// and checks the solution is unique and all ones.
inline void check_h_expansion(const KapranovBasis& b) {
  const auto terms = b.h_expansion();
  std::vector<std::vector<std::int64_t>> cols;
  for (auto t : terms) cols.push_back(b.boundary_class(t));
  IntMatrix m = IntMatrix::from_columns(b.rank(), cols);
  std::vector<std::int64_t> h(b.rank(), 0);
  h[0] = 1;
  auto x = solve_integer(m, h);
  if (!x) throw InvariantViolation("H is not an integer combination of the chosen boundary classes");
  if (matrix_rank(m) != terms.size()) throw InvariantViolation("boundary expansion of H is not unique");
  for (auto c : *x)
    if (c != 1) throw InvariantViolation("boundary expansion of H has a coefficient other than 1");
}

}  // namespace detail

/// Builds Pic with generators (1,2) and (1,...,n). The Coxeter relations are
/// checked as matrix identities when `check_relations` is set.
inline PicardModule build_picard(int n, bool check_relations) {
  auto basis = std::make_shared<const KapranovBasis>(n);
  detail::check_h_expansion(*basis);
  if (check_relations) detail::check_coxeter_relations(*basis);
  PermutationGroup sn = symmetric_group_std(n);
  std::vector<IntMatrix> act;
  for (const auto& g : sn.generators()) act.push_back(basis->matrix_of(g));
  GLattice::ElementAction ea = [basis](const Permutation& g) { return basis->matrix_of(g); };
  return PicardModule{n, basis, GLattice(sn, std::move(act), std::move(ea), GLattice::Verify::none)};
}

inline PicardModule build_picard(int n) { return build_picard(n, n <= kCoxeterCheckMaxN); }

/// Pic restricted to a subgroup G of S_n.
inline GLattice lattice_for(const PicardModule& pic, const PermutationGroup& g) {
  if (g.degree() != pic.n) throw DomainError("group degree differs from n");
  return restrict_module(pic.module, g);
}

/// The sequence 0 -> N -> M -> Q -> 0.
struct NQPair {
  int n = 0;
  GLattice N;
  GLattice Q;
  std::vector<SubsetMask> n_labels;  // labels of the N basis
  IntMatrix inclusion;               // rank M x rank N, columns D_I
  IntMatrix projection;              // n x rank M, onto the Q basis (H, E_1..E_{n-1})
  IntMatrix embedding;               // n x n, Q basis into Z^n with basis g_1..g_n
};

namespace detail {

inline IntMatrix point_permutation_matrix(const Permutation& g) {
  const int n = g.degree();
  IntMatrix p(n, n);
  for (int i = 0; i < n; ++i) p(g(i), i) = 1;
  return p;
}

}  // namespace detail

inline NQPair build_NQ(const PicardModule& pic) {
  const int n = pic.n;
  const auto& b = *pic.basis;
  const std::size_t r = b.rank();
  NQPair out{n, pic.module, pic.module, {}, {}, {}, {}};

  // Projection onto Q in the basis (H, E_1, ..., E_{n-1}).
  IntMatrix proj(n, r);
  proj(0, 0) = 1;
  for (int i = 1; i <= n - 1; ++i) proj(i, b.index_of_e(1U << (i - 1))) = 1;
  IntMatrix lift0(r, n);  // set-theoretic lift H -> H, E_i -> E_i
  lift0(0, 0) = 1;
  for (int i = 1; i <= n - 1; ++i) lift0(b.index_of_e(1U << (i - 1)), i) = 1;

  IntMatrix emb(n, n);
  for (int i = 0; i < n - 1; ++i) emb(i, 0) = 1;
  emb(n - 1, 0) = n - 3;
  for (int i = 1; i <= n - 1; ++i) {
    emb(i - 1, i) = 1;
    emb(n - 1, i) = 1;
  }

  // N: boundary labels with |I|, |I^c| != 2.
  std::vector<SubsetMask> nl;
  for (auto m : b.boundary_labels()) {
    const int k = std::popcount(m);
    if (k != 2 && n - k != 2) nl.push_back(m);
  }
  std::vector<std::vector<std::int64_t>> cols;
  for (auto m : nl) cols.push_back(b.boundary_class(m));
  IntMatrix incl = IntMatrix::from_columns(r, cols);
  ensure((proj * incl).is_zero(), "projection does not vanish on N");

  auto basis_ptr = pic.basis;
  auto q_action = [basis_ptr, proj, lift0](const Permutation& g) { return proj * (basis_ptr->matrix_of(g) * lift0); };
  std::vector<SubsetMask> nl_copy = nl;
  auto n_index = std::make_shared<std::vector<SubsetMask>>(nl);
  auto n_action = [basis_ptr, n_index](const Permutation& g) {
    const std::size_t k = n_index->size();
    IntMatrix a(k, k);
    for (std::size_t col = 0; col < k; ++col) {
      const SubsetMask img = basis_ptr->canonical_boundary(apply_to_mask(g, (*n_index)[col]));
      auto it = std::lower_bound(n_index->begin(), n_index->end(), img, [](SubsetMask x, SubsetMask y) {
        const int kx = std::popcount(x), ky = std::popcount(y);
        if (kx != ky) return kx < ky;
        return mask_points(x) < mask_points(y);
      });
      ensure(it != n_index->end() && *it == img, "N label set is not stable");
      a(static_cast<std::size_t>(it - n_index->begin()), col) = 1;
    }
    return a;
  };

  std::vector<IntMatrix> qa, na;
  for (const auto& g : pic.module.group().generators()) {
    IntMatrix aq = q_action(g);
    ensure(aq * proj == proj * pic.module.element_matrix(g), "projection is not equivariant");
    ensure(emb * aq == detail::point_permutation_matrix(g) * emb, "Q action is not the restricted permutation action");
    qa.push_back(std::move(aq));
    IntMatrix an = n_action(g);
    ensure(pic.module.element_matrix(g) * incl == incl * an, "inclusion of N is not equivariant");
    na.push_back(std::move(an));
  }
  out.N = GLattice(pic.module.group(), std::move(na), n_action, GLattice::Verify::none);
  out.Q = GLattice(pic.module.group(), std::move(qa), q_action, GLattice::Verify::none);
  out.n_labels = std::move(nl_copy);
  out.inclusion = std::move(incl);
  out.projection = std::move(proj);
  out.embedding = std::move(emb);
  return out;
}

inline NQPair build_NQ(int n) { return build_NQ(build_picard(n)); }

/// The section s: Q -> M for odd n (columns indexed by H, E_1..E_{n-1}).
inline IntMatrix splitting_section(const PicardModule& pic) {
  const int n = pic.n;
  if (n % 2 == 0) throw DomainError("the splitting section exists only for odd n");
  const auto& b = *pic.basis;
  IntMatrix s(b.rank(), n);
  s(0, 0) = 1;
  for (int i = 1; i <= n - 1; ++i) s(b.index_of_e(1U << (i - 1)), i) = 1;
  const int lo = (n - 1) / 2, hi = n - 4;
  for (std::size_t idx = 1; idx < b.rank(); ++idx) {
    const SubsetMask m = b.label_mask(idx);
    const int k = std::popcount(m);
    if (k < lo || k > hi) continue;
    s(idx, 0) += k - 1;
    for (int p : mask_points(m)) s(idx, p) += 1;
  }
  return s;
}

inline IntMatrix splitting_section(int n) {
  if (n % 2 == 0) throw DomainError("the splitting section exists only for odd n");
  return splitting_section(build_picard(n));
}

struct SectionCheck {
  bool is_section = false;   // projection * s = identity on Q
  bool equivariant = false;  // s * Q(g) = M(g) * s for the generators of S_n
};

inline SectionCheck check_section(const PicardModule& pic, const NQPair& nq, const IntMatrix& s) {
  SectionCheck out;
  if (s.rows() != pic.rank() || s.cols() != nq.Q.rank()) return out;
  out.is_section = (nq.projection * s).is_identity();
  out.equivariant = true;
  for (std::size_t i = 0; i < pic.module.generator_count(); ++i)
    if (s * nq.Q.action(i) != pic.module.action(i) * s) out.equivariant = false;
  return out;
}

/// L tensor P_0 over S_(n-2) x S_2, with generators (1,2), (1,...,n-2),
/// (n-1,n). Basis f_i = e_i - e_(n-2), i = 1..n-3.
inline GLattice losev_manin_lattice(int n) {
  if (n < kMinPicardN || n > kMaxPicardN) throw DomainError("n out of range for the Losev-Manin lattice");
  auto act = [n](const Permutation& g) {
    for (int i = 0; i < n - 2; ++i)
      if (g(i) >= n - 2) throw DomainError("element does not preserve {1..n-2}");
    const std::int64_t sign = (g(n - 2) == n - 2) ? 1 : -1;
    const int r = n - 3;
    IntMatrix a(r, r);
    const int last = g(n - 3);  // image of point n-2 (0-based n-3)
    for (int i = 0; i < r; ++i) {
      const int gi = g(i);
      if (gi < r) a(gi, i) += sign;
      if (last < r) a(last, i) -= sign;
    }
    return a;
  };
  std::vector<int> t(n), c(n), w(n);
  for (int i = 0; i < n; ++i) t[i] = c[i] = w[i] = i + 1;
  std::swap(t[0], t[1]);
  for (int i = 0; i < n - 2; ++i) c[i] = (i + 1) % (n - 2) + 1;
  std::swap(w[n - 2], w[n - 1]);
  PermutationGroup g(n, {Permutation::from_images(t), Permutation::from_images(c), Permutation::from_images(w)});
  std::vector<IntMatrix> mats;
  for (const auto& x : g.generators()) mats.push_back(act(x));
  // True relations of S_(n-2) x S_2 beyond the generator orders; the full
  // action check runs when the group is small.
  Word braid;
  for (int k = 0; k < 3; ++k) braid.insert(braid.end(), {{0, 1}, {1, -1}, {0, 1}, {1, 1}});
  std::vector<Word> relators = {
      braid,
      {{0, 1}, {1, 1}, {0, 1}, {1, 1}},
      {{0, 1}, {2, 1}, {0, 1}, {2, 1}},
      {{1, 1}, {2, 1}, {1, -1}, {2, 1}},
  };
  relators[1] = Word{};
  for (int k = 0; k < n - 3; ++k) relators[1].insert(relators[1].end(), {{0, 1}, {1, 1}});
  const auto mode = n <= 9 ? GLattice::Verify::exhaustive : GLattice::Verify::relators_only;
  return GLattice(g, std::move(mats), act, mode, relators);
}

}  // namespace m0n

#endif  // M0N_PICARD_PICARD_HPP
