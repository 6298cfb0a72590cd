#include <gtest/gtest.h>

#include "m0n/intlattice/cohomology.hpp"
#include "m0n/permgroup/catalog.hpp"
#include "m0n/picard/picard.hpp"

using namespace m0n;

TEST(Picard, RankFormula) {
  const std::size_t expected[] = {5, 16, 42, 99, 219, 466};
  for (int n = 5; n <= 10; ++n) {
    EXPECT_EQ(picard_rank(n), expected[n - 5]);
    EXPECT_EQ(KapranovBasis(n).rank(), expected[n - 5]);
  }
  EXPECT_EQ(build_picard(8).rank(), 99u);
  EXPECT_THROW(build_picard(4), DomainError);
  EXPECT_THROW(build_picard(13), DomainError);
}

TEST(Picard, LabelsAndMasks) {
  KapranovBasis b(6);
  EXPECT_EQ(b.label(0), "H");
  EXPECT_EQ(mask_points(mask_of({1, 3})), (std::vector<int>{1, 3}));
  const int idx = b.index_of_e(mask_of({2, 5}));
  ASSERT_GE(idx, 0);
  EXPECT_EQ(b.label_mask(idx), mask_of({2, 5}));
  EXPECT_EQ(b.index_of_e(mask_of({1, 2, 3})), -1);  // |J| > n - 4
  EXPECT_EQ(b.index_of_e(mask_of({6})), -1);        // J avoids the last point
}

TEST(Picard, ActionIsHomomorphismOnSmallN) {
  for (int n = 5; n <= 7; ++n) {
    const PicardModule pic = build_picard(n, true);
    EXPECT_NO_THROW(pic.module.verify_homomorphism());
  }
}

TEST(Picard, BoundaryClassesAreSymmetricUnderComplement) {
  KapranovBasis b(7);
  for (auto m : b.boundary_labels()) {
    const SubsetMask c = b.all_points() & ~m;
    EXPECT_EQ(b.boundary_class(m), b.boundary_class(c)) << mask_string(m);
  }
}

TEST(Picard, GroupsFixingLastPointPermuteKapranovBasis) {
  const PicardModule pic = build_picard(7);
  for (const char* g : {"(1,2)", "(1,2,3,4,5,6)", "(1,3)(2,5,4)"}) {
    const IntMatrix a = pic.matrix_of(Permutation::parse_cycles(g, 7));
    EXPECT_TRUE(a.is_permutation_matrix()) << g;
  }
  EXPECT_FALSE(pic.matrix_of(Permutation::parse_cycles("(6,7)", 7)).is_permutation_matrix());
}

TEST(Picard, PsiClassesFormAnOrbit) {
  const KapranovBasis b(6);
  const PicardModule pic = build_picard(6);
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j) {
      std::string cyc = i == j ? "()" : "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      const IntMatrix a = pic.matrix_of(Permutation::parse_cycles(cyc, 6));
      EXPECT_EQ(a * psi_class(b, i), psi_class(b, j)) << i << "->" << j;
    }
}

TEST(NQ, RanksAndEmbedding) {
  for (int n = 5; n <= 9; ++n) {
    const PicardModule pic = build_picard(n);
    const NQPair nq = build_NQ(pic);
    EXPECT_EQ(nq.Q.rank(), static_cast<std::size_t>(n));
    EXPECT_EQ(nq.N.rank() + nq.Q.rank(), pic.rank());
    EXPECT_EQ(invariant_factors(nq.embedding).back(), 2) << "n=" << n;
    EXPECT_EQ(invariant_factors(nq.embedding).size(), static_cast<std::size_t>(n));
    EXPECT_TRUE((nq.projection * nq.inclusion).is_zero());
    EXPECT_EQ(invariant_factors(nq.projection), std::vector<BigInt>(n, 1));
  }
}

TEST(NQ, PairBoundaryMapsToSumOfPoints) {
  const int n = 7;
  const PicardModule pic = build_picard(n);
  const NQPair nq = build_NQ(pic);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      std::vector<std::int64_t> expect(n, 0);
      expect[i - 1] = expect[j - 1] = 1;
      EXPECT_EQ(nq.embedding * (nq.projection * pic.boundary_class(mask_of({i, j}))), expect) << i << "," << j;
    }
}

TEST(NQ, H1OfQIsZeroOrZ2OverS6Catalog) {
  const auto cat = subgroup_conjugacy_classes(6);
  const NQPair nq = build_NQ(6);
  const auto z2 = AbelianInvariants::from_cyclic_orders({2});
  std::size_t nonzero = 0;
  for (const auto& g : cat.classes) {
    const auto a = h1(restrict_module(nq.Q, g));
    EXPECT_TRUE(a.is_trivial() || a == z2) << g.to_string() << ": " << a.to_string();
    if (!a.is_trivial()) ++nonzero;
  }
  EXPECT_GT(nonzero, 0u);
}

TEST(Section, SplitsForOddN) {
  for (int n : {5, 7, 9}) {
    const PicardModule pic = build_picard(n);
    const auto chk = check_section(pic, build_NQ(pic), splitting_section(pic));
    EXPECT_TRUE(chk.is_section) << n;
    EXPECT_TRUE(chk.equivariant) << n;
  }
  for (int n : {6, 8}) EXPECT_THROW(splitting_section(n), DomainError);
}

TEST(Section, SetTheoreticLiftIsNotEquivariant) {
  const PicardModule pic = build_picard(7);
  const NQPair nq = build_NQ(pic);
  IntMatrix naive(pic.rank(), 7);
  naive(0, 0) = 1;
  for (int i = 1; i <= 6; ++i) naive(pic.basis->index_of_e(1U << (i - 1)), i) = 1;
  const auto chk = check_section(pic, nq, naive);
  EXPECT_TRUE(chk.is_section);
  EXPECT_FALSE(chk.equivariant);
}

TEST(LosevManin, RankAndInvolutionDecomposition) {
  for (int n : {6, 8, 10}) {
    const GLattice lm = losev_manin_lattice(n);
    EXPECT_EQ(lm.rank(), static_cast<std::size_t>(n - 3));
    std::string word;
    for (int i = 1; i < n; i += 2) word += "(" + std::to_string(i) + "," + std::to_string(i + 1) + ")";
    const auto sub = restrict_module(lm, PermutationGroup::parse(word, n));
    EXPECT_EQ(c2_decomposition(sub), (C2Decomposition{1, 0, static_cast<std::size_t>((n - 4) / 2)})) << "n=" << n;
  }
  for (int n : {5, 7}) EXPECT_EQ(losev_manin_lattice(n).rank(), static_cast<std::size_t>(n - 3));
}

TEST(Picard, BoundaryClassesSpanUnimodularly) {
  for (int n = 5; n <= 10; ++n) {
    KapranovBasis b(n);
    std::vector<std::vector<std::int64_t>> cols;
    for (auto m : b.boundary_labels()) cols.push_back(b.boundary_class(m));
    const auto f = invariant_factors(IntMatrix::from_columns(b.rank(), cols));
    EXPECT_EQ(f, std::vector<BigInt>(b.rank(), 1)) << "n=" << n;
  }
}

TEST(Picard, ActionPermutesBoundaryClasses) {
  for (int n = 5; n <= 10; ++n) {
    const PicardModule pic = build_picard(n);
    for (const auto& g : pic.module.group().generators()) {
      const IntMatrix a = pic.matrix_of(g);
      for (auto m : pic.basis->boundary_labels())
        ASSERT_EQ(a * pic.boundary_class(m), pic.boundary_class(apply_to_mask(g, m)))
            << "n=" << n << " g=" << g.to_cycles() << " I=" << mask_string(m);
    }
  }
}

TEST(Picard, CoxeterRelationsThroughTen) {
  for (int n = 5; n <= 10; ++n) EXPECT_NO_THROW(detail::check_coxeter_relations(KapranovBasis(n))) << n;
}

TEST(NQ, NIsAPermutationModule) {
  for (int n = 5; n <= 8; ++n) {
    const NQPair nq = build_NQ(n);
    for (const auto& a : nq.N.actions()) EXPECT_TRUE(a.is_permutation_matrix()) << n;
  }
}

TEST(Picard, H1OfMIsZeroOrZ2OverS6Catalog) {
  const auto cat = subgroup_conjugacy_classes(6);
  const PicardModule pic = build_picard(6);
  const auto z2 = AbelianInvariants::from_cyclic_orders({2});
  for (const auto& g : cat.classes) {
    const auto a = h1(lattice_for(pic, g));
    EXPECT_TRUE(a.is_trivial() || a == z2) << g.to_string() << ": " << a.to_string();
  }
}

TEST(NQ, NoEquivariantSectionForFixedPointFreeInvolutionAtSix) {
  const PicardModule pic = build_picard(6);
  const auto g = PermutationGroup::parse("(1,2)(3,4)(5,6)", 6);
  EXPECT_TRUE(h1(lattice_for(pic, g)).is_trivial());
  EXPECT_EQ(h1(restrict_module(build_NQ(pic).Q, g)).to_string(), "Z/2");
}
