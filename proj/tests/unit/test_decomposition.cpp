#include <gtest/gtest.h>

#include <random>

#include "m0n/intlattice/cohomology.hpp"
#include "m0n/intlattice/decomposition.hpp"
#include "m0n/picard/picard.hpp"

using namespace m0n;

namespace {

// Random unimodular matrix as a product of elementary row operations.
IntMatrix random_unimodular(std::mt19937& rng, std::size_t r) {
  IntMatrix u = IntMatrix::identity(r);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int t = 0; t < 12; ++t) {
    const std::size_t i = rng() % r, j = rng() % r;
    if (i == j) continue;
    const int c = coef(rng);
    for (std::size_t k = 0; k < r; ++k) u(i, k) += c * u(j, k);
  }
  return u;
}

GLattice conjugate_lattice(const GLattice& m, const IntMatrix& u) {
  const IntMatrix inv = unimodular_inverse(u);
  std::vector<IntMatrix> act;
  for (const auto& a : m.actions()) act.push_back(u * a * inv);
  return GLattice(m.group(), std::move(act));
}

std::vector<std::vector<std::int64_t>> columns(const IntMatrix& a) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t j = 0; j < a.cols(); ++j) out.push_back(a.column(j));
  return out;
}

}  // namespace

TEST(Decomposition, VerifiesStandardBasisOfPermutationModule) {
  const auto s3 = PermutationGroup::symmetric(3);
  const GLattice m = coset_module(s3, PermutationGroup::parse("(1,2)", 3));
  EXPECT_TRUE(verify_permutation_basis(m, IntMatrix::identity(3)));
  IntMatrix bad = IntMatrix::identity(3);
  bad(0, 1) = 1;
  EXPECT_FALSE(verify_permutation_basis(m, bad));
  auto rep = report_from_basis(m, IntMatrix::identity(3));
  ASSERT_EQ(rep.summands.size(), 1u);
  EXPECT_EQ(rep.summands[0].index, 3u);
  EXPECT_EQ(rep.summands[0].multiplicity, 1u);
}

TEST(Decomposition, FindsHiddenPermutationBasis) {
  std::mt19937 rng(5);
  const auto d8 = PermutationGroup::parse("(1,2,3,4); (1,3)", 4);
  const GLattice base = direct_sum({coset_module(d8, PermutationGroup::trivial(4)),
                                    coset_module(d8, PermutationGroup::parse("(1,3)", 4)),
                                    coset_module(d8, d8)});
  for (int t = 0; t < 5; ++t) {
    const IntMatrix u = random_unimodular(rng, base.rank());
    const GLattice m = conjugate_lattice(base, u);
    auto cand = columns(u);
    // Decoys: sums of hidden basis vectors.
    cand.push_back(u * std::vector<std::int64_t>(base.rank(), 1));
    auto mix = u.column(0);
    const auto other = u.column(9);
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] += other[i];
    cand.push_back(mix);
    auto rep = permutation_basis_search(m, cand);
    ASSERT_EQ(rep.status, DecompositionStatus::certified) << rep.obstruction;
    ASSERT_TRUE(rep.witness.has_value());
    EXPECT_TRUE(verify_permutation_basis(m, *rep.witness));
    std::size_t rank = 0;
    for (const auto& s : rep.summands) rank += s.index * s.multiplicity;
    EXPECT_EQ(rank, base.rank());
    EXPECT_EQ(rep.summands.size(), 3u);
  }
}

TEST(Decomposition, RejectsSignModule) {
  const auto c2 = PermutationGroup::parse("(1,2)", 2);
  const GLattice m = direct_sum({rank_one_module(c2, true), rank_one_module(c2, false)});
  auto rep = permutation_basis_search(m);
  EXPECT_EQ(rep.status, DecompositionStatus::not_permutation);
  EXPECT_FALSE(rep.obstruction.empty());
}

TEST(Decomposition, RespectsBudget) {
  const auto v4 = PermutationGroup::parse("(1,2)(3,4); (1,3)(2,4)", 4);
  const GLattice m = coset_module(v4, PermutationGroup::trivial(4));
  SearchOptions opt;
  opt.budget = 0;
  auto rep = permutation_basis_search(m, {{1, 1, 0, 0}}, opt);
  EXPECT_NE(rep.status, DecompositionStatus::certified);
}

TEST(Decomposition, PicardSixOverFixedPointFreeInvolution) {
  const PicardModule pic = build_picard(6);
  const GLattice m = lattice_for(pic, PermutationGroup::parse("(1,2)(3,4)(5,6)", 6));
  auto rep = permutation_basis_search(m, distinguished_vectors(*pic.basis));
  ASSERT_EQ(rep.status, DecompositionStatus::certified) << rep.obstruction;
  std::size_t trivial = 0, regular = 0;
  for (const auto& s : rep.summands) (s.index == 1 ? trivial : regular) += s.multiplicity;
  EXPECT_EQ(trivial, 4u);
  EXPECT_EQ(regular, 6u);
}

TEST(Decomposition, PicardSixObstructedGroupIsNotCertified) {
  const PicardModule pic = build_picard(6);
  const GLattice m = lattice_for(pic, PermutationGroup::parse("(3,4); (1,2,5,6)", 6));
  auto rep = permutation_basis_search(m, distinguished_vectors(*pic.basis));
  EXPECT_EQ(rep.status, DecompositionStatus::not_permutation);
}

TEST(Decomposition, Z6FromPicardOfFixedPointGroup) {
  // A group fixing the last point permutes the Kapranov basis.
  const PicardModule pic = build_picard(6);
  const GLattice m = lattice_for(pic, PermutationGroup::parse("(1,2,3); (4,5)", 6));
  EXPECT_TRUE(verify_permutation_basis(m, IntMatrix::identity(m.rank())));
}
