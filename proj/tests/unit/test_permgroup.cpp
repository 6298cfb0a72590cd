#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "m0n/permgroup/catalog.hpp"
#include "m0n/permgroup/catalog_io.hpp"
#include "m0n/permgroup/conjugacy.hpp"
#include "m0n/permgroup/subgroups.hpp"
#include "oracles/brute_subgroups.hpp"

using namespace m0n;

TEST(Permutation, ParsesCyclesZeroBased) {
  auto p = Permutation::parse_cycles("(1,2,3)(5,6)", 6);
  EXPECT_EQ(p(0), 1);
  EXPECT_EQ(p(1), 2);
  EXPECT_EQ(p(2), 0);
  EXPECT_EQ(p(3), 3);
  EXPECT_EQ(p(4), 5);
  EXPECT_EQ(p.to_cycles(), "(1,2,3)(5,6)");
  EXPECT_EQ(p.order(), 6);
  EXPECT_FALSE(p.is_even());
}

TEST(Permutation, ProductAppliesRightFactorFirst) {
  auto a = Permutation::parse_cycles("(1,2)", 3);
  auto b = Permutation::parse_cycles("(2,3)", 3);
  auto ab = a * b;
  for (int i = 0; i < 3; ++i) EXPECT_EQ(ab(i), a(b(i)));
  EXPECT_EQ(Permutation::parse_cycles(" ( 1 , 2 ) ( 2 , 3 ) ", 3), b * a);
}

TEST(Permutation, RejectsMalformedInput) {
  EXPECT_THROW(Permutation::parse_cycles("(1,2", 4), ParseError);
  EXPECT_THROW(Permutation::parse_cycles("(1,1)", 4), ParseError);
  EXPECT_THROW(Permutation::parse_cycles("1,2)", 4), ParseError);
  EXPECT_THROW(Permutation::parse_cycles("(1,5)", 4), DomainError);
  EXPECT_THROW(Permutation::parse_cycles("(0,1)", 4), DomainError);
  EXPECT_THROW(Permutation::identity(13), DomainError);
}

TEST(Permutation, InverseAndPowersAgree) {
  std::mt19937 rng(7);
  std::vector<int> img{1, 2, 3, 4, 5, 6, 7, 8, 9};
  for (int t = 0; t < 50; ++t) {
    std::shuffle(img.begin(), img.end(), rng);
    auto p = Permutation::from_images(img);
    EXPECT_TRUE((p * p.inverse()).is_identity());
    EXPECT_TRUE(p.pow(p.order()).is_identity());
    EXPECT_EQ(p.pow(-1), p.inverse());
    int sum = 0;
    for (int c : p.cycle_type()) sum += c;
    EXPECT_EQ(sum, 9);
  }
}

TEST(PermutationGroup, OrdersOfStandardGroups) {
  EXPECT_EQ(PermutationGroup::symmetric(5).order(), 120u);
  EXPECT_EQ(PermutationGroup::trivial(4).order(), 1u);
  EXPECT_EQ(PermutationGroup::parse("(1,2)(3,4); (1,3)(2,4)", 4).order(), 4u);
  EXPECT_EQ(PermutationGroup::parse("(1,2,3,4,5); (1,2)", 5).order(), 120u);
  EXPECT_EQ(PermutationGroup::parse("(1,2,3,4,5,6,7); (2,3,5)(4,7,6)", 7).order(), 21u);
}

TEST(PermutationGroup, ElementCapThrows) {
  EXPECT_THROW(PermutationGroup::symmetric(8).elements(1000), CapExceeded);
}

TEST(PermutationGroup, OrbitPredicates) {
  auto g = PermutationGroup::parse("(1,2)(3,4)(5,6)", 6);
  EXPECT_FALSE(g.fixes_point());
  EXPECT_TRUE(g.has_invariant_pair());
  EXPECT_FALSE(g.has_odd_orbit());
  auto h = PermutationGroup::parse("(1,2,3); (4,5)", 6);
  EXPECT_TRUE(h.fixes_point());
  EXPECT_TRUE(h.has_odd_orbit());
  auto k = PermutationGroup::parse("(1,2,3,4,5,6)", 6);
  EXPECT_FALSE(k.has_invariant_pair());
}

TEST(PermutationGroup, IotaGeneratorsCommuteAndSwapBlocks) {
  auto [a, b] = iota_generators(2, 1, 1);
  EXPECT_EQ(a.degree(), 8);
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ(a.to_cycles(), "(1,2)(3,4)(7,8)");
  EXPECT_EQ(b.to_cycles(), "(5,6)(7,8)");
  EXPECT_THROW(iota_generators(1, 1, 0), DomainError);
}

TEST(Conjugacy, FindsConjugatorIntoLargerGroup) {
  auto a = PermutationGroup::parse("(1,2)(3,4)", 6);
  auto b = PermutationGroup::parse("(3,5)(4,6); (1,2)", 6);
  auto w = find_conjugator_into(a, b);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(b.contains_group(conjugate_group(a, *w)));
  EXPECT_FALSE(find_conjugator_into(PermutationGroup::parse("(1,2,3)", 6), b).has_value());
}

TEST(Conjugacy, DistinguishesNonConjugateKleinGroups) {
  auto v1 = PermutationGroup::parse("(1,2)(3,4); (1,3)(2,4)", 4);
  auto v2 = PermutationGroup::parse("(1,2); (3,4)", 4);
  EXPECT_FALSE(is_conjugate_subgroup(v1, v2).has_value());
  auto v3 = PermutationGroup::parse("(1,3); (2,4)", 4);
  EXPECT_TRUE(is_conjugate_subgroup(v2, v3).has_value());
}

TEST(Subgroups, ClassesOfSymmetricGroupsMatchCatalog) {
  for (int n = 2; n <= 5; ++n) {
    auto within = subgroup_classes_of(PermutationGroup::symmetric(n));
    EXPECT_EQ(within.size(), subgroup_conjugacy_classes(n).size()) << "n=" << n;
  }
}

TEST(Subgroups, PrimePowerFamilyOfS4) {
  // S_4: trivial, C2 (two classes), C3, C4, V (two classes), D8.
  auto pp = subgroup_classes_of(PermutationGroup::symmetric(4), ConjugacyScope::within_group, kSubgroupEnumerationCap,
                                SubgroupFamily::prime_power);
  EXPECT_EQ(pp.size(), 8u);
  for (const auto& h : pp) {
    std::size_t o = h.order();
    while (o % 2 == 0) o /= 2;
    while (o % 3 == 0) o /= 3;
    EXPECT_EQ(o, 1u);
    EXPECT_FALSE(h.order() % 6 == 0);
  }
}

TEST(Catalog, ClassCountsThroughDegreeSeven) {
  const std::size_t expected[] = {1, 2, 4, 11, 19, 56, 96};
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(subgroup_conjugacy_classes(n).size(), expected[n - 1]) << "degree " << n;
}

TEST(Catalog, MatchesBruteForceThroughDegreeSix) {
  for (int n = 1; n <= 6; ++n) {
    oracle::BruteSubgroups brute(n);
    const auto truth = brute.class_canonicals();
    const auto cat = subgroup_conjugacy_classes(n);
    std::set<oracle::Elements> ours;
    for (const auto& g : cat.classes) ours.insert(brute.canonical(brute.elements_of(g)));
    EXPECT_EQ(ours.size(), cat.size()) << "degree " << n << ": two catalog entries are conjugate";
    EXPECT_EQ(ours, truth) << "degree " << n;
  }
}

TEST(Catalog, SortedByOrderAndNamed) {
  const auto cat = subgroup_conjugacy_classes(6);
  for (std::size_t i = 1; i < cat.size(); ++i) EXPECT_LE(cat.classes[i - 1].order(), cat.classes[i].order());
  EXPECT_EQ(cat.names.front(), "G001");
  EXPECT_EQ(cat.names.back(), "G056");
  EXPECT_EQ(cat.classes.back().order(), 720u);
}

TEST(Catalog, FindClassUpToConjugacy) {
  const auto cat = subgroup_conjugacy_classes(6);
  auto g = PermutationGroup::parse("(2,4)(5,6)", 6);
  auto idx = cat.find_class(g);
  ASSERT_TRUE(idx.has_value());
  EXPECT_TRUE(is_conjugate_subgroup(cat.classes[*idx], g).has_value());
}

TEST(CatalogIo, RoundTripsText) {
  const auto cat = subgroup_conjugacy_classes(5);
  std::ostringstream os;
  write_catalog(os, cat);
  std::istringstream is(os.str());
  const auto back = read_catalog(is);
  ASSERT_EQ(back.size(), cat.size());
  EXPECT_EQ(back.provenance, cat.provenance);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    EXPECT_EQ(back.names[i], cat.names[i]);
    EXPECT_TRUE(back.classes[i].same_elements(cat.classes[i]));
  }
  std::ostringstream again;
  write_catalog(again, back);
  EXPECT_EQ(again.str(), os.str());
}

TEST(CatalogIo, RejectsBadInput) {
  std::istringstream no_degree("A: (1,2)\n");
  EXPECT_THROW(read_catalog(no_degree), DomainError);
  std::istringstream dup("degree: 4\nA: (1,2)\nA: (1,3)\n");
  EXPECT_THROW(read_catalog(dup), DomainError);
  std::istringstream conj("degree: 4\nA: (1,2)\nB: (3,4)\n");
  EXPECT_THROW(read_catalog(conj), DomainError);
  std::istringstream junk("degree: 4\nnonsense\n");
  EXPECT_THROW(read_catalog(junk), ParseError);
}

TEST(CatalogIo, ImportedFileProvenance) {
  std::istringstream is("# two classes\ndegree: 3\nT: ()\nC3: (1,2,3)\n");
  const auto cat = read_catalog(is);
  EXPECT_EQ(cat.provenance, CatalogProvenance::imported_file);
  EXPECT_EQ(cat.size(), 2u);
  EXPECT_EQ(cat.classes[1].order(), 3u);
}

TEST(PermutationGroup, ClosureIsIdempotent) {
  const auto g = PermutationGroup::parse("(1,2,3)(4,5); (1,4)", 6);
  const auto& once = g.elements();
  const PermutationGroup again(6, once);
  EXPECT_TRUE(again.same_elements(g));
  EXPECT_EQ(again.order(), g.order());
}

TEST(Conjugacy, IsAnEquivalenceOnRandomSubgroupsOfS5) {
  std::mt19937 rng(11);
  std::vector<int> img{1, 2, 3, 4, 5};
  auto random_perm = [&] {
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation::from_images(img);
  };
  for (int t = 0; t < 40; ++t) {
    const PermutationGroup a(5, {random_perm(), random_perm()});
    const Permutation u = random_perm(), v = random_perm();
    const PermutationGroup b = conjugate_group(a, u), c = conjugate_group(b, v);
    auto self = is_conjugate_subgroup(a, a);
    ASSERT_TRUE(self.has_value());
    EXPECT_TRUE(conjugate_group(a, *self).same_elements(a));
    auto ab = is_conjugate_subgroup(a, b);
    auto ba = is_conjugate_subgroup(b, a);
    ASSERT_TRUE(ab && ba);
    EXPECT_TRUE(conjugate_group(a, *ab).same_elements(b));
    EXPECT_TRUE(conjugate_group(b, ab->inverse()).same_elements(a));
    auto bc = is_conjugate_subgroup(b, c);
    ASSERT_TRUE(bc.has_value());
    EXPECT_TRUE(conjugate_group(a, *bc * *ab).same_elements(c));
    EXPECT_TRUE(is_conjugate_subgroup(a, c).has_value());
  }
}

TEST(PermutationGroup, IotaGeneratorsAreCommutingInvolutions) {
  for (int n1 = 0; n1 <= 6; ++n1)
    for (int n2 = 0; n1 + n2 <= 6; ++n2)
      for (int n3 = 0; n1 + n2 + n3 <= 6; ++n3) {
        if (n1 + n2 + n3 < 3) continue;
        auto [a, b] = iota_generators(n1, n2, n3);
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a * a).is_identity());
        EXPECT_TRUE((b * b).is_identity());
        EXPECT_LE(PermutationGroup(a.degree(), {a, b}).order(), 4u);
      }
}
