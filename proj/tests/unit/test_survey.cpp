#include <gtest/gtest.h>

#include <atomic>

#include "m0n/permgroup/catalog.hpp"
#include "m0n/permgroup/conjugacy.hpp"
#include "m0n/survey/prop_cohomo.hpp"
#include "m0n/survey/repro.hpp"
#include "m0n/survey/survey.hpp"

using namespace m0n;

namespace {

const SubgroupClassCatalog& catalog6() {
  static const SubgroupClassCatalog cat = subgroup_conjugacy_classes(6);
  return cat;
}

const SurveyResult& survey6() {
  static const SurveyResult s = [] {
    SurveyOptions opt;
    opt.workers = 2;
    return classify(6, catalog6(), opt);
  }();
  return s;
}

}  // namespace

TEST(PropCohomo, AllProofStepsPassAtSixAndEight) {
  const PicardModule pic8 = build_picard(8);
  const int triples[][3] = {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}};
  auto r6 = verify_prop_cohomo(1, 1, 1);
  EXPECT_EQ(r6.h1_M.to_string(), "Z/2");
  EXPECT_EQ(r6.checked.size(), 6u);
  for (const auto& t : triples) {
    auto r = verify_prop_cohomo(pic8, t[0], t[1], t[2]);
    EXPECT_EQ(r.h1_M.to_string(), "Z/2");
    EXPECT_FALSE(r.cyclic_case);
    ASSERT_EQ(r.checked.size(), 6u);
    EXPECT_EQ(r.checked.front(), ProofStep::splitting);
    EXPECT_EQ(r.checked.back(), ProofStep::final_value);
  }
}

TEST(PropCohomo, WitnessTables) {
  auto r = verify_prop_cohomo(2, 1, 1);
  const auto& w = r.witness;
  EXPECT_EQ(w.n, 8);
  EXPECT_EQ(w.n_sigma_basis.size(), w.n_sigma_labels.size());
  EXPECT_EQ(w.tau_on_n.size(), w.n_sigma_basis.size());
  // tau pairs up the e_I basis of N^sigma without fixing any of them.
  std::map<SubsetMask, SubsetMask> tau(w.tau_on_n.begin(), w.tau_on_n.end());
  EXPECT_EQ(tau.size(), w.tau_on_n.size());
  for (const auto& [from, to] : tau) {
    EXPECT_NE(from, to) << mask_string(from);
    ASSERT_TRUE(tau.contains(to));
    EXPECT_EQ(tau.at(to), from);
  }
  ASSERT_FALSE(w.q_sigma_names.empty());
  EXPECT_EQ(w.q_sigma_names.front(), "e0");
  EXPECT_EQ(w.q_sigma_names.size(), w.q_sigma_basis.size());
  std::map<std::string, std::string> tq(w.tau_on_q.begin(), w.tau_on_q.end());
  EXPECT_EQ(tq.at("e0"), "-e0");
}

TEST(PropCohomo, EveryPositiveTripleThroughTen) {
  const PicardModule pic10 = build_picard(10);
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; a + b <= 4; ++b) {
      const int c = 5 - a - b;
      EXPECT_EQ(verify_prop_cohomo(pic10, a, b, c).h1_M.to_string(), "Z/2") << a << b << c;
    }
}

TEST(PropCohomo, CyclicCaseReportsQ) {
  auto r = verify_prop_cohomo(0, 0, 3);
  EXPECT_TRUE(r.cyclic_case);
  EXPECT_EQ(r.h1_Q.to_string(), "Z/2");
  EXPECT_EQ(r.h1_M.to_string(), "0");
  EXPECT_EQ(r.checked.size(), 4u);
}

TEST(PropCohomo, RejectsDegenerateTriples) {
  EXPECT_THROW(verify_prop_cohomo(0, 1, 2), DomainError);
  EXPECT_THROW(verify_prop_cohomo(1, 0, 2), DomainError);
  EXPECT_THROW(verify_prop_cohomo(1, 1, 0), DomainError);
  EXPECT_THROW(verify_prop_cohomo(-1, 2, 2), DomainError);
}

TEST(Survey, FunnelStagesPartitionTheCatalog) {
  const auto& s = survey6();
  ASSERT_EQ(s.reports.size(), 56u);
  const auto& f = s.funnel;
  EXPECT_EQ(f.at("contains_Gprime") + f.at("fixes_point") + f.at("fixes_pair") + f.at("remainder"), 56u);
  EXPECT_EQ(f.at("remainder_odd_orbit") + f.at("remainder_no_odd_orbit"), f.at("remainder"));
  EXPECT_EQ(f.at("remainder_certified") + f.at("remainder_not_permutation") + f.at("remainder_unknown"),
            f.at("remainder"));
  EXPECT_EQ(f.at("total"), 56u);
  EXPECT_EQ(f.at("contains_Gprime"), 16u);
  EXPECT_EQ(f.at("fixes_point"), 19u);
  EXPECT_EQ(f.at("fixes_pair"), 8u);
  EXPECT_EQ(f.at("remainder"), 13u);
}

TEST(Survey, ObstructedClassesAreThoseContainingIota) {
  const auto& s = survey6();
  auto [i1, i2] = iota_generators(1, 1, 1);
  const PermutationGroup iota(6, {i1, i2});
  for (std::size_t i = 0; i < s.reports.size(); ++i) {
    const auto& r = s.reports[i];
    const bool contains = find_conjugator_into(iota, r.group).has_value();
    EXPECT_EQ(r.flags.contains_Gprime, contains) << r.name;
  }
}

TEST(Survey, ObstructionIsMonotoneUnderContainment) {
  const auto& s = survey6();
  const auto& cat = catalog6();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (s.reports[i].h1_M.is_trivial()) continue;
    for (std::size_t j = 0; j < cat.size(); ++j)
      if (find_conjugator_into(cat.classes[i], cat.classes[j])) {
        EXPECT_TRUE(s.reports[j].flags.contains_Gprime) << cat.names[i] << " <= " << cat.names[j];
      }
  }
}

TEST(Survey, StatusConsistency) {
  for (const auto& r : survey6().reports) {
    if (r.decomposition.status == DecompositionStatus::certified) EXPECT_TRUE(r.h1_criterion) << r.name;
    if (!r.h1_criterion) EXPECT_EQ(r.sp_status, SpStatus::certified_no) << r.name;
    if (r.sp_status == SpStatus::certified_no) EXPECT_FALSE(r.h1_criterion) << r.name;
    if (r.flags.contains_Gprime) EXPECT_FALSE(r.h1_criterion) << r.name;
  }
}

TEST(Survey, ExampleGroupHasCriterionButNoCertificate) {
  const auto& s = survey6();
  const auto idx = catalog6().find_class(PermutationGroup::parse("(3,4); (1,2,5,6)", 6));
  ASSERT_TRUE(idx.has_value());
  const auto& r = s.reports[*idx];
  EXPECT_TRUE(r.h1_criterion);
  EXPECT_NE(r.decomposition.status, DecompositionStatus::certified);
  EXPECT_NE(r.sp_status, SpStatus::certified_yes);
}

TEST(Survey, UniqueMinimalObstructedClassAtSix) {
  const auto mins = minimal_obstructed_groups(survey6(), catalog6(), 2);
  ASSERT_EQ(mins.size(), 1u);
  auto [i1, i2] = iota_generators(1, 1, 1);
  EXPECT_TRUE(is_conjugate_subgroup(mins[0].group, PermutationGroup(6, {i1, i2})).has_value());
  EXPECT_EQ(mins[0].h1_M.to_string(), "Z/2");
  for (const auto& r : survey6().reports) {
    const auto& el = r.group.elements();
    const bool cyclic = std::any_of(el.begin(), el.end(), [&](const Permutation& x) {
      return static_cast<std::size_t>(x.order()) == el.size();
    });
    if (cyclic) EXPECT_TRUE(r.h1_M.is_trivial()) << r.name;
  }
}

TEST(Survey, OutputIndependentOfWorkerCount) {
  SurveyOptions one;
  one.workers = 1;
  const auto a = classify(6, catalog6(), one);
  EXPECT_EQ(survey_to_json(a).dump(), survey_to_json(survey6()).dump());
}

TEST(Survey, ExternalVerdictsAreCarried) {
  SurveyOptions opt;
  opt.run_search = false;
  opt.external_sp = {{"G056", "fails"}};
  const auto s = classify(6, catalog6(), opt);
  EXPECT_EQ(s.reports.back().external_sp, "fails");
  EXPECT_TRUE(s.reports.front().external_sp.empty());
}

TEST(Survey, RejectsDegreeMismatch) { EXPECT_THROW(classify(7, catalog6()), DomainError); }

TEST(Survey, JsonAndCsvShapes) {
  const auto j = survey_to_json(survey6());
  EXPECT_EQ(j.at("meta").at("n"), 6);
  EXPECT_EQ(j.at("meta").at("catalog_size"), 56);
  EXPECT_EQ(j.at("meta").at("provenance"), "cyclic-extension");
  EXPECT_EQ(j.at("reports").size(), 56u);
  EXPECT_EQ(j.at("funnel").at("remainder"), 13);
  const auto& r0 = j.at("reports").at(0);
  for (const char* k : {"name", "group", "flags", "h1_M", "h1_Q", "h1_dual", "h1_criterion", "decomposition",
                        "sp_status", "stage", "external_sp"})
    EXPECT_TRUE(r0.contains(k)) << k;
  const std::string csv = survey_to_csv(survey6());
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 57);
  EXPECT_EQ(csv.substr(0, 5), "name,");
}

TEST(CyclicSweep, SixAndEight) {
  const auto rows6 = cyclic_sweep(build_picard(6), 2);
  EXPECT_EQ(rows6.size(), 11u);
  for (const auto& r : rows6) EXPECT_TRUE(r.h1_M.is_trivial()) << cycle_type_string(r.cycle_type);
  const auto rows8 = cyclic_sweep(build_picard(8), 2);
  EXPECT_EQ(rows8.size(), 22u);
  for (const auto& r : rows8) EXPECT_TRUE(r.h1_M.is_trivial()) << cycle_type_string(r.cycle_type);
}

TEST(CyclicSweep, DistinguishesQFromM) {
  const auto rows = cyclic_sweep(build_picard(6), 1);
  const auto it = std::find_if(rows.begin(), rows.end(), [](const CyclicSweepRow& r) {
    return r.cycle_type == std::vector<int>{2, 2, 2};
  });
  ASSERT_NE(it, rows.end());
  EXPECT_EQ(it->h1_Q.to_string(), "Z/2");
  EXPECT_TRUE(it->h1_M.is_trivial());
}

TEST(CyclicSweep, CycleTypes) {
  EXPECT_EQ(cycle_types(6).size(), 11u);
  EXPECT_EQ(cycle_types(10).size(), 42u);
  const auto p = permutation_of_type(7, {3, 2, 2});
  EXPECT_EQ(p.cycle_type(), (std::vector<int>{3, 2, 2}));
}

TEST(Candidates, TenPointListIsMinimalAndObstructed) {
  const auto v = minimal_obstructed_candidates(build_picard(10), n10_candidate_groups(), 2);
  ASSERT_EQ(v.size(), 4u);
  std::vector<std::size_t> orders;
  for (const auto& c : v) {
    EXPECT_EQ(c.h1_M.to_string(), "Z/2") << c.group.to_string();
    EXPECT_TRUE(c.minimal) << c.group.to_string() << " " << c.obstructed_subgroup;
    orders.push_back(c.group.order());
  }
  std::sort(orders.begin(), orders.end());
  EXPECT_EQ(orders, (std::vector<std::size_t>{4, 4, 8, 8}));
}

TEST(Parallel, PropagatesExceptionsAndVisitsEveryIndex) {
  std::atomic<int> sum{0};
  parallel_for(100, 4, [&](std::size_t i) { sum += static_cast<int>(i); });
  EXPECT_EQ(sum.load(), 4950);
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw DomainError("boom"); }), DomainError);
}

TEST(Repro, FastTargetsPass) {
  for (const char* t : {"example-n6", "prop-cohomo", "klyachko-table", "section-split-odd", "n10-minimal"})
    for (const auto& c : run_repro(t, 2)) EXPECT_TRUE(c.pass) << t << ": " << c.label << " expected " << c.expected
                                                              << " got " << c.actual;
  EXPECT_THROW(run_repro("nope"), DomainError);
}
