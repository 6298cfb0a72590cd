#ifndef M0N_SURVEY_SURVEY_HPP
#define M0N_SURVEY_SURVEY_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "m0n/intlattice/cohomology.hpp"
#include "m0n/intlattice/decomposition.hpp"
#include "m0n/permgroup/catalog.hpp"
#include "m0n/permgroup/conjugacy.hpp"
#include "m0n/picard/picard.hpp"

namespace m0n {

enum class SpStatus { certified_yes, certified_no, unknown };

inline std::string to_string(SpStatus s) {
  switch (s) {
    case SpStatus::certified_yes: return "certified_yes";
    case SpStatus::certified_no: return "certified_no";
    case SpStatus::unknown: return "unknown";
  }
  return "unknown";
}

/// Sequential filter applied to every class: the first stage that matches wins.
enum class FunnelStage { contains_gprime, fixes_point, fixes_pair, remainder };

inline std::string to_string(FunnelStage s) {
  switch (s) {
    case FunnelStage::contains_gprime: return "contains_Gprime";
    case FunnelStage::fixes_point: return "fixes_point";
    case FunnelStage::fixes_pair: return "fixes_pair";
    case FunnelStage::remainder: return "remainder";
  }
  return "remainder";
}

struct GroupFlags {
  bool fixes_point = false;
  bool fixes_pair = false;
  bool odd_orbit = false;
  bool contains_Gprime = false;  // contains a conjugate of a class with H^1(-, M) != 0
};

struct GroupReport {
  std::string name;
  PermutationGroup group = PermutationGroup::trivial(1);
  GroupFlags flags;
  AbelianInvariants h1_M, h1_Q, h1_dual;
  /// H^1(G', M) = H^1(G', M*) = 0 for every subgroup G' of G.
  bool h1_criterion = true;
  std::string h1_witness;  // name of an obstructed subgroup class when the criterion fails
  DecompositionReport decomposition;
  SpStatus sp_status = SpStatus::unknown;
  FunnelStage stage = FunnelStage::remainder;
  std::string external_sp;  // verdict imported from an outside tool, empty when none
};

struct SurveyOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  bool run_search = true;
  std::size_t search_budget = kDefaultSearchBudget;
  /// Imported (SP) verdicts keyed by class name, carried through to the output.
  std::map<std::string, std::string> external_sp;
};

struct SurveyResult {
  int n = 0;
  std::size_t catalog_size = 0;
  CatalogProvenance provenance = CatalogProvenance::cyclic_extension;
  std::vector<GroupReport> reports;
  std::map<std::string, std::size_t> funnel;
};

inline unsigned resolve_workers(unsigned requested) {
  if (requested) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Runs job(i) for i in [0, count) on a pool of threads.
inline void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& job) {
  workers = std::max(1U, std::min<unsigned>(resolve_workers(workers), static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Cohomology of M, M* and Q restricted to one group.
struct CohomologyTriple {
  AbelianInvariants h1_M, h1_dual, h1_Q;
};

inline CohomologyTriple cohomology_triple(const PicardModule& pic, const GLattice& q, const PermutationGroup& g) {
  GLattice m = lattice_for(pic, g);
  return {h1(m), h1(dual_module(m)), h1(restrict_module(q, g))};
}

/// contained[i] lists the classes j != i with a conjugate of class j inside class i.
inline std::vector<std::vector<std::size_t>> containment_table(const SubgroupClassCatalog& cat,
                                                               const std::vector<bool>& sources, unsigned workers) {
  std::vector<std::vector<std::size_t>> out(cat.size());
  parallel_for(cat.size(), workers, [&](std::size_t i) {
    const auto& big = cat.classes[i];
    const std::size_t order = big.order();
    std::optional<SubgroupIndex> index;
    for (std::size_t j = 0; j < cat.size(); ++j) {
      if (j == i || !sources[j]) continue;
      const auto& small = cat.classes[j];
      if (order % small.order() != 0 || small.order() == order) continue;
      if (!index) index.emplace(big);
      if (search_conjugator(small.generators(), *index)) out[i].push_back(j);
    }
  });
  return out;
}

/// One report per catalog class plus the funnel counts.
inline SurveyResult classify(const PicardModule& pic, const SubgroupClassCatalog& cat, const SurveyOptions& opt = {}) {
  if (cat.degree != pic.n) throw DomainError("catalog degree differs from n");
  const std::size_t count = cat.size();
  const NQPair nq = build_NQ(pic);

  SurveyResult res;
  res.n = pic.n;
  res.catalog_size = count;
  res.provenance = cat.provenance;
  res.reports.resize(count);

  parallel_for(count, opt.workers, [&](std::size_t i) {
    auto& r = res.reports[i];
    r.name = i < cat.names.size() ? cat.names[i] : class_name(i);
    r.group = cat.classes[i];
    auto t = cohomology_triple(pic, nq.Q, r.group);
    r.h1_M = t.h1_M;
    r.h1_dual = t.h1_dual;
    r.h1_Q = t.h1_Q;
    r.flags.fixes_point = r.group.fixes_point();
    r.flags.fixes_pair = r.group.has_invariant_pair();
    r.flags.odd_orbit = r.group.has_odd_orbit();
  });

  std::vector<bool> obstructed_m(count), obstructed_any(count);
  for (std::size_t i = 0; i < count; ++i) {
    obstructed_m[i] = !res.reports[i].h1_M.is_trivial();
    obstructed_any[i] = obstructed_m[i] || !res.reports[i].h1_dual.is_trivial();
  }
  const auto below = containment_table(cat, obstructed_any, opt.workers);

  for (std::size_t i = 0; i < count; ++i) {
    auto& r = res.reports[i];
    r.flags.contains_Gprime = obstructed_m[i];
    // Witness: the obstructed class of least order at or below this one.
    std::optional<std::size_t> witness;
    if (obstructed_any[i]) witness = i;
    for (std::size_t j : below[i]) {
      if (obstructed_m[j]) r.flags.contains_Gprime = true;
      if (!witness || cat.classes[j].order() < cat.classes[*witness].order()) witness = j;
    }
    if (witness) r.h1_witness = res.reports[*witness].name;
    r.h1_criterion = r.h1_witness.empty();
    if (r.flags.contains_Gprime) r.stage = FunnelStage::contains_gprime;
    else if (r.flags.fixes_point) r.stage = FunnelStage::fixes_point;
    else if (r.flags.fixes_pair) r.stage = FunnelStage::fixes_pair;
    else r.stage = FunnelStage::remainder;
    auto ext = opt.external_sp.find(r.name);
    if (ext != opt.external_sp.end()) r.external_sp = ext->second;
  }

  const auto distinguished = distinguished_vectors(*pic.basis);
  parallel_for(count, opt.workers, [&](std::size_t i) {
    auto& r = res.reports[i];
    if (!r.h1_criterion) {
      r.sp_status = SpStatus::certified_no;
      r.decomposition.status = DecompositionStatus::not_permutation;
      r.decomposition.obstruction = "H^1 nonzero on subgroup class " + r.h1_witness;
      return;
    }
    if (!opt.run_search) return;
    SearchOptions so;
    so.budget = opt.search_budget;
    so.check_h1 = false;
    r.decomposition = permutation_basis_search(lattice_for(pic, r.group), distinguished, so);
    r.sp_status = r.decomposition.status == DecompositionStatus::certified ? SpStatus::certified_yes : SpStatus::unknown;
  });

  auto& f = res.funnel;
  for (const char* k : {"contains_Gprime", "fixes_point", "fixes_pair", "remainder", "remainder_odd_orbit",
                        "remainder_no_odd_orbit", "remainder_certified", "remainder_not_permutation",
                        "remainder_unknown", "remainder_no_odd_orbit_unresolved"})
    f[k] = 0;
  f["total"] = count;
  for (const auto& r : res.reports) {
    ++f[to_string(r.stage)];
    if (r.stage != FunnelStage::remainder) continue;
    ++f[r.flags.odd_orbit ? "remainder_odd_orbit" : "remainder_no_odd_orbit"];
    switch (r.decomposition.status) {
      case DecompositionStatus::certified: ++f["remainder_certified"]; break;
      case DecompositionStatus::not_permutation: ++f["remainder_not_permutation"]; break;
      case DecompositionStatus::unknown: ++f["remainder_unknown"]; break;
    }
    if (!r.flags.odd_orbit && r.sp_status == SpStatus::unknown) ++f["remainder_no_odd_orbit_unresolved"];
  }
  return res;
}

inline SurveyResult classify(int n, const SubgroupClassCatalog& cat, const SurveyOptions& opt = {}) {
  return classify(build_picard(n), cat, opt);
}

struct MinimalGroup {
  std::string name;
  PermutationGroup group = PermutationGroup::trivial(1);
  AbelianInvariants h1_M;
};

/// Classes with H^1(-, M) != 0 none of whose proper subgroup classes is obstructed.
inline std::vector<MinimalGroup> minimal_obstructed_groups(const SurveyResult& survey, const SubgroupClassCatalog& cat,
                                                           unsigned workers = 0) {
  std::vector<bool> obstructed(cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) obstructed[i] = !survey.reports.at(i).h1_M.is_trivial();
  const auto below = containment_table(cat, obstructed, workers);
  std::vector<MinimalGroup> out;
  for (std::size_t i = 0; i < cat.size(); ++i)
    if (obstructed[i] && below[i].empty()) out.push_back({survey.reports[i].name, cat.classes[i], survey.reports[i].h1_M});
  return out;
}

/// Candidate mode: each obstructed candidate is checked against all of its
/// own proper subgroup classes.
struct CandidateVerdict {
  PermutationGroup group = PermutationGroup::trivial(1);
  AbelianInvariants h1_M;
  bool minimal = false;
  std::string obstructed_subgroup;  // generators of a proper obstructed subgroup, if any
};

inline std::vector<CandidateVerdict> minimal_obstructed_candidates(const PicardModule& pic,
                                                                   const std::vector<PermutationGroup>& candidates,
                                                                   unsigned workers = 0) {
  std::vector<CandidateVerdict> out(candidates.size());
  parallel_for(candidates.size(), workers, [&](std::size_t i) {
    auto& v = out[i];
    v.group = candidates[i];
    GLattice m = lattice_for(pic, v.group);
    v.h1_M = h1(m);
    if (v.h1_M.is_trivial()) return;
    v.minimal = true;
    const std::size_t order = v.group.order();
    for (const auto& sub : subgroup_classes_of(v.group, ConjugacyScope::within_group)) {
      if (sub.order() == order || sub.order() == 1) continue;
      if (!h1(restrict_module(m, sub)).is_trivial()) {
        v.minimal = false;
        v.obstructed_subgroup = sub.to_string();
        break;
      }
    }
  });
  return out;
}

/// The candidate groups at n = 10 with H^1(G, M) = Z/2.
inline std::vector<PermutationGroup> n10_candidate_groups() {
  return {PermutationGroup::parse("(1,2)(3,4)(5,6)(7,8);(1,2)(9,10)", 10),
          PermutationGroup::parse("(1,2)(3,4)(5,6);(5,6)(7,8)(9,10)", 10),
          PermutationGroup::parse("(3,6)(8,10);(1,2)(5,9);(1,2)(3,10,6,8)(4,7)", 10),
          PermutationGroup::parse("(3,6)(8,10);(1,2)(5,9)(8,10);(1,2)(3,10,6,8)(4,7)", 10)};
}

/// Representatives of the cycle types of S_n, as partitions of n in
/// decreasing lexicographic order of parts.
inline std::vector<std::vector<int>> cycle_types(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(left, max_part); k >= 1; --k) {
      cur.push_back(k);
      rec(left - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline Permutation permutation_of_type(int n, const std::vector<int>& type) {
  std::vector<int> img(n);
  int start = 0;
  for (int len : type) {
    for (int k = 0; k < len; ++k) img[start + k] = start + (k + 1) % len + 1;
    start += len;
  }
  return Permutation::from_images(img);
}

struct CyclicSweepRow {
  std::vector<int> cycle_type;
  Permutation generator = Permutation::identity(1);
  AbelianInvariants h1_M, h1_Q;
};

/// H^1 of M and Q on the cyclic group generated by one element of each
/// cycle type, by the cyclic formula.
inline std::vector<CyclicSweepRow> cyclic_sweep(const PicardModule& pic, unsigned workers = 0) {
  if (pic.n > 10) throw DomainError("cyclic sweep supports n <= 10");
  const NQPair nq = build_NQ(pic);
  const auto types = cycle_types(pic.n);
  std::vector<CyclicSweepRow> rows(types.size());
  parallel_for(types.size(), workers, [&](std::size_t i) {
    auto& row = rows[i];
    row.cycle_type = types[i];
    row.generator = permutation_of_type(pic.n, types[i]);
    row.h1_M = h1_cyclic(row.generator, pic.module);
    row.h1_Q = h1_cyclic(row.generator, nq.Q);
  });
  return rows;
}

inline std::string cycle_type_string(const std::vector<int>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return "[" + s + "]";
}

inline nlohmann::json report_to_json(const GroupReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["group"] = r.group.to_string();
  j["order"] = r.group.order();
  j["flags"] = {{"fixes_point", r.flags.fixes_point},
                {"fixes_pair", r.flags.fixes_pair},
                {"odd_orbit", r.flags.odd_orbit},
                {"contains_Gprime", r.flags.contains_Gprime}};
  j["h1_M"] = r.h1_M.to_string();
  j["h1_Q"] = r.h1_Q.to_string();
  j["h1_dual"] = r.h1_dual.to_string();
  j["h1_criterion"] = r.h1_criterion;
  j["h1_witness"] = r.h1_witness;
  j["decomposition"] = {{"status", to_string(r.decomposition.status)},
                        {"summary", r.decomposition.status == DecompositionStatus::certified ? r.decomposition.summary() : ""},
                        {"obstruction", r.decomposition.obstruction},
                        {"nodes", r.decomposition.nodes}};
  j["sp_status"] = to_string(r.sp_status);
  j["stage"] = to_string(r.stage);
  j["external_sp"] = r.external_sp;
  return j;
}

inline nlohmann::json survey_to_json(const SurveyResult& s) {
  nlohmann::json j;
  j["meta"] = {{"n", s.n}, {"catalog_size", s.catalog_size}, {"provenance", to_string(s.provenance)}};
  j["reports"] = nlohmann::json::array();
  for (const auto& r : s.reports) j["reports"].push_back(report_to_json(r));
  j["funnel"] = s.funnel;
  return j;
}

inline std::string survey_to_csv(const SurveyResult& s) {
  std::ostringstream os;
  os << "name,order,stage,fixes_point,fixes_pair,odd_orbit,contains_Gprime,h1_M,h1_Q,h1_dual,h1_criterion,"
        "decomposition,sp_status,external_sp\n";
  for (const auto& r : s.reports)
    os << r.name << ',' << r.group.order() << ',' << to_string(r.stage) << ',' << r.flags.fixes_point << ','
       << r.flags.fixes_pair << ',' << r.flags.odd_orbit << ',' << r.flags.contains_Gprime << ',' << r.h1_M.to_string()
       << ',' << r.h1_Q.to_string() << ',' << r.h1_dual.to_string() << ',' << r.h1_criterion << ','
       << to_string(r.decomposition.status) << ',' << to_string(r.sp_status) << ',' << r.external_sp << '\n';
  return os.str();
}

}  // namespace m0n

#endif  // M0N_SURVEY_SURVEY_HPP
