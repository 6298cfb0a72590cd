#ifndef M0N_CLI_APP_HPP
#define M0N_CLI_APP_HPP

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "m0n/intlattice/cohomology.hpp"
#include "m0n/intlattice/decomposition.hpp"
#include "m0n/intlattice/serialize.hpp"
#include "m0n/permgroup/catalog.hpp"
#include "m0n/permgroup/catalog_io.hpp"
#include "m0n/picard/picard.hpp"
#include "m0n/schubert/schubert.hpp"
#include "m0n/survey/repro.hpp"
#include "m0n/survey/survey.hpp"

namespace m0n {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;
inline constexpr const char* kWorkersEnv = "M0N_WORKERS";

/// Parsed command line, validated before any computation.
struct RunConfig {
  std::string subcommand;
  int n = 0;
  std::string group;
  std::string lattice_path;
  std::string catalog_path;
  std::string out_path;
  std::string csv_path;
  std::string external_path;
  unsigned workers = 0;
  std::size_t element_cap = kDefaultElementCap;
  std::size_t budget = kDefaultSearchBudget;
  bool search = true;
  bool meta = false;
  bool labels = false;
  int degree = 0;
  int p = 0, q = 0;
  std::string lambda;
  std::string target;
};

namespace cli_detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline unsigned workers_from(unsigned flag) {
  if (flag) return flag;
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1024)
      throw UsageError(std::string(kWorkersEnv) + " must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return resolve_workers(0);
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream os(cfg.out_path, std::ios::binary);
  if (!os) throw DomainError("cannot write " + cfg.out_path);
  os << text;
}

inline PermutationGroup group_of(const RunConfig& cfg) {
  PermutationGroup g = PermutationGroup::parse(cfg.group, cfg.n);
  g.order(cfg.element_cap);
  return g;
}

/// The lattice named by --lattice or by --n with --group.
inline GLattice lattice_of(const RunConfig& cfg) {
  if (!cfg.lattice_path.empty()) return deserialize_glattice(read_file(cfg.lattice_path));
  return lattice_for(build_picard(cfg.n), group_of(cfg));
}

inline int cmd_picard_dump(const RunConfig& cfg, std::ostream& out) {
  const PicardModule pic = build_picard(cfg.n);
  nlohmann::json j = cfg.group.empty() ? to_json(pic.module) : to_json(lattice_for(pic, group_of(cfg)));
  if (cfg.labels) j["labels"] = pic.labels();
  emit(cfg, out, j.dump() + "\n");
  return kExitOk;
}

inline int cmd_h1(const RunConfig& cfg, std::ostream& out) {
  nlohmann::json j;
  if (!cfg.lattice_path.empty()) {
    j["h1"] = h1(lattice_of(cfg)).to_string();
  } else {
    const PicardModule pic = build_picard(cfg.n);
    const PermutationGroup g = group_of(cfg);
    j["h1_M"] = h1(lattice_for(pic, g)).to_string();
    j["h1_Q"] = h1(restrict_module(build_NQ(pic).Q, g)).to_string();
  }
  emit(cfg, out, j.dump() + "\n");
  return kExitOk;
}

inline int cmd_decomp(const RunConfig& cfg, std::ostream& out) {
  SearchOptions opt;
  opt.budget = cfg.budget;
  DecompositionReport rep;
  if (!cfg.lattice_path.empty()) {
    rep = permutation_basis_search(lattice_of(cfg), {}, opt);
  } else {
    const PicardModule pic = build_picard(cfg.n);
    rep = permutation_basis_search(lattice_for(pic, group_of(cfg)), distinguished_vectors(*pic.basis), opt);
  }
  nlohmann::json j;
  j["status"] = to_string(rep.status);
  j["summary"] = rep.status == DecompositionStatus::certified ? rep.summary() : "";
  j["obstruction"] = rep.obstruction;
  j["nodes"] = rep.nodes;
  if (rep.witness) j["witness"] = matrix_to_json(*rep.witness);
  emit(cfg, out, j.dump() + "\n");
  return kExitOk;
}

inline SubgroupClassCatalog catalog_of(const RunConfig& cfg, int degree) {
  if (cfg.catalog_path.empty()) return subgroup_conjugacy_classes(degree);
  std::istringstream is(read_file(cfg.catalog_path));
  return read_catalog(is);
}

inline int cmd_survey_run(const RunConfig& cfg, std::ostream& out) {
  const SubgroupClassCatalog cat = catalog_of(cfg, cfg.n);
  SurveyOptions opt;
  opt.workers = cfg.workers;
  opt.run_search = cfg.search;
  opt.search_budget = cfg.budget;
  if (!cfg.external_path.empty()) {
    nlohmann::json ext;
    try {
      ext = nlohmann::json::parse(read_file(cfg.external_path));
      for (const auto& [k, v] : ext.items()) opt.external_sp[k] = v.get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("external verdict file: ") + e.what());
    }
  }
  const SurveyResult s = classify(cfg.n, cat, opt);
  nlohmann::json j = survey_to_json(s);
  if (cfg.meta) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["meta"]["generated_at"] = buf;
    j["meta"]["workers"] = cfg.workers;
  }
  emit(cfg, out, j.dump(1) + "\n");
  std::string csv_path = cfg.csv_path;
  if (csv_path.empty() && !cfg.out_path.empty()) {
    csv_path = cfg.out_path;
    const auto dot = csv_path.rfind('.');
    const auto slash = csv_path.rfind('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) csv_path.erase(dot);
    csv_path += ".csv";
  }
  if (!csv_path.empty()) {
    std::ofstream os(csv_path, std::ios::binary);
    if (!os) throw DomainError("cannot write " + csv_path);
    os << survey_to_csv(s);
  }
  return kExitOk;
}

inline int cmd_catalog_enum(const RunConfig& cfg, std::ostream& out) {
  std::ostringstream os;
  write_catalog(os, subgroup_conjugacy_classes(cfg.degree));
  emit(cfg, out, os.str());
  return kExitOk;
}

inline int cmd_catalog_import(const RunConfig& cfg, std::ostream& out) {
  std::istringstream is(read_file(cfg.catalog_path));
  const SubgroupClassCatalog cat = read_catalog(is);
  std::ostringstream os;
  write_catalog(os, cat);
  emit(cfg, out, os.str());
  return kExitOk;
}

inline int cmd_schubert_orbit(const RunConfig& cfg, std::ostream& out) {
  nlohmann::json j = nlohmann::json::object();
  const CohomologyClass x = generic_orbit_class(cfg.p, cfg.q);
  for (const auto& [lam, c] : x.terms()) {
    if (c.fits_slong_p()) j[lam.to_string()] = c.get_si();
    else j[lam.to_string()] = c.get_str();
  }
  emit(cfg, out, j.dump() + "\n");
  return kExitOk;
}

inline int cmd_schubert_pair(const RunConfig& cfg, std::ostream& out) {
  emit(cfg, out, klyachko_pairing(cfg.p, cfg.q, Partition::parse(cfg.lambda)).get_str() + "\n");
  return kExitOk;
}

inline int cmd_schubert_dim(const RunConfig& cfg, std::ostream& out) {
  emit(cfg, out, dim_schur(cfg.n, Partition::parse(cfg.lambda)).get_str() + "\n");
  return kExitOk;
}

inline int cmd_repro(const RunConfig& cfg, std::ostream& out) {
  const auto checks = run_repro(cfg.target, cfg.workers);
  std::ostringstream os;
  bool all = true;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.label << ": expected " << c.expected << ", got " << c.actual << "\n";
    all = all && c.pass;
  }
  emit(cfg, out, os.str());
  return all ? kExitOk : kExitDomain;
}

}  // namespace cli_detail

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  RunConfig cfg;
  unsigned workers_flag = 0;
  CLI::App app{"Picard lattices of M_0,n, their cohomology, subgroup surveys and Schubert calculus"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--workers", workers_flag, "worker threads (default: " + std::string(kWorkersEnv) + " or all cores)")
      ->check(CLI::Range(1U, 1024U));
  app.add_option("--element-cap", cfg.element_cap, "largest group order accepted")->check(CLI::PositiveNumber);

  auto add_out = [&](CLI::App* c) { c->add_option("--out", cfg.out_path, "output file (default: stdout)"); };
  auto add_n = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--n", cfg.n, "number of marked points")->check(CLI::Range(kMinPicardN, kMaxPicardN));
    if (required) o->required();
    return o;
  };

  auto* picard = app.add_subcommand("picard", "Picard lattice")->require_subcommand(1);
  auto* dump = picard->add_subcommand("dump", "print Pic as GLattice JSON");
  add_n(dump, true);
  dump->add_option("--group", cfg.group, "restrict to the group with these generators, ';'-separated");
  dump->add_flag("--labels", cfg.labels, "include the basis labels");
  add_out(dump);

  auto* h1c = app.add_subcommand("h1", "H^1 of Pic and Q, or of a lattice file");
  auto* h1n = add_n(h1c, false);
  auto* h1g = h1c->add_option("--group", cfg.group, "generators, ';'-separated");
  auto* h1l = h1c->add_option("--lattice", cfg.lattice_path, "GLattice JSON file")->check(CLI::ExistingFile);
  h1l->excludes(h1n)->excludes(h1g);
  add_out(h1c);

  auto* dec = app.add_subcommand("decomp", "search for a permutation basis");
  auto* dn = add_n(dec, false);
  auto* dg = dec->add_option("--group", cfg.group, "generators, ';'-separated");
  auto* dl = dec->add_option("--lattice", cfg.lattice_path, "GLattice JSON file")->check(CLI::ExistingFile);
  dl->excludes(dn)->excludes(dg);
  dec->add_option("--budget", cfg.budget, "search node budget")->check(CLI::PositiveNumber);
  add_out(dec);

  auto* survey = app.add_subcommand("survey", "subgroup survey")->require_subcommand(1);
  auto* run = survey->add_subcommand("run", "classify every subgroup class of S_n");
  add_n(run, true);
  run->add_option("--catalog", cfg.catalog_path, "catalog file (default: enumerate)")->check(CLI::ExistingFile);
  run->add_option("--csv", cfg.csv_path, "CSV summary (default: next to --out)");
  run->add_option("--external", cfg.external_path, "JSON map class name -> external (SP) verdict")
      ->check(CLI::ExistingFile);
  run->add_option("--budget", cfg.budget, "search node budget per class")->check(CLI::PositiveNumber);
  bool no_search = false;
  run->add_flag("--no-search", no_search, "skip the permutation basis search");
  run->add_flag("--meta", cfg.meta, "add a timestamp and the worker count to meta");
  add_out(run);

  auto* catalog = app.add_subcommand("catalog", "subgroup class catalogs")->require_subcommand(1);
  auto* cenum = catalog->add_subcommand("enum", "enumerate subgroup classes of S_d");
  cenum->add_option("--degree", cfg.degree, "degree")->required()->check(CLI::Range(1, kMaxCatalogDegree));
  add_out(cenum);
  auto* cimp = catalog->add_subcommand("import", "validate and normalize a catalog file");
  cimp->add_option("--file", cfg.catalog_path, "catalog file")->required()->check(CLI::ExistingFile);
  add_out(cimp);

  auto* sch = app.add_subcommand("schubert", "Schubert calculus")->require_subcommand(1);
  auto* orbit = sch->add_subcommand("orbit", "class of the generic torus orbit in Gr(p, p+q)");
  auto* pair = sch->add_subcommand("pair", "degree of [X] times sigma_lambda");
  for (auto* c : {orbit, pair}) {
    c->add_option("--p", cfg.p, "p")->required()->check(CLI::Range(1, 12));
    c->add_option("--q", cfg.q, "q")->required()->check(CLI::Range(1, 12));
    add_out(c);
  }
  pair->add_option("--lambda", cfg.lambda, "partition, e.g. 3,1")->required();
  auto* dim = sch->add_subcommand("dim", "dimension of the Schur functor S_lambda(C^n)");
  dim->add_option("--n", cfg.n, "n")->required()->check(CLI::Range(0, 64));
  dim->add_option("--lambda", cfg.lambda, "partition, e.g. 2,1")->required();
  add_out(dim);

  auto* repro = app.add_subcommand("repro", "replay a named computation with PASS/FAIL lines");
  repro->add_option("target", cfg.target, "target")->required()->check(CLI::IsMember(repro_targets()));
  add_out(repro);

  try {
    app.parse(argc, argv);
    cfg.search = !no_search;
    for (auto* c : {h1c, dec})
      if (c->parsed() && cfg.lattice_path.empty() && (cfg.n == 0 || cfg.group.empty()))
        throw UsageError(c->get_name() + " needs --lattice or both --n and --group");
    cfg.workers = workers_from(workers_flag);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (dump->parsed()) return cmd_picard_dump(cfg, out);
    if (h1c->parsed()) return cmd_h1(cfg, out);
    if (dec->parsed()) return cmd_decomp(cfg, out);
    if (run->parsed()) return cmd_survey_run(cfg, out);
    if (cenum->parsed()) return cmd_catalog_enum(cfg, out);
    if (cimp->parsed()) return cmd_catalog_import(cfg, out);
    if (orbit->parsed()) return cmd_schubert_orbit(cfg, out);
    if (pair->parsed()) return cmd_schubert_pair(cfg, out);
    if (dim->parsed()) return cmd_schubert_dim(cfg, out);
    if (repro->parsed()) return cmd_repro(cfg, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitDomain;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace m0n

#endif  // M0N_CLI_APP_HPP
