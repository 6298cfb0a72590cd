#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "m0n/cli/app.hpp"

using namespace m0n;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "m0n");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "m0n_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, PicardDumpMatchesLibrary) {
  auto r = run({"picard", "dump", "--n", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, to_json(build_picard(5).module).dump() + "\n");
  auto g = run({"picard", "dump", "--n", "6", "--group", "(1,2)(3,4)(5,6)", "--labels"});
  ASSERT_EQ(g.code, 0) << g.err;
  const auto j = nlohmann::json::parse(g.out);
  EXPECT_EQ(j.at("rank"), 16);
  EXPECT_EQ(j.at("labels").size(), 16u);
  EXPECT_EQ(j.at("labels").at(0), "H");
}

TEST(Cli, H1MatchesLibrary) {
  auto r = run({"h1", "--n", "6", "--group", "(1,2)(3,4)(5,6)"});
  ASSERT_EQ(r.code, 0) << r.err;
  const PicardModule pic = build_picard(6);
  const auto g = PermutationGroup::parse("(1,2)(3,4)(5,6)", 6);
  nlohmann::json expect;
  expect["h1_M"] = h1(lattice_for(pic, g)).to_string();
  expect["h1_Q"] = h1(restrict_module(build_NQ(pic).Q, g)).to_string();
  EXPECT_EQ(r.out, expect.dump() + "\n");
  EXPECT_EQ(nlohmann::json::parse(r.out).at("h1_Q"), "Z/2");
}

TEST(Cli, H1OfLatticeFileAndRoundTrip) {
  const GLattice m = rank_one_module(PermutationGroup::parse("(1,2); (3,4)", 4), true);
  const auto path = scratch("sign.json");
  std::ofstream(path, std::ios::binary) << serialize(m);
  auto r = run({"h1", "--lattice", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("h1"), h1(m).to_string());
  auto d = run({"picard", "dump", "--n", "5", "--out", scratch("pic5.json").string()});
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(serialize(deserialize_glattice(slurp(scratch("pic5.json")))) + "\n", slurp(scratch("pic5.json")));
}

TEST(Cli, DecompMatchesLibrary) {
  auto r = run({"decomp", "--n", "6", "--group", "(1,2)(3,4)(5,6)"});
  ASSERT_EQ(r.code, 0) << r.err;
  const PicardModule pic = build_picard(6);
  const auto rep = permutation_basis_search(lattice_for(pic, PermutationGroup::parse("(1,2)(3,4)(5,6)", 6)),
                                            distinguished_vectors(*pic.basis));
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("status"), to_string(rep.status));
  EXPECT_EQ(j.at("summary"), rep.summary());
  EXPECT_EQ(j.at("nodes"), rep.nodes);
}

TEST(Cli, SchubertMatchesLibrary) {
  EXPECT_EQ(run({"schubert", "pair", "--p", "2", "--q", "3", "--lambda", "3,1"}).out,
            klyachko_pairing(2, 3, {3, 1}).get_str() + "\n");
  EXPECT_EQ(run({"schubert", "dim", "--n", "4", "--lambda", "2,1"}).out, "20\n");
  auto r = run({"schubert", "orbit", "--p", "3", "--q", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto x = generic_orbit_class(3, 5);
  ASSERT_EQ(j.size(), x.terms().size());
  for (const auto& [lam, c] : x.terms()) EXPECT_EQ(j.at(lam.to_string()).get<long>(), c.get_si());
}

TEST(Cli, CatalogEnumAndImport) {
  auto r = run({"catalog", "enum", "--degree", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ostringstream lib;
  write_catalog(lib, subgroup_conjugacy_classes(5));
  EXPECT_EQ(r.out, lib.str());
  const auto path = scratch("cat5.txt");
  std::ofstream(path, std::ios::binary) << r.out;
  auto imp = run({"catalog", "import", "--file", path.string()});
  ASSERT_EQ(imp.code, 0) << imp.err;
  EXPECT_EQ(imp.out, r.out);
}

TEST(Cli, SurveyRunWritesJsonAndCsv) {
  const auto out = scratch("survey6.json");
  fs::remove(scratch("survey6.csv"));
  auto r = run({"--workers", "2", "survey", "run", "--n", "6", "--no-search", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  SurveyOptions opt;
  opt.run_search = false;
  opt.workers = 1;
  const auto s = classify(6, subgroup_conjugacy_classes(6), opt);
  EXPECT_EQ(slurp(out), survey_to_json(s).dump(1) + "\n");
  EXPECT_EQ(slurp(scratch("survey6.csv")), survey_to_csv(s));
}

TEST(Cli, SurveyRunWithImportedCatalog) {
  const auto path = scratch("cat6.txt");
  std::ofstream(path, std::ios::binary) << run({"catalog", "enum", "--degree", "6"}).out;
  auto r = run({"survey", "run", "--n", "6", "--no-search", "--catalog", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("meta").at("provenance"), "cyclic-extension");
  EXPECT_EQ(j.at("funnel").at("contains_Gprime"), 16);
}

TEST(Cli, ReproPrintsPassLines) {
  auto r = run({"repro", "section-split-odd"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS section identity n=5"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"picard", "dump"}).code, 2);
  EXPECT_EQ(run({"picard", "dump", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"h1", "--n", "6"}).code, 2);
  EXPECT_EQ(run({"repro", "nope"}).code, 2);
  EXPECT_EQ(run({"--workers", "0", "schubert", "dim", "--n", "3", "--lambda", "1"}).code, 2);
  EXPECT_EQ(run({"h1", "--n", "6", "--group", "(1,2"}).code, 1);
  EXPECT_EQ(run({"h1", "--n", "6", "--group", "(1,9)"}).code, 1);
  EXPECT_EQ(run({"schubert", "pair", "--p", "2", "--q", "2", "--lambda", "2,2"}).code, 1);
  EXPECT_EQ(run({"--element-cap", "10", "h1", "--n", "6", "--group", "(1,2,3,4,5,6);(1,2)"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, WorkersFallBackToEnvironment) {
  ::setenv(kWorkersEnv, "3", 1);
  EXPECT_EQ(cli_detail::workers_from(0), 3u);
  EXPECT_EQ(cli_detail::workers_from(5), 5u);
  ::setenv(kWorkersEnv, "many", 1);
  EXPECT_THROW(cli_detail::workers_from(0), cli_detail::UsageError);
  EXPECT_EQ(run({"schubert", "dim", "--n", "3", "--lambda", "1"}).code, 2);
  ::unsetenv(kWorkersEnv);
  EXPECT_GE(cli_detail::workers_from(0), 1u);
}
