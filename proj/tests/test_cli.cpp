#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxgalaxy/cli.hpp"
#include "helpers.hpp"

using namespace coxgalaxy;
using namespace coxgalaxy::testutil;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_system(const std::string& name, const CoxeterMatrix& m) {
  auto path = std::filesystem::temp_directory_path() / ("coxcli_" + name + ".json");
  std::ofstream f(path);
  f << system_to_json(m).dump(2) << "\n";
  return path.string();
}

std::string write_text(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("coxcli_" + name + ".json");
  std::ofstream f(path);
  f << text;
  return path.string();
}

}  // namespace

TEST_CASE("classify subcommand") {
  std::string path = write_system("starlet12", starlet({1, 2}));
  CliRun r = run({"classify", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("rank: 3") != std::string::npos);
  CHECK(r.out.find("spherical: no") != std::string::npos);
  CHECK(r.out.find("order: infinite") != std::string::npos);
  CHECK(r.out.find("abelianization rank: 3") != std::string::npos);
  CHECK(r.out.find("u=2 d=0 p=2") != std::string::npos);

  std::string b3 = write_system("b3", type_b(3));
  CliRun s = run({"classify", b3});
  REQUIRE(s.code == 0);
  CHECK(s.out.find("spherical: yes") != std::string::npos);
  CHECK(s.out.find("order: 48") != std::string::npos);
  CHECK(s.out.find("B3") != std::string::npos);
}

TEST_CASE("moves subcommand") {
  std::string path = write_system("starlet12", starlet({1, 2}));
  CliRun r = run({"moves", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("pseudo-transpositions (2):") != std::string::npos);
  CHECK(r.out.find("blow-downs (0):") != std::string::npos);
  CHECK(r.out.find("twists (0):") != std::string::npos);
}

TEST_CASE("explore subcommand emits deterministic JSON") {
  std::string path = write_system("starlet12", starlet({1, 2}));
  CliRun r = run({"explore", path});
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("vertices").size() == 4);
  CHECK(j.at("edges").size() == 6);
  CHECK(j.at("truncated") == false);
  CHECK(j.at("root") == canonical_key(starlet({1, 2})));

  CliRun again = run({"explore", path});
  CHECK(again.out == r.out);

  CliRun core = run({"explore", path, "--core"});
  CHECK(nlohmann::json::parse(core.out).at("edges").size() == 5);

  CliRun sp = run({"explore", path, "--spine"});
  nlohmann::json js = nlohmann::json::parse(sp.out);
  CHECK(js.at("edges").size() == 3);
  CHECK(js.at("vertices").size() == 4);

  CliRun dot = run({"explore", path, "--format", "dot"});
  CHECK(dot.out.rfind("graph fragment {", 0) == 0);
  CHECK(dot.out.find("cluster_3") != std::string::npos);
}

TEST_CASE("explore budgets from flags and environment") {
  std::string path = write_system("starlet12", starlet({1, 2}));
  CliRun r = run({"explore", path, "--max-vertices", "1"});
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("truncated") == true);
  CHECK(j.at("vertices").size() == 1);

  setenv("COXGALAXY_BUDGET_VERTICES", "1", 1);
  CliRun env = run({"explore", path});
  unsetenv("COXGALAXY_BUDGET_VERTICES");
  CHECK(nlohmann::json::parse(env.out).at("truncated") == true);
}

TEST_CASE("iso subcommand outcomes and exit codes") {
  std::string a = write_system("i26", dihedral(6));
  std::string b = write_system("t322", triangle(3, 2, 2));
  CliRun r = run({"iso", a, b});
  CHECK(r.code == 0);
  CHECK(r.out.find("outcome: isomorphic") != std::string::npos);
  CHECK(r.out.find("path:") != std::string::npos);
  CHECK(r.out.find("blow-up") != std::string::npos);

  std::string c = write_system("starlet12", starlet({1, 2}));
  std::string d = write_system("starlet13", starlet({1, 3}));
  CliRun nr = run({"iso", c, d});
  CHECK(nr.code == 0);
  CHECK(nr.out.find("outcome: not isomorphic") != std::string::npos);

  std::string e = write_system("blown12", from_upper(4, {3, 0, 2, 10, 2, 0}));
  std::string f = write_system("cousin", from_upper(4, {3, 0, 2, 10, 2, 2}));
  CliRun unk = run({"iso", e, f, "--max-vertices", "1"});
  CHECK(unk.code == 2);
  CHECK(unk.out.find("outcome: unknown") != std::string::npos);
}

TEST_CASE("starlet subcommand") {
  CliRun r = run({"starlet", "2", "1"});
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("generators").size() == 3);
  CHECK(j.at("matrix")[0][1] == 10);
  CHECK(j.at("matrix")[0][2] == 6);
  CHECK(j.at("matrix")[1][2] == 0);

  CliRun dot = run({"starlet", "1", "--format", "dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("graph system {", 0) == 0);

  CliRun dup = run({"starlet", "1", "1"});
  CHECK(dup.code == 1);
  CHECK(dup.err.find("error:") != std::string::npos);
}

TEST_CASE("verify subcommand on a blow-up") {
  std::string sys = write_system("b3", type_b(3));
  std::string mv = write_text("b3move", R"({"kind":"blow-up","t":"s0","j":["s0","s1","s2"]})");
  CliRun r = run({"verify", sys, mv});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("generation: ok") != std::string::npos);
  CHECK(r.out.find("result: ok") != std::string::npos);
  CHECK(r.out.find("FAILED") == std::string::npos);

  CliRun capped = run({"verify", sys, mv, "--cap", "10"});
  CHECK(capped.code == 2);
  CHECK(capped.out.find("result: inconclusive") != std::string::npos);

  std::string bad = write_text("badmove", R"({"kind":"blow-up","t":"s2","j":["s1","s2"]})");
  CliRun wrong = run({"verify", sys, bad});
  CHECK(wrong.code == 1);
  CHECK(wrong.err.find("error:") != std::string::npos);
}

TEST_CASE("verify subcommand on a twist") {
  std::string sys = write_system("a3", type_a(3));
  std::string mv = write_text("a3twist", R"({"kind":"twist","j":["s0","s1"],"a":[],"b":["s2"]})");
  CliRun r = run({"verify", sys, mv});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("generation: ok") != std::string::npos);
  CHECK(r.out.find("result: ok") != std::string::npos);
}

TEST_CASE("malformed input is an error, not a crash") {
  std::string broken = write_text("broken", "{not json");
  CliRun r = run({"classify", broken});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(r.err.find("invalid JSON") != std::string::npos);

  CliRun missing = run({"classify", "/nonexistent/system.json"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  std::string asym = write_text("asym", R"({"matrix":[[1,3],[4,1]]})");
  CliRun bad = run({"classify", asym});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("error:") != std::string::npos);

  CliRun nosub = run({});
  CHECK(nosub.code == 1);
}
