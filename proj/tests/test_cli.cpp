#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "permstat/table_io.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("PERMSTAT_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "PERMSTAT_CLI must point at the permstat binary");
  const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string tmp_dir() {
  const char* dir = std::getenv("PERMSTAT_TMP");
  return dir ? dir : std::filesystem::temp_directory_path().string();
}

}  // namespace

TEST_CASE("stat eval") {
  const auto r = run_cli("stat eval --perm 29546");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["schema"] == "permstat/1");
  CHECK(doc["values"]["Des"] == json::array({2, 3}));
  CHECK(doc["values"]["maj"] == 5);
  CHECK(doc["values"]["Pk"] == json::array({2}));
  CHECK(doc["values"]["Val"] == json::array({4}));
  CHECK(doc["values"]["inv"] == 4);
}

TEST_CASE("check shuffle exit codes and witness") {
  const auto bad = run_cli("check shuffle --stat inv --mode strong --upto 3");
  CHECK(bad.exit_code == 1);
  const json doc = json::parse(bad.out);
  CHECK(doc["holds"] == false);
  CHECK(doc["witness"]["pair1"] == json::array({"1,2", "3"}));
  CHECK(doc["witness"]["pair2"] == json::array({"1,3", "2"}));
  CHECK(doc["witness"]["multisets"] == json::array({{0, 1, 2}, {0, 1, 1}}));

  const auto good = run_cli("check shuffle --stat Des --mode strong --upto 5");
  CHECK(good.exit_code == 0);
  CHECK(json::parse(good.out)["holds"] == true);

  const auto weak = run_cli("check shuffle --stat inv --mode weak --upto 6");
  CHECK(weak.exit_code == 0);
}

TEST_CASE("check substring witness") {
  const auto r = run_cli("check substring --stat maj --upto 4");
  CHECK(r.exit_code == 1);
  const json doc = json::parse(r.out);
  CHECK(doc["witness"]["perms"] == json::array({"3,2,1,4", "2,3,4,1"}));
}

TEST_CASE("algebra verbs") {
  const auto prod = run_cli("algebra product --stat Des --a 12 --b 1");
  CHECK(prod.exit_code == 0);
  const json pdoc = json::parse(prod.out);
  CHECK(pdoc["op"] == "product");
  CHECK(pdoc["terms"] == json{{"(3,0)", 1}, {"(3,1)", 1}, {"(3,2)", 1}});

  const auto anti = run_cli("algebra antipode --stat Des --a 12");
  CHECK(json::parse(anti.out)["terms"] == json{{"(2,1)", 1}});

  const auto cop = run_cli("algebra coproduct --stat Des --a 132");
  const json cdoc = json::parse(cop.out);
  CHECK(cdoc["terms"] == json{{"(0,0)x(3,1)", 1}, {"(1,0)x(2,1)", 1}, {"(2,0)x(1,0)", 1}, {"(3,1)x(0,0)", 1}});

  const auto rejected = run_cli("algebra bialgebra --stat maj --upto 4");
  CHECK(rejected.exit_code == 1);
  CHECK(json::parse(rejected.out)["error"] == "IncompatibleStatistic");

  const auto quo = run_cli("algebra quotient --fine Des --coarse Pk --upto 4");
  CHECK(quo.exit_code == 0);
}

TEST_CASE("qsym verbs") {
  const auto expand = run_cli("qsym expand --alpha 2 --vars 2");
  const json doc = json::parse(expand.out);
  CHECK(doc["terms"] == json{{"0,2", 1}, {"1,1", 1}, {"2,0", 1}});
  const auto verify = run_cli("qsym verify --upto 3");
  CHECK(verify.exit_code == 0);
}

TEST_CASE("search verbs") {
  const auto bound = run_cli("search bound --n 9");
  const json bdoc = json::parse(bound.out);
  CHECK(bdoc["bound"] == 3);

  const auto filter = run_cli("search filter --n 3 --factors 2,2");
  const json fdoc = json::parse(filter.out);
  CHECK(fdoc["solutions"] == 5);
  CHECK(fdoc["nontrivial"] == 4);
  CHECK(fdoc["viable"] == 3);
  CHECK(fdoc["survivors"] == json::array({"triv", "Val", "Pk"}));

  const std::string cnf = tmp_dir() + "/cli_n3.cnf";
  const auto dimacs = run_cli("search dimacs --n 3 --max-classes 3 --out " + cnf);
  CHECK(dimacs.exit_code == 0);
  CHECK(std::filesystem::exists(cnf));
  std::filesystem::remove(cnf);
}

TEST_CASE("table persistence through the CLI") {
  const std::string path = tmp_dir() + "/cli_des4.json";
  const auto build = run_cli("stat build --stat Des --max-length 4 --out " + path);
  CHECK(build.exit_code == 0);
  const auto loaded = permstat::load_table(path);
  CHECK(loaded == permstat::StatisticTable::builtin("Des", 4));

  const auto reused = run_cli("check substring --table " + path + " --upto 4");
  CHECK(reused.exit_code == 0);

  // Corrupt the labels: loading must fail as a usage error.
  std::ofstream(path) << R"({"schema":"permstat/1","name":"x","max_length":2,"levels":[[0],[0],[1,0]]})";
  const auto corrupt = run_cli("check substring --table " + path + " --upto 2");
  CHECK(corrupt.exit_code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("reproduce recipes are byte identical") {
  const auto a = run_cli("reproduce lemma-n3");
  const auto b = run_cli("reproduce lemma-n3");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  CHECK(doc["solutions"] == 5);
  CHECK(doc["forced_pairs_hold"] == true);
  CHECK(doc["viable"] == json::array({"triv", "Val", "Pk"}));

  const auto pk1 = run_cli("reproduce pk-case");
  const auto pk2 = run_cli("reproduce pk-case");
  CHECK(pk1.out == pk2.out);
  const json pk = json::parse(pk1.out);
  CHECK(pk["identified"] == json::array({"Pk", "sPk"}));
  CHECK(pk["viable"]["Pk"] == true);
  CHECK(pk["viable"]["sPk"] == false);

  const auto t1 = run_cli("reproduce theorem-progress --upto 4");
  const auto t2 = run_cli("reproduce theorem-progress --upto 4");
  CHECK(t1.out == t2.out);
  const json tp = json::parse(t1.out);
  CHECK(tp["levels"]["3"]["solutions"] == 5);
  CHECK(tp["levels"]["4"]["solutions"] == 11);
  CHECK(tp["levels"]["4"]["viable"] == 1);
  CHECK(tp["n6_bound"] == 1);
}

TEST_CASE("usage errors") {
  CHECK(run_cli("definitely-not-a-verb").exit_code == 2);
  CHECK(run_cli("stat eval").exit_code == 2);                       // missing --perm
  CHECK(run_cli("check shuffle --upto 3").exit_code == 2);          // missing statistic
  CHECK(run_cli("stat eval --perm 1,1").exit_code == 2);            // bad permutation
  CHECK(run_cli("check shuffle --stat nope --upto 3").exit_code == 2);
  CHECK(run_cli("search enumerate --n 3 --max-classes -1").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
