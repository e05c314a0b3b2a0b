#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>

#include "permstat/errors.hpp"
#include "permstat/search.hpp"
#include "support/minisolve.hpp"

using namespace permstat;

namespace {

std::vector<std::vector<int>> partitions_of(const std::vector<LevelSolution>& sols) {
  std::vector<std::vector<int>> out;
  for (const auto& s : sols) out.push_back(s.partition);
  return out;
}

// Brute-force oracle for the level-3 search: every set partition of S_3,
// checked directly with the shuffle compatibility checker on the assembled
// table. Partitions are enumerated as restricted growth strings.
std::vector<std::vector<int>> level3_oracle() {
  const StatisticTable base = StatisticTable::builtin("triv", 2);
  std::vector<std::vector<int>> found;
  std::vector<int> labels(6, 0);
  long long visited = 0;
  auto rec = [&](auto&& self, size_t i, int maxl) -> void {
    if (i == labels.size()) {
      ++visited;
      const StatisticTable t = assemble(base, 3, labels, "candidate");
      if (check_shuffle_compatible(t, ShuffleMode::Strong, 3).holds) found.push_back(t.level(3));
      return;
    }
    for (int c = 0; c <= maxl + 1; ++c) {
      labels[i] = c;
      self(self, i + 1, std::max(maxl, c));
    }
  };
  rec(rec, 1, 0);
  REQUIRE(visited == 203);  // Bell(6)
  std::sort(found.begin(), found.end());
  return found;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("class count bound and size divisor") {
  CHECK(class_count_bound(2) == 2);
  CHECK(class_count_bound(3) == 3);
  CHECK(class_count_bound(4) == 2);
  CHECK(class_count_bound(5) == 5);
  CHECK(class_count_bound(6) == 1);
  CHECK(class_count_bound(8) == 2);
  CHECK(class_count_bound(9) == 3);
  CHECK(class_count_bound(12) == 1);
  CHECK(class_size_divisor(4) == 12);
  CHECK(class_size_divisor(5) == 24);
  CHECK_THROWS_AS(class_count_bound(1), LengthOutOfRange);
}

TEST_CASE("level 3 search over a trivial base") {
  SearchInstance inst{StatisticTable::builtin("triv", 2), 3, {}, false, {}};
  const auto sols = enumerate_level(inst);
  REQUIRE(sols.size() == 5);
  CHECK(std::is_sorted(sols.begin(), sols.end(), [](const LevelSolution& a, const LevelSolution& b) {
    return a.partition < b.partition;
  }));

  const std::vector<int> triv3{0, 0, 0, 0, 0, 0};
  const std::vector<int> pk3{0, 1, 0, 1, 0, 0};
  const std::vector<int> val3{0, 0, 1, 0, 1, 0};
  const std::vector<int> finest{0, 1, 2, 1, 2, 0};
  const std::vector<int> merged{0, 1, 1, 1, 1, 0};
  CHECK(partitions_of(sols) == std::vector<std::vector<int>>{triv3, val3, pk3, merged, finest});

  // The three forced identifications hold in every solution.
  for (const auto& s : sols) {
    CHECK(s.partition[lex_rank(Permutation::parse("312"))] == s.partition[lex_rank(Permutation::parse("213"))]);
    CHECK(s.partition[lex_rank(Permutation::parse("132"))] == s.partition[lex_rank(Permutation::parse("231"))]);
    CHECK(s.partition[lex_rank(Permutation::parse("123"))] == s.partition[lex_rank(Permutation::parse("321"))]);
  }

  // Matches the brute-force oracle over all 203 set partitions.
  const auto oracle = level3_oracle();
  CHECK(oracle == partitions_of(sols));
  for (const auto& p : oracle) {
    std::set<int> classes(p.begin(), p.end());
    CHECK(classes.size() <= 3);  // the number-theoretic bound, observed
  }

  // Closed under complementation.
  std::set<std::vector<int>> have(oracle.begin(), oracle.end());
  for (const auto& p : oracle) {
    std::vector<int> mapped(p.size());
    for (size_t r = 0; r < p.size(); ++r) {
      const Permutation q = complement(nth_permutation(3, static_cast<long long>(r)));
      mapped[r] = p[static_cast<size_t>(lex_rank(q))];
    }
    canonicalize_partition(mapped);
    CHECK(have.count(mapped) == 1);
  }

  // Every solution re-verifies on the assembled table.
  for (const auto& s : sols) {
    const auto t = assemble(inst.base, 3, s.partition, "sol");
    CHECK(check_shuffle_compatible(t, ShuffleMode::Strong, 3).holds);
  }
}

TEST_CASE("level 4 search over a trivial base") {
  SearchInstance inst{StatisticTable::builtin("triv", 3), 4, {}, false, {}};
  const auto result = enumerate_level(inst, SearchOptions{});
  CHECK(result.complete);
  REQUIRE(result.solutions.size() == 11);
  int nontrivial = 0;
  for (const auto& s : result.solutions) {
    if (!s.trivial()) ++nontrivial;
    for (int size : s.class_sizes) CHECK(size % class_size_divisor(4) == 0);
    const auto t = assemble(inst.base, 4, s.partition, "sol");
    CHECK(check_shuffle_compatible(t, ShuffleMode::Strong, 4).holds);
  }
  CHECK(nontrivial == 10);
}

TEST_CASE("viability filtering") {
  // Level 3: only the peak set, valley set, and trivial statistic survive
  // factor pair (2,2).
  SearchInstance inst3{StatisticTable::builtin("triv", 2), 3, {}, false, {}};
  const auto sols3 = enumerate_level(inst3);
  std::vector<std::vector<int>> viable;
  for (const auto& s : sols3) {
    const auto t = assemble(inst3.base, 3, s.partition, "sol");
    if (viability_check(t, {{2, 2}}).holds) viable.push_back(s.partition);
  }
  const std::vector<int> triv3{0, 0, 0, 0, 0, 0};
  const std::vector<int> pk3{0, 1, 0, 1, 0, 0};
  const std::vector<int> val3{0, 0, 1, 0, 1, 0};
  CHECK(viable == std::vector<std::vector<int>>{triv3, val3, pk3});

  // The failing ones produce genuine witnesses.
  for (const auto& s : sols3) {
    const auto t = assemble(inst3.base, 3, s.partition, "sol");
    const auto verdict = viability_check(t, {{2, 2}});
    if (!verdict.holds) {
      const Witness& w = verdict.witness.value();
      REQUIRE(w.perms.size() == 4);
      CHECK(w.multisets[0] != w.multisets[1]);
    }
  }

  // Level 4: the trivial solution alone survives factor pair (2,4).
  SearchInstance inst4{StatisticTable::builtin("triv", 3), 4, {}, false, {}};
  const auto sols4 = enumerate_level(inst4);
  int survivors = 0;
  for (const auto& s : sols4) {
    const auto t = assemble(inst4.base, 4, s.partition, "sol");
    if (viability_check(t, {{2, 4}}).holds) {
      ++survivors;
      CHECK(s.trivial());
    }
  }
  CHECK(survivors == 1);

  CHECK_THROWS_AS(viability_check(StatisticTable::builtin("Pk", 4), {{1, 2}}), LengthOutOfRange);
}

TEST_CASE("peak-set extension search") {
  SearchInstance inst{StatisticTable::builtin("Pk", 3), 4, 4, true, {}};
  const auto sols = enumerate_level(inst);
  REQUIRE(sols.size() == 2);
  const auto pk4 = StatisticTable::builtin("Pk", 4).level(4);
  const auto spk4 = StatisticTable::builtin("sPk", 4).level(4);
  CHECK(partitions_of(sols) == std::vector<std::vector<int>>{pk4, spk4});

  // The peak set extends upward; its one-step refinement does not survive
  // the (1,4) viability condition.
  const auto tpk = assemble(inst.base, 4, pk4, "Pk");
  const auto tspk = assemble(inst.base, 4, spk4, "sPk");
  CHECK(viability_check(tpk, {{1, 4}}).holds);
  CHECK_FALSE(viability_check(tspk, {{1, 4}}).holds);
}

TEST_CASE("descent maximality through refinement-restricted search") {
  for (int n = 3; n <= 4; ++n) {
    const auto des = StatisticTable::builtin("Des", n);
    SearchInstance inst{StatisticTable::builtin("Des", n - 1), n, static_cast<int>(factorial(n)), false,
                        des.level(n)};
    const auto sols = enumerate_level(inst);
    REQUIRE(sols.size() == 1);
    CHECK(sols.front().partition == des.level(n));
  }
}

TEST_CASE("bound cuts the level 6 search short") {
  SearchInstance inst{StatisticTable::builtin("triv", 5), 6, {}, false, {}};
  const auto result = enumerate_level(inst, SearchOptions{});
  CHECK(result.complete);
  REQUIRE(result.solutions.size() == 1);
  CHECK(result.solutions.front().trivial());
  CHECK(result.nodes == 0);  // decided by the bound, not by search
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(enumerate_level(SearchInstance{StatisticTable::builtin("triv", 2), 3, 0, false, {}}),
                  InfeasibleBound);
  CHECK_THROWS_AS(enumerate_level(SearchInstance{StatisticTable::builtin("triv", 2), 7, {}, false, {}}),
                  LengthOutOfRange);
  CHECK_THROWS_AS(enumerate_level(SearchInstance{StatisticTable::builtin("triv", 2), 4, {}, false, {}}),
                  LengthOutOfRange);  // base too short
  CHECK_THROWS_AS(enumerate_level(SearchInstance{StatisticTable::builtin("inv", 3), 4, {}, false, {}}),
                  IncompatibleStatistic);
  // maj agrees with Des through length 3, so its substring failure only
  // disqualifies it as a base one level later.
  CHECK_THROWS_AS(enumerate_level(SearchInstance{StatisticTable::builtin("maj", 4), 5, {}, true, {}}),
                  IncompatibleStatistic);
}

TEST_CASE("worker count does not change the outcome") {
  SearchInstance inst{StatisticTable::builtin("triv", 3), 4, 4, false, {}};
  const auto one = enumerate_level(inst, SearchOptions{});
  SearchOptions parallel;
  parallel.jobs = 4;
  const auto four = enumerate_level(inst, parallel);
  CHECK(one.solutions == four.solutions);
  CHECK(one.branches_total == four.branches_total);
}

TEST_CASE("checkpointed runs resume") {
  const std::string log = temp_path("permstat_test_solutions.log");
  const std::string ck = temp_path("permstat_test_checkpoint.json");
  std::filesystem::remove(log);
  std::filesystem::remove(ck);

  SearchInstance inst{StatisticTable::builtin("triv", 3), 4, {}, false, {}};
  const auto direct = enumerate_level(inst, SearchOptions{});

  SearchOptions chunked;
  chunked.checkpoint_path = ck;
  chunked.log_path = log;
  chunked.max_branches = 3;
  auto partial = enumerate_level(inst, chunked);
  CHECK_FALSE(partial.complete);
  CHECK(partial.branches_done == 3);

  SearchOptions rest;
  rest.checkpoint_path = ck;
  rest.log_path = log;
  const auto resumed = enumerate_level(inst, rest);
  CHECK(resumed.complete);
  CHECK(resumed.solutions == direct.solutions);

  // Running again over a complete checkpoint only replays the log.
  const auto again = enumerate_level(inst, rest);
  CHECK(again.complete);
  CHECK(again.solutions == direct.solutions);

  // A different instance refuses the stale checkpoint.
  SearchInstance other{StatisticTable::builtin("Pk", 3), 4, 4, true, {}};
  SearchOptions bad;
  bad.checkpoint_path = ck;
  bad.log_path = log;
  CHECK_THROWS_AS(enumerate_level(other, bad), SchemaError);

  CHECK_THROWS_AS(enumerate_level(inst, SearchOptions{1, ck, "", 0, false}), IoError);

  std::filesystem::remove(log);
  std::filesystem::remove(ck);
}

TEST_CASE("dimacs export matches the native counts") {
  const std::string path3 = temp_path("permstat_test_n3.cnf");
  SearchInstance inst3{StatisticTable::builtin("triv", 2), 3, 3, false, {}};
  const auto summary3 = export_dimacs(inst3, path3);
  CHECK(summary3.variables >= 18);  // 18 one-hot variables plus counters
  const auto cnf3 = minisolve::parse_dimacs(path3);
  CHECK(cnf3.variables == summary3.variables);
  CHECK(static_cast<long long>(cnf3.clauses.size()) == summary3.clauses);
  CHECK(minisolve::count_models(path3) == 5);

  const std::string path4 = temp_path("permstat_test_n4.cnf");
  SearchInstance inst4{StatisticTable::builtin("triv", 3), 4, {}, false, {}};
  export_dimacs(inst4, path4);
  CHECK(minisolve::count_models(path4) == 11);

  // Degenerate single-permutation instance.
  const std::string path1 = temp_path("permstat_test_n1.cnf");
  SearchInstance inst1{StatisticTable::builtin("triv", 0), 1, 1, false, {}};
  export_dimacs(inst1, path1);
  CHECK(minisolve::count_models(path1) == 1);

  std::filesystem::remove(path3);
  std::filesystem::remove(path4);
  std::filesystem::remove(path1);
}
