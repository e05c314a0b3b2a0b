#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "permstat/errors.hpp"
#include "permstat/statistic.hpp"

using namespace permstat;

namespace {

Permutation P(const char* text) { return Permutation::parse(text); }

}  // namespace

TEST_CASE("raw evaluators") {
  const Permutation p = P("29546");
  CHECK(descent_set(p) == std::vector<int>{2, 3});
  CHECK(major_index(p) == 5);
  CHECK(peak_set(p) == std::vector<int>{2});
  CHECK(valley_set(p) == std::vector<int>{4});
  CHECK(inversion_count(p) == 4);
  CHECK(descent_set(Permutation{}).empty());
  CHECK(peak_set(P("1")).empty());
}

TEST_CASE("builtin Des classes") {
  const StatisticTable des = StatisticTable::builtin("Des", 5);
  const ClassId c = des.class_of(P("29546"));
  for (const Permutation& s : standard_permutations(5)) {
    if (descent_set(s) == std::vector<int>{2, 3})
      CHECK(des.class_of(s) == c);
    else
      CHECK(des.class_of(s) != c);
  }
  CHECK(des.num_classes(0) == 1);
  CHECK(des.num_classes(1) == 1);
  CHECK(des.num_classes(4) == 8);
}

TEST_CASE("builtin sPk") {
  const StatisticTable spk = StatisticTable::builtin("sPk", 5);
  CHECK(spk.class_of(P("1234")) == spk.class_of(P("3214")));
  CHECK(spk.class_of(P("1234")) != spk.class_of(P("2134")));  // position of 1 has odd vs even parity

  const StatisticTable pk = StatisticTable::builtin("Pk", 5);
  for (int n = 0; n <= 3; ++n) CHECK(spk.level(n) == pk.level(n));
  for (int n = 4; n <= 5; ++n) {
    CHECK(refines(spk, pk, n).refines);
    // Covering relation: exactly one class splits, into exactly two.
    CHECK(spk.num_classes(n) == pk.num_classes(n) + 1);
    std::set<std::pair<int, int>> pairs;
    for (size_t r = 0; r < spk.level(n).size(); ++r) pairs.insert({pk.level(n)[r], spk.level(n)[r]});
    CHECK(pairs.size() == static_cast<size_t>(spk.num_classes(n)));
  }
}

TEST_CASE("class_of") {
  const StatisticTable des = StatisticTable::builtin("Des", 3);
  CHECK(des.class_of(P("524")) == des.class_of(P("312")));
  const StatisticTable triv = StatisticTable::builtin("triv", 3);
  CHECK(triv.num_classes(3) == 1);
  CHECK(triv.class_of(P("123")) == triv.class_of(P("321")));
  const StatisticTable dis = StatisticTable::builtin("dis", 3);
  CHECK(dis.class_of(P("132")) != dis.class_of(P("231")));
  CHECK_THROWS_AS(des.class_of(P("1234")), LengthOutOfRange);
  CHECK_THROWS_AS(StatisticTable::builtin("nope", 3), UnknownStatistic);
}

TEST_CASE("representatives and members") {
  const StatisticTable des = StatisticTable::builtin("Des", 4);
  for (int n = 0; n <= 4; ++n) {
    for (int c = 0; c < des.num_classes(n); ++c) {
      const auto members = des.class_members(ClassId{n, c});
      CHECK(!members.empty());
      CHECK(des.representative(ClassId{n, c}) == members.front());
      for (const Permutation& m : members) CHECK(des.class_of(m) == ClassId{n, c});
    }
  }
}

TEST_CASE("refinement") {
  const auto dis = StatisticTable::builtin("dis", 4);
  const auto des = StatisticTable::builtin("Des", 4);
  const auto pk = StatisticTable::builtin("Pk", 4);
  const auto val = StatisticTable::builtin("Val", 4);
  const auto maj = StatisticTable::builtin("maj", 4);
  const auto inv = StatisticTable::builtin("inv", 4);
  const auto triv = StatisticTable::builtin("triv", 4);

  CHECK(refines(dis, des, 4).refines);
  CHECK(refines(des, pk, 4).refines);
  CHECK(refines(des, val, 4).refines);
  CHECK(refines(des, maj, 4).refines);
  CHECK(refines(des, triv, 4).refines);
  CHECK(refines(dis, inv, 4).refines);

  const auto not_descent = refines(des, inv, 3);
  CHECK_FALSE(not_descent.refines);
  CHECK(not_descent.witness.value() == std::make_pair(P("132"), P("231")));

  const auto inv_vs_des = refines(inv, des, 3);
  CHECK_FALSE(inv_vs_des.refines);
  CHECK(inv_vs_des.witness.value() == std::make_pair(P("132"), P("213")));
  // Witness re-checks: equivalent on the left, inequivalent on the right.
  const auto [w1, w2] = *inv_vs_des.witness;
  CHECK(inv.class_of(w1) == inv.class_of(w2));
  CHECK(des.class_of(w1) != des.class_of(w2));
}

TEST_CASE("equivalence at small lengths") {
  const char* names[] = {"Des", "maj", "Pk", "Val", "inv", "dis", "triv", "sPk"};
  std::vector<StatisticTable> tables;
  for (const char* n : names) tables.push_back(StatisticTable::builtin(n, 4));
  // At length <= 3 these coincide: maj with Des, sPk with Pk.
  CHECK(equivalent(tables[0], tables[1], 3));
  CHECK(equivalent(tables[2], tables[7], 3));
  // At length 4 all eight are pairwise inequivalent.
  for (size_t i = 0; i < tables.size(); ++i)
    for (size_t j = i + 1; j < tables.size(); ++j) CHECK_FALSE(equivalent(tables[i], tables[j], 4));
}

TEST_CASE("canonical labels are a fixed point") {
  for (const char* name : {"Des", "maj", "Pk", "Val", "inv", "dis", "triv", "sPk"}) {
    const StatisticTable t = StatisticTable::builtin(name, 5);
    for (int n = 0; n <= 5; ++n) {
      std::vector<int> labels = t.level(n);
      canonicalize_partition(labels);
      CHECK(labels == t.level(n));
    }
  }
}

TEST_CASE("lift") {
  const auto des = StatisticTable::builtin("Des", 4);
  const auto pk = StatisticTable::builtin("Pk", 4);
  const auto triv = StatisticTable::builtin("triv", 4);

  CHECK(lift_partition(des.level(2), 2, 1) == des.level(3));
  CHECK(lift_partition(triv.level(3), 3, 1) == triv.level(4));
  CHECK(lift_partition(pk.level(3), 3, 1) == pk.level(4));
  CHECK(lift_partition(des.level(2), 2, 0) == des.level(2));

  // Composition of lifts.
  for (int k = 0; k <= 2; ++k) {
    for (int l = 0; l + k <= 3; ++l) {
      const auto once = lift_partition(lift_partition(des.level(2), 2, l), 2 + l, k);
      CHECK(once == lift_partition(des.level(2), 2, k + l));
    }
  }

  // Refinement respects lifting: dis_3 refines Des_3, so every lift does too.
  const auto dis = StatisticTable::builtin("dis", 4);
  for (int k = 1; k <= 2; ++k) {
    const auto fine = lift_partition(dis.level(3), 3, k);
    const auto coarse = lift_partition(des.level(3), 3, k);
    std::vector<int> image(fine.size(), -1);
    bool ok = true;
    for (size_t r = 0; r < fine.size(); ++r) {
      const auto f = static_cast<size_t>(fine[r]);
      if (image[f] < 0)
        image[f] = coarse[r];
      else if (image[f] != coarse[r])
        ok = false;
    }
    CHECK(ok);
  }
}

TEST_CASE("from_levels validates shape") {
  CHECK_THROWS_AS(StatisticTable::from_levels("x", {}), SchemaError);
  CHECK_THROWS_AS(StatisticTable::from_levels("x", {{0}, {0}, {0}}), SchemaError);  // level 2 needs 2 entries
  const auto t = StatisticTable::from_levels("x", {{0}, {0}, {5, 9}});
  CHECK(t.level(2) == std::vector<int>{0, 1});  // canonicalized
}
