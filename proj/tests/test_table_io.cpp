#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "permstat/errors.hpp"
#include "permstat/table_io.hpp"

using namespace permstat;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("round trip is byte identical") {
  const auto des = StatisticTable::builtin("Des", 5);
  const std::string text = table_to_json_string(des);
  const StatisticTable loaded = table_from_json_string(text);
  CHECK(loaded == des);
  CHECK(table_to_json_string(loaded) == text);

  const std::string path = temp_path("permstat_test_des5.json");
  save_table(des, path);
  CHECK(load_table(path) == des);
  std::filesystem::remove(path);
}

TEST_CASE("schema violations") {
  CHECK_THROWS_AS(table_from_json_string("not json"), SchemaError);
  CHECK_THROWS_AS(table_from_json_string("{}"), SchemaError);
  CHECK_THROWS_AS(table_from_json_string(R"({"schema":"other/1","name":"x","max_length":0,"levels":[[0]]})"),
                  SchemaError);
  // Missing a level.
  CHECK_THROWS_AS(
      table_from_json_string(R"({"schema":"permstat/1","name":"x","max_length":2,"levels":[[0],[0]]})"),
      SchemaError);
  // Wrong level size.
  CHECK_THROWS_AS(
      table_from_json_string(R"({"schema":"permstat/1","name":"x","max_length":2,"levels":[[0],[0],[0]]})"),
      SchemaError);
  // Labels must be canonical: first occurrences increase from zero.
  CHECK_THROWS_AS(
      table_from_json_string(R"({"schema":"permstat/1","name":"x","max_length":2,"levels":[[0],[0],[1,0]]})"),
      SchemaError);
  CHECK_NOTHROW(
      table_from_json_string(R"({"schema":"permstat/1","name":"x","max_length":2,"levels":[[0],[0],[0,1]]})"));
  // Out-of-range class index.
  CHECK_THROWS_AS(
      table_from_json_string(R"({"schema":"permstat/1","name":"x","max_length":2,"levels":[[0],[0],[0,7]]})"),
      SchemaError);
}

TEST_CASE("io errors") {
  CHECK_THROWS_AS(save_table(StatisticTable::builtin("triv", 2), "/nonexistent-dir/t.json"), IoError);
  CHECK_THROWS_AS(load_table("/nonexistent-dir/t.json"), IoError);
}
