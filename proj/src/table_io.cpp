#include "permstat/table_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "permstat/errors.hpp"

namespace permstat {

std::string table_to_json_string(const StatisticTable& t) {
  nlohmann::json levels = nlohmann::json::array();
  for (int n = 0; n <= t.max_length(); ++n) levels.push_back(t.level(n));
  // nlohmann orders object keys alphabetically, which keeps dumps stable.
  nlohmann::json doc{
      {"schema", "permstat/1"}, {"name", t.name()}, {"max_length", t.max_length()}, {"levels", levels}};
  return doc.dump() + "\n";
}

StatisticTable table_from_json_string(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != "permstat/1")
    throw SchemaError("missing or unsupported schema marker");
  for (const char* key : {"name", "max_length", "levels"})
    if (!doc.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
  if (!doc["name"].is_string() || !doc["max_length"].is_number_integer() || !doc["levels"].is_array())
    throw SchemaError("field has the wrong type");
  const int max_length = doc["max_length"].get<int>();
  if (max_length < 0 || max_length > 10) throw SchemaError("max_length out of range");
  const auto& levels_json = doc["levels"];
  if (static_cast<int>(levels_json.size()) != max_length + 1)
    throw SchemaError("expected " + std::to_string(max_length + 1) + " levels, got " +
                      std::to_string(levels_json.size()));
  std::vector<std::vector<int>> levels;
  for (int n = 0; n <= max_length; ++n) {
    const auto& lv = levels_json[static_cast<size_t>(n)];
    if (!lv.is_array() || static_cast<long long>(lv.size()) != factorial(n))
      throw SchemaError("level " + std::to_string(n) + " must list " + std::to_string(factorial(n)) +
                        " class indices");
    std::vector<int> labels;
    labels.reserve(lv.size());
    for (const auto& x : lv) {
      if (!x.is_number_integer() || x.get<long long>() < 0 ||
          x.get<long long>() >= static_cast<long long>(lv.size()))
        throw SchemaError("class index out of range at level " + std::to_string(n));
      labels.push_back(x.get<int>());
    }
    // Canonical labels are part of the format, not a convenience.
    std::vector<int> canon = labels;
    canonicalize_partition(canon);
    if (canon != labels) throw SchemaError("level " + std::to_string(n) + " labels are not canonical");
    levels.push_back(std::move(labels));
  }
  return StatisticTable::from_levels(doc["name"].get<std::string>(), std::move(levels));
}

void save_table(const StatisticTable& t, const std::string& path) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << table_to_json_string(t);
  if (!out) throw IoError("short write to '" + path + "'");
}

StatisticTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return table_from_json_string(text);
}

}  // namespace permstat
