#pragma once

#include <string>

#include "permstat/statistic.hpp"

namespace permstat {

/// Serializes a table as versioned JSON:
///   {"levels":[[...],...],"max_length":N,"name":"...","schema":"permstat/1"}
/// with one inner array per level holding the class index of every standard
/// permutation in lex order. Output is deterministic; saving a loaded file
/// reproduces it byte for byte.
std::string table_to_json_string(const StatisticTable& t);

/// Inverse of table_to_json_string. Rejects malformed documents, missing or
/// wrongly sized levels, and non-canonical class labels with SchemaError.
StatisticTable table_from_json_string(const std::string& text);

void save_table(const StatisticTable& t, const std::string& path);  // IoError on failure
StatisticTable load_table(const std::string& path);

}  // namespace permstat
