#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permstat/compat.hpp"
#include "permstat/statistic.hpp"

namespace permstat {

/// One level-extension search problem: find every partition of S_level such
/// that the base statistic extended by that partition stays strongly
/// shuffle-compatible through `level`.
struct SearchInstance {
  StatisticTable base;            // partitions up to at least level-1
  int level = 0;                  // the level being extended
  /// Class budget. Unset selects the default: the number-theoretic bound
  /// over a trivial base, otherwise the class count of lift(base_{level-1}).
  /// Values below 1 raise InfeasibleBound.
  std::optional<int> max_classes;
  bool require_substring = false; // additionally refine lift(base_{level-1})
  /// Optional extra partition of S_level the solutions must refine.
  std::optional<std::vector<int>> must_refine;
};

struct LevelSolution {
  std::vector<int> partition;     // canonical labels over lex-ordered S_n
  std::vector<int> class_sizes;   // ascending

  bool trivial() const { return class_sizes.size() <= 1; }
  bool operator==(const LevelSolution&) const = default;
};

struct SearchOptions {
  int jobs = 1;
  std::string checkpoint_path;    // resumable progress marker (optional)
  std::string log_path;           // append-only solution log (optional)
  long long max_branches = 0;     // stop after this many subtree branches (0 = all)
  bool verbose = false;           // progress on stderr
};

struct EnumerateResult {
  std::vector<LevelSolution> solutions;
  bool complete = true;
  long long branches_done = 0;
  long long branches_total = 0;
  long long nodes = 0;            // search tree size, for diagnostics
};

long long binomial(int n, int k);

/// gcd of binomial(n,1..n-1): p when n is a power of the prime p, else 1.
/// Bounds the number of classes any weakly shuffle-compatible extension of a
/// trivial base can have at level n.
int class_count_bound(int n);

/// n! / class_count_bound(n); divides every class size over a trivial base.
long long class_size_divisor(int n);

/// Exhaustive backtracking enumeration. Solutions come back sorted by
/// partition and de-duplicated. Levels above 6 are rejected.
EnumerateResult enumerate_level(const SearchInstance& inst, const SearchOptions& opts);
std::vector<LevelSolution> enumerate_level(const SearchInstance& inst);

/// Base levels 0..level-1 plus the given level partition, as one table.
StatisticTable assemble(const StatisticTable& base, int level, const std::vector<int>& partition,
                        std::string name);

/// Necessary condition for a level-n statistic to extend upward: for factor
/// lengths (a,b) with a+b > n, the shuffle sets of equivalent factor pairs
/// must be equivalent under lift^{a+b-n} of level n.
CompatVerdict viability_check(const StatisticTable& table, const std::vector<std::pair<int, int>>& factor_lengths);

struct DimacsSummary {
  long long variables = 0;
  long long clauses = 0;
};

/// Writes the search instance as DIMACS CNF: one-hot class variables per
/// permutation, sequential-counter equal-count constraints per shuffle-set
/// group, and value-precedence symmetry breaking over the lex order. All
/// auxiliary variables are biconditionally defined, so satisfying models
/// correspond one-to-one with canonical partitions.
DimacsSummary export_dimacs(const SearchInstance& inst, const std::string& path);

}  // namespace permstat
