#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permstat/permutation.hpp"
#include "permstat/statistic.hpp"

namespace permstat {

enum class ShuffleMode { Strong, Weak };

std::string to_string(ShuffleMode mode);

/// Counterexample attached to a failed check. The fields used depend on the
/// kind of check; `perms` always contains enough data to re-verify the
/// violation independently.
struct Witness {
  std::string kind;                          // "shuffle", "substring", "bialgebra", ...
  std::vector<Permutation> perms;            // shuffle: {p1,q1,p2,q2}; substring: {a,b}
  std::vector<std::vector<int>> multisets;   // the two differing class multisets, sorted
  std::vector<int> windows;                  // substring: {i,j} of a differing window
};

struct CompatVerdict {
  bool holds = true;
  std::optional<Witness> witness;
};

/// Checks that the class multiset over a shuffle set depends only on the
/// factor classes and lengths, for every total length <= upto. Strong mode
/// ranges over every split of the letters [m+n] between the factors; weak
/// mode only over the prefix/suffix split (all letters of the first factor
/// below all letters of the second). Violations are searched in increasing
/// total length, longer first factor first, then lexicographically; the
/// first one found is returned.
CompatVerdict check_shuffle_compatible(const StatisticTable& t, ShuffleMode mode, int upto);

/// Checks that level n+1 refines the 1-lift of level n for every
/// n < max_length. The witness is a pair equivalent at level n+1 with an
/// inequivalent pair of corresponding windows.
CompatVerdict check_substring_compatible(const StatisticTable& t);

/// Partition of S_n under the equivalence closure of base-valid [a,b]-moves:
/// a single move rearranges the letters with values in [a,b] within their
/// positions, and is valid when the rearranged subsequence stays in the same
/// base class after standardization. Requires base.max_length >= n and a
/// substring-compatible base.
std::vector<int> ab_move_closure(const StatisticTable& base, int n);

struct StandardTableau {
  std::vector<std::vector<int>> rows;
  bool operator==(const StandardTableau&) const = default;
};

/// Recording tableau of row-insertion RSK; input must be standard.
StandardTableau rsk_recording(const Permutation& p);

/// Whether letters k and k+1 of a standard permutation can be exchanged by a
/// single dual Knuth move (letter k-1 or k+2 sits between them).
bool dual_knuth_move_valid(const Permutation& p, int k);

/// Table whose level-n classes are the dual-Knuth-connected components of
/// S_n. Levels are capped at 7.
StatisticTable dual_knuth_table(int max_length);

}  // namespace permstat
