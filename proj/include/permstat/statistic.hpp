#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permstat/permutation.hpp"

namespace permstat {

/// Canonical name of an equivalence class inside one length level.
struct ClassId {
  int level = 0;
  int index = 0;
  bool operator==(const ClassId&) const = default;
  auto operator<=>(const ClassId&) const = default;
};

/// Renumbers labels by first occurrence (labels scanned left to right);
/// returns the number of classes. This is the canonical form used
/// everywhere a partition of S_n is stored.
int canonicalize_partition(std::vector<int>& labels);

/// A permutation statistic materialized as one partition of S_n per length
/// n = 0..max_length. Level n is stored as a vector indexed by the
/// lexicographic rank of each standard permutation, holding canonical class
/// indices (numbered by first occurrence along the lex traversal).
class StatisticTable {
 public:
  StatisticTable();  // the empty statistic: max_length 0, single class

  /// Built-in statistics: Des, maj, Pk, Val, inv, dis, triv, sPk.
  /// sPk splits the empty-peak-set class by the parity of the position of
  /// the smallest letter; it is defined on lengths >= 4, and levels <= 3
  /// carry Pk's partition. Throws UnknownStatistic for other names.
  static StatisticTable builtin(const std::string& name, int max_length);

  /// Builds a table from explicit level partitions (levels[n] has n!
  /// entries, lex order); labels are re-canonicalized.
  static StatisticTable from_levels(std::string name, std::vector<std::vector<int>> levels);

  const std::string& name() const { return name_; }
  int max_length() const { return max_length_; }

  int num_classes(int level) const;
  const std::vector<int>& level(int n) const;

  /// Class of standardize(p) at level |p|; throws LengthOutOfRange when
  /// |p| > max_length.
  ClassId class_of(const Permutation& p) const;
  int class_index(int level, int rank) const;

  /// Lexicographically first member of a class.
  Permutation representative(ClassId c) const;
  std::vector<Permutation> class_members(ClassId c) const;

  /// True when every level in 2..n has a single class.
  bool trivial_through(int n) const;

  bool operator==(const StatisticTable&) const = default;

 private:
  std::string name_;
  int max_length_ = 0;
  std::vector<std::vector<int>> levels_;  // levels_[n][lex rank] = class index
  std::vector<int> class_counts_;
  std::vector<std::vector<int>> first_member_;  // per level, per class: lex rank

  void index_members();
};

struct RefinesResult {
  bool refines = true;
  /// On failure: a pair equivalent under s but inequivalent under t.
  std::optional<std::pair<Permutation, Permutation>> witness;
};

/// Whether every level partition of s up to `upto` refines that of t.
RefinesResult refines(const StatisticTable& s, const StatisticTable& t, int upto);

/// Mutual refinement up to `upto`.
bool equivalent(const StatisticTable& s, const StatisticTable& t, int upto);

/// The k-lift of a level-n partition: permutations of length n+k share a
/// class iff their k+1 windows of length n are classwise equal. Output is
/// a canonical partition of S_{n+k}.
std::vector<int> lift_partition(const std::vector<int>& level, int n, int k);

}  // namespace permstat
