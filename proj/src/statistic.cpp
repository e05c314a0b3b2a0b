#include "permstat/statistic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>

#include "permstat/errors.hpp"

namespace permstat {

namespace {

// Lex ranks of the standardized length-n windows of every permutation in
// S_{n+k}. The geometry is fixed per (n, k); lifting only varies the level
// partition, so this table is computed once and shared.
const std::vector<std::vector<int>>& window_rank_table(int n, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({n, k});
  if (it != cache.end()) return it->second;
  std::vector<std::vector<int>> table;
  table.reserve(static_cast<size_t>(factorial(n + k)));
  for (const Permutation& p : standard_permutations(n + k)) {
    std::vector<int> ranks;
    ranks.reserve(static_cast<size_t>(k) + 1);
    for (int i = 1; i <= k + 1; ++i)
      ranks.push_back(lex_rank(standardize(window(p, i, i + n - 1)).letters()));
    table.push_back(std::move(ranks));
  }
  return cache.emplace(std::make_pair(n, k), std::move(table)).first->second;
}

}  // namespace

int canonicalize_partition(std::vector<int>& labels) {
  std::unordered_map<int, int> relabel;
  int next = 0;
  for (int& x : labels) {
    auto [it, fresh] = relabel.emplace(x, next);
    if (fresh) ++next;
    x = it->second;
  }
  return next;
}

StatisticTable::StatisticTable() : name_("triv"), max_length_(0), levels_{{0}}, class_counts_{1} {
  index_members();
}

void StatisticTable::index_members() {
  first_member_.assign(levels_.size(), {});
  for (size_t n = 0; n < levels_.size(); ++n) {
    first_member_[n].assign(static_cast<size_t>(class_counts_[n]), -1);
    for (size_t r = 0; r < levels_[n].size(); ++r) {
      int c = levels_[n][r];
      if (first_member_[n][static_cast<size_t>(c)] < 0)
        first_member_[n][static_cast<size_t>(c)] = static_cast<int>(r);
    }
  }
}

StatisticTable StatisticTable::from_levels(std::string name, std::vector<std::vector<int>> levels) {
  if (levels.empty()) throw SchemaError("a statistic table needs at least level 0");
  StatisticTable t;
  t.name_ = std::move(name);
  t.max_length_ = static_cast<int>(levels.size()) - 1;
  t.levels_ = std::move(levels);
  t.class_counts_.clear();
  for (size_t n = 0; n < t.levels_.size(); ++n) {
    if (t.levels_[n].size() != static_cast<size_t>(factorial(static_cast<int>(n))))
      throw SchemaError("level " + std::to_string(n) + " must have " +
                        std::to_string(factorial(static_cast<int>(n))) + " entries");
    t.class_counts_.push_back(canonicalize_partition(t.levels_[n]));
  }
  t.index_members();
  return t;
}

namespace {

// Encodes the value of one builtin statistic on a standard permutation as a
// comparable key. Only equality of keys within a level matters.
long long builtin_key(const std::string& name, const Permutation& p, int rank) {
  const int n = p.length();
  if (name == "triv") return 0;
  if (name == "dis") return rank;
  if (name == "maj") return major_index(p);
  if (name == "inv") return inversion_count(p);
  auto mask = [](const std::vector<int>& set) {
    long long m = 0;
    for (int i : set) m |= (1LL << i);
    return m;
  };
  if (name == "Des") return mask(descent_set(p));
  if (name == "Pk") return mask(peak_set(p));
  if (name == "Val") return mask(valley_set(p));
  if (name == "sPk") {
    const long long pk = mask(peak_set(p));
    if (n < 4 || pk != 0) return pk;
    int pos1 = 0;
    for (int i = 0; i < n; ++i)
      if (p.letters()[static_cast<size_t>(i)] == 1) pos1 = i + 1;
    // Distinct from every peak-set mask: bit 0 is never a peak position.
    return 1 + (pos1 % 2);
  }
  throw UnknownStatistic("unknown statistic '" + name + "'");
}

}  // namespace

StatisticTable StatisticTable::builtin(const std::string& name, int max_length) {
  if (max_length < 0) throw LengthOutOfRange("max_length must be nonnegative");
  builtin_key(name, Permutation{}, 0);  // validates the name
  std::vector<std::vector<int>> levels;
  for (int n = 0; n <= max_length; ++n) {
    std::vector<int> labels;
    labels.reserve(static_cast<size_t>(factorial(n)));
    std::map<long long, int> seen;
    int rank = 0;
    for (const Permutation& p : standard_permutations(n)) {
      long long key = builtin_key(name, p, rank++);
      auto [it, fresh] = seen.emplace(key, static_cast<int>(seen.size()));
      labels.push_back(it->second);
    }
    canonicalize_partition(labels);  // first-occurrence order, already canonical for map inserts
    levels.push_back(std::move(labels));
  }
  return from_levels(name, std::move(levels));
}

int StatisticTable::num_classes(int level) const {
  if (level < 0 || level > max_length_) throw LengthOutOfRange("no level " + std::to_string(level));
  return class_counts_[static_cast<size_t>(level)];
}

const std::vector<int>& StatisticTable::level(int n) const {
  if (n < 0 || n > max_length_) throw LengthOutOfRange("no level " + std::to_string(n));
  return levels_[static_cast<size_t>(n)];
}

ClassId StatisticTable::class_of(const Permutation& p) const {
  const int n = p.length();
  if (n > max_length_)
    throw LengthOutOfRange("permutation of length " + std::to_string(n) + " exceeds table max length " +
                           std::to_string(max_length_));
  const int rank = lex_rank(standardize(p));
  return ClassId{n, levels_[static_cast<size_t>(n)][static_cast<size_t>(rank)]};
}

int StatisticTable::class_index(int level, int rank) const {
  return this->level(level)[static_cast<size_t>(rank)];
}

Permutation StatisticTable::representative(ClassId c) const {
  if (c.level < 0 || c.level > max_length_ || c.index < 0 || c.index >= num_classes(c.level))
    throw LengthOutOfRange("no class (" + std::to_string(c.level) + "," + std::to_string(c.index) + ")");
  return nth_permutation(c.level, first_member_[static_cast<size_t>(c.level)][static_cast<size_t>(c.index)]);
}

std::vector<Permutation> StatisticTable::class_members(ClassId c) const {
  const auto& lv = level(c.level);
  std::vector<Permutation> out;
  for (size_t r = 0; r < lv.size(); ++r)
    if (lv[r] == c.index) out.push_back(nth_permutation(c.level, static_cast<long long>(r)));
  return out;
}

bool StatisticTable::trivial_through(int n) const {
  for (int k = 2; k <= std::min(n, max_length_); ++k)
    if (class_counts_[static_cast<size_t>(k)] != 1) return false;
  return true;
}

RefinesResult refines(const StatisticTable& s, const StatisticTable& t, int upto) {
  if (upto > s.max_length() || upto > t.max_length())
    throw LengthOutOfRange("refinement check up to " + std::to_string(upto) + " exceeds a table's max length");
  for (int n = 0; n <= upto; ++n) {
    const auto& sl = s.level(n);
    const auto& tl = t.level(n);
    std::vector<int> image(static_cast<size_t>(s.num_classes(n)), -1);
    std::vector<int> first(static_cast<size_t>(s.num_classes(n)), -1);
    for (size_t r = 0; r < sl.size(); ++r) {
      const auto sc = static_cast<size_t>(sl[r]);
      if (image[sc] < 0) {
        image[sc] = tl[r];
        first[sc] = static_cast<int>(r);
      } else if (image[sc] != tl[r]) {
        return RefinesResult{false,
                             std::make_pair(nth_permutation(n, first[sc]), nth_permutation(n, static_cast<long long>(r)))};
      }
    }
  }
  return RefinesResult{};
}

bool equivalent(const StatisticTable& s, const StatisticTable& t, int upto) {
  return refines(s, t, upto).refines && refines(t, s, upto).refines;
}

std::vector<int> lift_partition(const std::vector<int>& level, int n, int k) {
  if (k < 0) throw LengthOutOfRange("lift exponent must be nonnegative");
  if (level.size() != static_cast<size_t>(factorial(n)))
    throw LengthOutOfRange("level partition has wrong size for S_" + std::to_string(n));
  const auto& table = window_rank_table(n, k);
  std::vector<int> labels;
  labels.reserve(table.size());
  std::map<std::vector<int>, int> seen;
  std::vector<int> key(static_cast<size_t>(k) + 1);
  for (const auto& window_ranks : table) {
    for (size_t i = 0; i < key.size(); ++i) key[i] = level[static_cast<size_t>(window_ranks[i])];
    auto [it, fresh] = seen.emplace(key, static_cast<int>(seen.size()));
    labels.push_back(it->second);
  }
  return labels;
}

}  // namespace permstat
