#include "permstat/compat.hpp"

#include <algorithm>
#include <numeric>

#include "permstat/errors.hpp"

namespace permstat {

std::string to_string(ShuffleMode mode) { return mode == ShuffleMode::Strong ? "strong" : "weak"; }

namespace {

// Members of every class at one level, as lex ranks.
std::vector<std::vector<int>> members_by_class(const StatisticTable& t, int level) {
  std::vector<std::vector<int>> out(static_cast<size_t>(t.num_classes(level)));
  const auto& lv = t.level(level);
  for (size_t r = 0; r < lv.size(); ++r) out[static_cast<size_t>(lv[r])].push_back(static_cast<int>(r));
  return out;
}

// Order-preserving embedding of a standard pattern into a letter set.
Permutation embed(const Permutation& pattern, const std::vector<int>& letters) {
  std::vector<int> out(pattern.letters().size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = letters[static_cast<size_t>(pattern.letters()[i]) - 1];
  return Permutation::from_distinct(std::move(out));
}

// All m-subsets of {1..total} in lexicographic order.
std::vector<std::vector<int>> subsets(int total, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == m) {
      out.push_back(cur);
      return;
    }
    for (int x = start; x <= total - (m - static_cast<int>(cur.size())) + 1; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

std::vector<int> set_complement(const std::vector<int>& a, int total) {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(total) - a.size());
  size_t i = 0;
  for (int x = 1; x <= total; ++x) {
    if (i < a.size() && a[i] == x)
      ++i;
    else
      out.push_back(x);
  }
  return out;
}

// Sorted class multiset of a shuffle set whose letters are exactly [total].
std::vector<int> shuffle_class_multiset(const StatisticTable& t, const Permutation& p, const Permutation& q,
                                        int total) {
  std::vector<int> out;
  for (const Permutation& s : shuffles(p, q))
    out.push_back(t.level(total)[static_cast<size_t>(lex_rank(s.letters()))]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CompatVerdict check_shuffle_compatible(const StatisticTable& t, ShuffleMode mode, int upto) {
  if (upto > t.max_length())
    throw LengthOutOfRange("shuffle check up to " + std::to_string(upto) + " exceeds table max length " +
                           std::to_string(t.max_length()));
  for (int total = 2; total <= upto; ++total) {
    for (int m = total - 1; m >= 1; --m) {
      const int n2 = total - m;
      const auto mem_a = members_by_class(t, m);
      const auto mem_b = members_by_class(t, n2);
      std::vector<std::vector<int>> splits;
      if (mode == ShuffleMode::Weak) {
        std::vector<int> prefix(static_cast<size_t>(m));
        std::iota(prefix.begin(), prefix.end(), 1);
        splits.push_back(std::move(prefix));
      } else {
        splits = subsets(total, m);
      }
      for (size_t ca = 0; ca < mem_a.size(); ++ca) {
        for (size_t cb = 0; cb < mem_b.size(); ++cb) {
          bool have_base = false;
          std::vector<int> base_ms;
          Permutation base_p, base_q;
          for (int pr : mem_a[ca]) {
            const Permutation p = nth_permutation(m, pr);
            for (int qr : mem_b[cb]) {
              const Permutation q = nth_permutation(n2, qr);
              for (const auto& split : splits) {
                const Permutation pi = embed(p, split);
                const Permutation sg = embed(q, set_complement(split, total));
                std::vector<int> ms = shuffle_class_multiset(t, pi, sg, total);
                if (!have_base) {
                  have_base = true;
                  base_ms = std::move(ms);
                  base_p = pi;
                  base_q = sg;
                } else if (ms != base_ms) {
                  return CompatVerdict{false, Witness{"shuffle", {base_p, base_q, pi, sg}, {base_ms, ms}, {}}};
                }
              }
            }
          }
        }
      }
    }
  }
  return CompatVerdict{};
}

CompatVerdict check_substring_compatible(const StatisticTable& t) {
  for (int n = 0; n + 1 <= t.max_length(); ++n) {
    const std::vector<int> lifted = lift_partition(t.level(n), n, 1);
    const auto& upper = t.level(n + 1);
    std::vector<int> prev(static_cast<size_t>(t.num_classes(n + 1)), -1);
    for (size_t r = 0; r < upper.size(); ++r) {
      const auto c = static_cast<size_t>(upper[r]);
      if (prev[c] >= 0 && lifted[static_cast<size_t>(prev[c])] != lifted[r]) {
        const Permutation a = nth_permutation(n + 1, static_cast<long long>(r));
        const Permutation b = nth_permutation(n + 1, prev[c]);
        // Locate a differing window for the witness.
        for (int i = 1; i <= 2; ++i) {
          const Permutation wa = standardize(window(a, i, i + n - 1));
          const Permutation wb = standardize(window(b, i, i + n - 1));
          if (t.level(n)[static_cast<size_t>(lex_rank(wa.letters()))] !=
              t.level(n)[static_cast<size_t>(lex_rank(wb.letters()))]) {
            return CompatVerdict{false, Witness{"substring", {a, b}, {}, {i, i + n - 1}}};
          }
        }
        return CompatVerdict{false, Witness{"substring", {a, b}, {}, {}}};
      }
      prev[c] = static_cast<int>(r);
    }
  }
  return CompatVerdict{};
}

namespace {

// Union-find with path compression.
struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(static_cast<size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
  // Canonical labels over the element order.
  std::vector<int> labels() {
    std::vector<int> out(parent.size());
    for (size_t i = 0; i < parent.size(); ++i) out[i] = find(static_cast<int>(i));
    canonicalize_partition(out);
    return out;
  }
};

}  // namespace

std::vector<int> ab_move_closure(const StatisticTable& base, int n) {
  if (base.max_length() < n)
    throw LengthOutOfRange("[a,b]-move closure at length " + std::to_string(n) + " needs base tables up to " +
                           std::to_string(n));
  if (const auto v = check_substring_compatible(base); !v.holds)
    throw IncompatibleStatistic("[a,b]-move closure requires a substring-compatible base statistic");
  const auto perms = standard_permutations(n);
  DisjointSet uf(static_cast<int>(perms.size()));
  std::vector<int> positions, pattern;
  for (size_t r = 0; r < perms.size(); ++r) {
    const auto& v = perms[r].letters();
    for (int a = 1; a <= n; ++a) {
      for (int b = a; b <= n; ++b) {
        const int k = b - a + 1;
        positions.clear();
        pattern.clear();
        for (int i = 0; i < n; ++i) {
          if (v[static_cast<size_t>(i)] >= a && v[static_cast<size_t>(i)] <= b) {
            positions.push_back(i);
            pattern.push_back(v[static_cast<size_t>(i)] - a + 1);
          }
        }
        const int cls = base.class_index(k, lex_rank(pattern));
        // Try every rearrangement of the [a,b]-letters over their positions.
        std::vector<int> arr(static_cast<size_t>(k));
        std::iota(arr.begin(), arr.end(), 1);
        std::vector<int> moved = v;
        do {
          if (base.class_index(k, lex_rank(arr)) != cls) continue;
          for (int i = 0; i < k; ++i)
            moved[static_cast<size_t>(positions[static_cast<size_t>(i)])] = arr[static_cast<size_t>(i)] + a - 1;
          uf.merge(static_cast<int>(r), lex_rank(moved));
        } while (std::next_permutation(arr.begin(), arr.end()));
      }
    }
  }
  return uf.labels();
}

StandardTableau rsk_recording(const Permutation& p) {
  if (!p.is_standard()) throw NotStandard("RSK recording tableau requires a standard permutation");
  std::vector<std::vector<int>> insertion, recording;
  int step = 0;
  for (int x : p.letters()) {
    ++step;
    int value = x;
    size_t row = 0;
    for (;; ++row) {
      if (row == insertion.size()) {
        insertion.emplace_back();
        recording.emplace_back();
      }
      auto& r = insertion[row];
      auto it = std::upper_bound(r.begin(), r.end(), value);
      if (it == r.end()) {
        r.push_back(value);
        recording[row].push_back(step);
        break;
      }
      std::swap(*it, value);  // bump
    }
  }
  return StandardTableau{recording};
}

bool dual_knuth_move_valid(const Permutation& p, int k) {
  const int n = p.length();
  if (k < 1 || k + 1 > n) return false;
  int pos_k = -1, pos_k1 = -1, pos_lo = -1, pos_hi = -1;
  const auto& v = p.letters();
  for (int i = 0; i < n; ++i) {
    const int x = v[static_cast<size_t>(i)];
    if (x == k) pos_k = i;
    if (x == k + 1) pos_k1 = i;
    if (x == k - 1) pos_lo = i;
    if (x == k + 2) pos_hi = i;
  }
  const int lo = std::min(pos_k, pos_k1);
  const int hi = std::max(pos_k, pos_k1);
  const bool lo_between = pos_lo > lo && pos_lo < hi;
  const bool hi_between = pos_hi > lo && pos_hi < hi;
  return lo_between || hi_between;
}

StatisticTable dual_knuth_table(int max_length) {
  if (max_length > 7) throw LengthOutOfRange("dual Knuth table capped at length 7");
  std::vector<std::vector<int>> levels;
  for (int n = 0; n <= max_length; ++n) {
    const auto perms = standard_permutations(n);
    DisjointSet uf(static_cast<int>(perms.size()));
    for (size_t r = 0; r < perms.size(); ++r) {
      for (int k = 1; k + 1 <= n; ++k) {
        if (!dual_knuth_move_valid(perms[r], k)) continue;
        std::vector<int> swapped = perms[r].letters();
        for (int& x : swapped) {
          if (x == k)
            x = k + 1;
          else if (x == k + 1)
            x = k;
        }
        uf.merge(static_cast<int>(r), lex_rank(swapped));
      }
    }
    levels.push_back(uf.labels());
  }
  return StatisticTable::from_levels("dualKnuth", std::move(levels));
}

}  // namespace permstat
