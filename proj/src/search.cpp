#include "permstat/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "permstat/errors.hpp"

namespace permstat {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long out = 1;
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

int class_count_bound(int n) {
  if (n < 2) throw LengthOutOfRange("class count bound needs n >= 2");
  long long g = 0;
  for (int k = 1; k <= n - 1; ++k) g = std::gcd(g, binomial(n, k));
  return static_cast<int>(g);
}

long long class_size_divisor(int n) { return factorial(n) / class_count_bound(n); }

namespace {

struct ShuffleSetInfo {
  std::vector<int> members;  // lex ranks, ascending
  int group = 0;
};

struct GroupInfo {
  int size = 0;              // common cardinality of its shuffle sets
  long long weight = 0;      // a! * b!, used for target linking
  std::vector<int> sets;
};

// Order-preserving embedding of a standard pattern into a letter set.
Permutation embed(const Permutation& pattern, const std::vector<int>& letters) {
  std::vector<int> out(pattern.letters().size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = letters[static_cast<size_t>(pattern.letters()[i]) - 1];
  return Permutation::from_distinct(std::move(out));
}

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

// The full constraint system of one search instance, shared by workers.
struct SearchCore {
  int n = 0;
  int nfact = 0;
  int num_classes = 0;  // class budget per solution
  std::vector<ShuffleSetInfo> sets;
  std::vector<GroupInfo> groups;
  std::vector<std::vector<int>> sets_of;  // rank -> set ids
  std::vector<int> order;                 // assignment order over ranks
  std::vector<int> block;                 // refinement blocks per rank (empty when unconstrained)
  bool linked = false;                    // trivial base: all group targets determine each other
};

void build_constraints(const StatisticTable& base, int n, SearchCore& core) {
  std::map<std::vector<int>, int> set_index;
  std::map<std::tuple<int, int, int, int>, int> group_index;
  for (int a = 1; 2 * a <= n; ++a) {
    const int b = n - a;
    const auto pats_a = standard_permutations(a);
    const auto pats_b = standard_permutations(b);
    for (const auto& split : subsets(n, a)) {
      const auto comp = set_complement(split, n);
      for (size_t ra = 0; ra < pats_a.size(); ++ra) {
        for (size_t rb = 0; rb < pats_b.size(); ++rb) {
          const Permutation pi = embed(pats_a[ra], split);
          const Permutation sg = embed(pats_b[rb], comp);
          std::vector<int> members;
          for (const Permutation& s : shuffles(pi, sg)) members.push_back(lex_rank(s.letters()));
          int ca = base.class_index(a, static_cast<int>(ra));
          int cb = base.class_index(b, static_cast<int>(rb));
          if (a == b && ca > cb) std::swap(ca, cb);
          const auto key = std::make_tuple(a, b, ca, cb);
          auto [git, gfresh] = group_index.emplace(key, static_cast<int>(core.groups.size()));
          if (gfresh) {
            GroupInfo g;
            g.size = static_cast<int>(members.size());
            g.weight = factorial(a) * factorial(b);
            core.groups.push_back(g);
          }
          auto [sit, sfresh] = set_index.emplace(members, static_cast<int>(core.sets.size()));
          if (sfresh) {
            core.sets.push_back(ShuffleSetInfo{members, git->second});
            core.groups[static_cast<size_t>(git->second)].sets.push_back(sit->second);
          }
        }
      }
    }
  }
  core.sets_of.assign(static_cast<size_t>(core.nfact), {});
  for (size_t s = 0; s < core.sets.size(); ++s)
    for (int m : core.sets[s].members) core.sets_of[static_cast<size_t>(m)].push_back(static_cast<int>(s));
}

// Assignment order: repeatedly drain the shuffle set with the fewest
// unassigned members, so set completions (which pin group targets) happen as
// early as possible.
void build_order(SearchCore& core) {
  core.order.clear();
  core.order.reserve(static_cast<size_t>(core.nfact));
  std::vector<int> open(core.sets.size());
  for (size_t s = 0; s < core.sets.size(); ++s) open[s] = static_cast<int>(core.sets[s].members.size());
  std::vector<bool> placed(static_cast<size_t>(core.nfact), false);
  while (static_cast<int>(core.order.size()) < core.nfact) {
    int best = -1;
    for (size_t s = 0; s < core.sets.size(); ++s)
      if (open[s] > 0 && (best < 0 || open[s] < open[static_cast<size_t>(best)])) best = static_cast<int>(s);
    if (best < 0) {
      for (int r = 0; r < core.nfact; ++r)
        if (!placed[static_cast<size_t>(r)]) core.order.push_back(r);
      break;
    }
    for (int m : core.sets[static_cast<size_t>(best)].members) {
      if (placed[static_cast<size_t>(m)]) continue;
      placed[static_cast<size_t>(m)] = true;
      core.order.push_back(m);
      for (int s : core.sets_of[static_cast<size_t>(m)]) --open[static_cast<size_t>(s)];
    }
  }
}

struct GroupState {
  bool pinned = false;
  std::vector<int> target;
  std::vector<int> lb;  // componentwise lower bound on the eventual target
  int lbsum = 0;
};

struct UndoEntry {
  enum Kind : uint8_t { LbRaise, Pin } kind;
  int group;
  int cls;
  int old;
};

struct Frame {
  int rank = -1;
  int cls = -1;
  bool fresh = false;
  std::vector<UndoEntry> log;
};

struct SearchState {
  const SearchCore* core;
  std::vector<std::vector<int>> counts;
  std::vector<int> filled;
  std::vector<GroupState> gs;
  std::vector<int> assign;
  std::vector<int> class_block;
  int used = 0;
  long long nodes = 0;

  explicit SearchState(const SearchCore& c) : core(&c) {
    counts.assign(c.sets.size(), std::vector<int>(static_cast<size_t>(c.num_classes), 0));
    filled.assign(c.sets.size(), 0);
    gs.assign(c.groups.size(), GroupState{});
    for (size_t g = 0; g < c.groups.size(); ++g) {
      gs[g].target.assign(static_cast<size_t>(c.num_classes), 0);
      gs[g].lb.assign(static_cast<size_t>(c.num_classes), 0);
    }
    assign.assign(static_cast<size_t>(c.nfact), -1);
    class_block.assign(static_cast<size_t>(c.num_classes), -1);
  }

  void reset() {
    for (auto& v : counts) std::fill(v.begin(), v.end(), 0);
    std::fill(filled.begin(), filled.end(), 0);
    for (auto& g : gs) {
      g.pinned = false;
      std::fill(g.lb.begin(), g.lb.end(), 0);
      g.lbsum = 0;
    }
    std::fill(assign.begin(), assign.end(), -1);
    std::fill(class_block.begin(), class_block.end(), -1);
    used = 0;
  }

  bool pin_group(int g, const std::vector<int>& target, Frame& f) {
    auto& G = gs[static_cast<size_t>(g)];
    f.log.push_back({UndoEntry::Pin, g, 0, 0});
    G.pinned = true;
    G.target = target;
    for (int s : core->groups[static_cast<size_t>(g)].sets)
      for (int c = 0; c < core->num_classes; ++c)
        if (counts[static_cast<size_t>(s)][static_cast<size_t>(c)] > G.target[static_cast<size_t>(c)]) return false;
    return true;
  }

  // With a trivial base, a! b! * target is the class-size vector, so one
  // pinned group determines every other group's target.
  bool link_groups(int g, Frame& f) {
    const auto& G = gs[static_cast<size_t>(g)];
    const long long wg = core->groups[static_cast<size_t>(g)].weight;
    for (size_t h = 0; h < core->groups.size(); ++h) {
      if (static_cast<int>(h) == g) continue;
      const long long wh = core->groups[h].weight;
      std::vector<int> derived(static_cast<size_t>(core->num_classes), 0);
      for (int c = 0; c < core->num_classes; ++c) {
        const long long scaled = static_cast<long long>(G.target[static_cast<size_t>(c)]) * wg;
        if (scaled % wh != 0) return false;
        derived[static_cast<size_t>(c)] = static_cast<int>(scaled / wh);
      }
      if (gs[h].pinned) {
        if (gs[h].target != derived) return false;
      } else if (!pin_group(static_cast<int>(h), derived, f)) {
        return false;
      }
    }
    return true;
  }

  bool try_assign(int rank, int cls, Frame& f) {
    ++nodes;
    f.rank = rank;
    f.cls = cls;
    f.fresh = false;
    f.log.clear();
    assign[static_cast<size_t>(rank)] = cls;
    if (cls == used) {
      ++used;
      f.fresh = true;
      if (!core->block.empty()) class_block[static_cast<size_t>(cls)] = core->block[static_cast<size_t>(rank)];
    }
    for (int s : core->sets_of[static_cast<size_t>(rank)]) {
      ++counts[static_cast<size_t>(s)][static_cast<size_t>(cls)];
      ++filled[static_cast<size_t>(s)];
    }
    bool ok = true;
    for (int s : core->sets_of[static_cast<size_t>(rank)]) {
      const int g = core->sets[static_cast<size_t>(s)].group;
      auto& G = gs[static_cast<size_t>(g)];
      const int cnt = counts[static_cast<size_t>(s)][static_cast<size_t>(cls)];
      if (G.pinned) {
        if (cnt > G.target[static_cast<size_t>(cls)]) {
          ok = false;
          break;
        }
      } else {
        if (cnt > G.lb[static_cast<size_t>(cls)]) {
          f.log.push_back({UndoEntry::LbRaise, g, cls, G.lb[static_cast<size_t>(cls)]});
          G.lbsum += cnt - G.lb[static_cast<size_t>(cls)];
          G.lb[static_cast<size_t>(cls)] = cnt;
          if (G.lbsum > core->groups[static_cast<size_t>(g)].size) {
            ok = false;
            break;
          }
        }
      }
      if (!G.pinned && filled[static_cast<size_t>(s)] == core->groups[static_cast<size_t>(g)].size) {
        if (!pin_group(g, counts[static_cast<size_t>(s)], f)) {
          ok = false;
          break;
        }
        if (core->linked && !link_groups(g, f)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) {
      undo(f);
      return false;
    }
    return true;
  }

  void undo(const Frame& f) {
    for (auto it = f.log.rbegin(); it != f.log.rend(); ++it) {
      auto& G = gs[static_cast<size_t>(it->group)];
      if (it->kind == UndoEntry::LbRaise) {
        G.lbsum -= G.lb[static_cast<size_t>(it->cls)] - it->old;
        G.lb[static_cast<size_t>(it->cls)] = it->old;
      } else {
        G.pinned = false;
      }
    }
    for (int s : core->sets_of[static_cast<size_t>(f.rank)]) {
      --counts[static_cast<size_t>(s)][static_cast<size_t>(f.cls)];
      --filled[static_cast<size_t>(s)];
    }
    if (f.fresh) {
      --used;
      if (!core->block.empty()) class_block[static_cast<size_t>(f.cls)] = -1;
    }
    assign[static_cast<size_t>(f.rank)] = -1;
  }
};

LevelSolution make_solution(std::vector<int> labels) {
  const int classes = canonicalize_partition(labels);
  std::vector<int> sizes(static_cast<size_t>(classes), 0);
  for (int c : labels) ++sizes[static_cast<size_t>(c)];
  std::sort(sizes.begin(), sizes.end());
  return LevelSolution{std::move(labels), std::move(sizes)};
}

void dfs(SearchState& st, std::vector<Frame>& frames, int depth, std::vector<LevelSolution>& out) {
  const SearchCore& core = *st.core;
  if (depth == core.nfact) {
    out.push_back(make_solution(st.assign));
    return;
  }
  const int rank = core.order[static_cast<size_t>(depth)];
  const int cmax = std::min(st.used, core.num_classes - 1);
  for (int c = 0; c <= cmax; ++c) {
    if (!core.block.empty() && c < st.used &&
        st.class_block[static_cast<size_t>(c)] != core.block[static_cast<size_t>(rank)])
      continue;
    Frame& f = frames[static_cast<size_t>(depth)];
    if (!st.try_assign(rank, c, f)) continue;
    dfs(st, frames, depth + 1, out);
    st.undo(f);
  }
}

uint64_t fingerprint(const SearchCore& core, const StatisticTable& base, int level) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](long long v) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<uint64_t>(v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(level);
  mix(core.num_classes);
  for (int n = 0; n < level; ++n)
    for (int x : base.level(n)) mix(x);
  for (int x : core.block) mix(x);
  return h;
}

// Common refinement of two canonical partitions.
std::vector<int> intersect_partitions(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<std::pair<int, int>, int> seen;
  std::vector<int> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    auto [it, fresh] = seen.emplace(std::make_pair(a[i], b[i]), static_cast<int>(seen.size()));
    out[i] = it->second;
  }
  return out;
}

}  // namespace

StatisticTable assemble(const StatisticTable& base, int level, const std::vector<int>& partition,
                        std::string name) {
  std::vector<std::vector<int>> levels;
  levels.reserve(static_cast<size_t>(level) + 1);
  for (int i = 0; i < level; ++i) levels.push_back(base.level(i));
  levels.push_back(partition);
  return StatisticTable::from_levels(std::move(name), std::move(levels));
}

namespace {

// Validates the instance and produces the constraint system.
SearchCore prepare_core(const SearchInstance& inst) {
  const int n = inst.level;
  if (n < 1 || n > 6) throw LengthOutOfRange("level extension search supports 1 <= n <= 6");
  if (inst.base.max_length() < n - 1)
    throw LengthOutOfRange("search base must reach length " + std::to_string(n - 1));
  if (inst.max_classes.has_value() && *inst.max_classes < 1)
    throw InfeasibleBound("max_classes must be at least 1");
  if (!check_shuffle_compatible(inst.base, ShuffleMode::Strong, n - 1).holds)
    throw IncompatibleStatistic("search base is not strongly shuffle-compatible up to length " +
                                std::to_string(n - 1));
  if (inst.require_substring && !check_substring_compatible(inst.base).holds)
    throw IncompatibleStatistic("substring-constrained search needs a substring-compatible base");

  SearchCore core;
  core.n = n;
  core.nfact = static_cast<int>(factorial(n));
  core.linked = inst.base.trivial_through(n - 1);

  // Class budget: the number-theoretic bound caps any extension of a trivial
  // base, so the budget is clamped to it in that case.
  int budget;
  if (inst.max_classes.has_value()) {
    budget = *inst.max_classes;
  } else if (core.linked) {
    budget = n >= 2 ? class_count_bound(n) : 1;
  } else {
    std::vector<int> lifted = lift_partition(inst.base.level(n - 1), n - 1, 1);
    budget = canonicalize_partition(lifted);
  }
  if (core.linked && n >= 2) budget = std::min(budget, class_count_bound(n));
  budget = std::min(budget, core.nfact);
  core.num_classes = budget;

  // Refinement constraints become per-rank blocks.
  std::optional<std::vector<int>> block;
  if (inst.require_substring) block = lift_partition(inst.base.level(n - 1), n - 1, 1);
  if (inst.must_refine.has_value()) {
    if (inst.must_refine->size() != static_cast<size_t>(core.nfact))
      throw LengthOutOfRange("must_refine partition has the wrong size");
    std::vector<int> extra = *inst.must_refine;
    canonicalize_partition(extra);
    block = block.has_value() ? intersect_partitions(*block, extra) : std::move(extra);
  }
  if (block.has_value()) {
    canonicalize_partition(*block);
    core.block = std::move(*block);
  }

  build_constraints(inst.base, n, core);
  build_order(core);
  return core;
}

}  // namespace

EnumerateResult enumerate_level(const SearchInstance& inst, const SearchOptions& opts) {
  if (!opts.checkpoint_path.empty() && opts.log_path.empty())
    throw IoError("a checkpoint requires a solution log path");
  SearchCore core = prepare_core(inst);
  const uint64_t fp = fingerprint(core, inst.base, inst.level);

  EnumerateResult result;

  // Trivial short-circuit: a one-class budget admits exactly the trivial
  // partition (when it satisfies the refinement constraint).
  std::vector<LevelSolution> seed;
  bool short_circuit = false;
  if (core.num_classes == 1) {
    short_circuit = true;
    bool feasible = true;
    if (!core.block.empty())
      for (int x : core.block) feasible &= (x == core.block[0]);
    if (feasible) seed.push_back(make_solution(std::vector<int>(static_cast<size_t>(core.nfact), 0)));
  }

  // Branch prefixes at a fixed split depth, independent of worker count.
  std::vector<std::vector<int>> branches;
  int split_depth = 0;
  if (!short_circuit) {
    branches.push_back({});
    SearchState probe(core);
    std::vector<Frame> frames(static_cast<size_t>(core.nfact) + 1);
    constexpr size_t kSplitTarget = 256;
    while (split_depth < core.nfact && branches.size() < kSplitTarget) {
      std::vector<std::vector<int>> next;
      for (const auto& prefix : branches) {
        probe.reset();
        bool ok = true;
        for (int d = 0; d < split_depth && ok; ++d)
          ok = probe.try_assign(core.order[static_cast<size_t>(d)], prefix[static_cast<size_t>(d)],
                                frames[static_cast<size_t>(d)]);
        if (!ok) continue;  // cannot happen for prefixes validated below
        const int rank = core.order[static_cast<size_t>(split_depth)];
        const int cmax = std::min(probe.used, core.num_classes - 1);
        for (int c = 0; c <= cmax; ++c) {
          if (!core.block.empty() && c < probe.used &&
              probe.class_block[static_cast<size_t>(c)] != core.block[static_cast<size_t>(rank)])
            continue;
          Frame& f = frames[static_cast<size_t>(split_depth)];
          if (!probe.try_assign(rank, c, f)) continue;
          std::vector<int> extended = prefix;
          extended.push_back(c);
          next.push_back(std::move(extended));
          probe.undo(f);
        }
      }
      branches = std::move(next);
      ++split_depth;
      if (branches.empty()) break;
    }
    result.nodes += probe.nodes;
  } else {
    branches.resize(seed.size());  // one no-op branch per seeded solution
  }

  result.branches_total = static_cast<long long>(branches.size());

  // Resume from a previous run when a matching checkpoint exists.
  long long start_branch = 0;
  if (!opts.checkpoint_path.empty() && std::filesystem::exists(opts.checkpoint_path)) {
    std::ifstream in(opts.checkpoint_path);
    nlohmann::json ck;
    try {
      in >> ck;
    } catch (const std::exception& e) {
      throw SchemaError(std::string("unreadable checkpoint: ") + e.what());
    }
    if (!ck.contains("fingerprint") || ck["fingerprint"].get<uint64_t>() != fp ||
        ck["branches_total"].get<long long>() != result.branches_total)
      throw SchemaError("checkpoint does not match this search instance");
    start_branch = ck["next_branch"].get<long long>();
    std::ifstream log(opts.log_path);
    std::string line;
    while (std::getline(log, line)) {
      if (line.empty()) continue;
      std::vector<int> labels;
      std::stringstream ss(line);
      std::string tok;
      while (std::getline(ss, tok, ',')) labels.push_back(std::stoi(tok));
      if (labels.size() != static_cast<size_t>(core.nfact)) throw SchemaError("corrupt solution log line");
      result.solutions.push_back(make_solution(std::move(labels)));
    }
  }

  const long long end_branch =
      opts.max_branches > 0 ? std::min(result.branches_total, start_branch + opts.max_branches)
                            : result.branches_total;

  std::mutex sink_mutex;
  std::map<long long, std::vector<LevelSolution>> pending;
  long long next_flush = start_branch;
  std::ofstream log_stream;
  if (!opts.log_path.empty())
    log_stream.open(opts.log_path, start_branch == 0 ? std::ios::trunc : std::ios::app);

  auto write_checkpoint = [&](long long next_branch) {
    if (opts.checkpoint_path.empty()) return;
    nlohmann::json ck{{"schema", "permstat/1"},
                      {"kind", "search-checkpoint"},
                      {"n", core.n},
                      {"max_classes", core.num_classes},
                      {"fingerprint", fp},
                      {"branches_total", result.branches_total},
                      {"next_branch", next_branch},
                      {"complete", next_branch == result.branches_total}};
    std::ofstream out(opts.checkpoint_path, std::ios::trunc);
    out << ck.dump() << "\n";
  };

  auto deliver = [&](long long branch, std::vector<LevelSolution> found) {
    std::lock_guard lock(sink_mutex);
    pending.emplace(branch, std::move(found));
    while (!pending.empty() && pending.begin()->first == next_flush) {
      auto node = pending.extract(pending.begin());
      for (auto& sol : node.mapped()) {
        if (log_stream.is_open()) {
          std::string line;
          for (size_t i = 0; i < sol.partition.size(); ++i) {
            if (i) line += ',';
            line += std::to_string(sol.partition[i]);
          }
          log_stream << line << "\n";
        }
        result.solutions.push_back(std::move(sol));
      }
      ++next_flush;
      if (log_stream.is_open()) log_stream.flush();
      write_checkpoint(next_flush);
      if (opts.verbose)
        std::fprintf(stderr, "permstat: branch %lld/%lld done, %zu solutions so far\n", next_flush,
                     result.branches_total, result.solutions.size());
    }
  };

  if (short_circuit) {
    for (long long i = start_branch; i < end_branch; ++i)
      deliver(i, {seed[static_cast<size_t>(i)]});
  } else if (start_branch < end_branch) {
    std::atomic<long long> cursor{start_branch};
    std::atomic<long long> node_total{0};
    const int jobs = std::max(1, opts.jobs);
    auto worker = [&]() {
      SearchState st(core);
      std::vector<Frame> frames(static_cast<size_t>(core.nfact) + 1);
      for (;;) {
        const long long i = cursor.fetch_add(1);
        if (i >= end_branch) break;
        st.reset();
        const auto& prefix = branches[static_cast<size_t>(i)];
        bool ok = true;
        for (size_t d = 0; d < prefix.size() && ok; ++d)
          ok = st.try_assign(core.order[d], prefix[d], frames[d]);
        std::vector<LevelSolution> found;
        if (ok) dfs(st, frames, static_cast<int>(prefix.size()), found);
        deliver(i, std::move(found));
      }
      node_total.fetch_add(st.nodes);
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<size_t>(jobs));
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    result.nodes += node_total.load();
  }

  result.branches_done = end_branch;
  result.complete = end_branch == result.branches_total;

  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const LevelSolution& a, const LevelSolution& b) { return a.partition < b.partition; });
  result.solutions.erase(std::unique(result.solutions.begin(), result.solutions.end()),
                         result.solutions.end());
  return result;
}

std::vector<LevelSolution> enumerate_level(const SearchInstance& inst) {
  return enumerate_level(inst, SearchOptions{}).solutions;
}

CompatVerdict viability_check(const StatisticTable& table,
                              const std::vector<std::pair<int, int>>& factor_lengths) {
  const int n = table.max_length();
  for (const auto& [a, b] : factor_lengths) {
    if (a < 1 || b < 1 || a > n || b > n || a + b <= n)
      throw LengthOutOfRange("viability factors need 1 <= a,b <= n and a+b > n");
    const int total = a + b;
    const std::vector<int> lifted = lift_partition(table.level(n), n, total - n);
    std::vector<std::vector<int>> mem_a(static_cast<size_t>(table.num_classes(a)));
    std::vector<std::vector<int>> mem_b(static_cast<size_t>(table.num_classes(b)));
    for (size_t r = 0; r < table.level(a).size(); ++r)
      mem_a[static_cast<size_t>(table.level(a)[r])].push_back(static_cast<int>(r));
    for (size_t r = 0; r < table.level(b).size(); ++r)
      mem_b[static_cast<size_t>(table.level(b)[r])].push_back(static_cast<int>(r));
    const auto splits = subsets(total, a);
    for (size_t ca = 0; ca < mem_a.size(); ++ca) {
      for (size_t cb = 0; cb < mem_b.size(); ++cb) {
        bool have_base = false;
        std::vector<int> base_ms;
        Permutation base_p, base_q;
        for (int pr : mem_a[ca]) {
          const Permutation p = nth_permutation(a, pr);
          for (int qr : mem_b[cb]) {
            const Permutation q = nth_permutation(b, qr);
            for (const auto& split : splits) {
              const Permutation pi = embed(p, split);
              const Permutation sg = embed(q, set_complement(split, total));
              std::vector<int> ms;
              for (const Permutation& s : shuffles(pi, sg))
                ms.push_back(lifted[static_cast<size_t>(lex_rank(s.letters()))]);
              std::sort(ms.begin(), ms.end());
              if (!have_base) {
                have_base = true;
                base_ms = std::move(ms);
                base_p = pi;
                base_q = sg;
              } else if (ms != base_ms) {
                return CompatVerdict{false,
                                     Witness{"viability", {base_p, base_q, pi, sg}, {base_ms, ms}, {a, b}}};
              }
            }
          }
        }
      }
    }
  }
  return CompatVerdict{};
}

namespace {

// Small CNF builder with exact variable/clause bookkeeping.
struct CnfBuilder {
  long long variables = 0;
  std::vector<std::vector<long long>> clauses;

  long long fresh() { return ++variables; }
  void add(std::vector<long long> clause) { clauses.push_back(std::move(clause)); }

  // x <-> a OR b
  void iff_or(long long x, long long a, long long b) {
    add({-x, a, b});
    add({-a, x});
    add({-b, x});
  }
  // x <-> a AND b
  void iff_and(long long x, long long a, long long b) {
    add({-x, a});
    add({-x, b});
    add({-a, -b, x});
  }
  // x <-> a OR (b AND c)
  void iff_or_and(long long x, long long a, long long b, long long c) {
    add({-x, a, b});
    add({-x, a, c});
    add({-a, x});
    add({-b, -c, x});
  }
  // x <-> a
  void iff(long long x, long long a) {
    add({-x, a});
    add({-a, x});
  }
};

}  // namespace

DimacsSummary export_dimacs(const SearchInstance& inst, const std::string& path) {
  SearchCore core = prepare_core(inst);
  // The native engine clamps the budget; the CNF uses the requested width so
  // the file reflects the instance as posed.
  if (inst.max_classes.has_value()) core.num_classes = std::min(*inst.max_classes, core.nfact);
  const int K = core.num_classes;
  const int P = core.nfact;

  CnfBuilder cnf;
  // Primary one-hot variables, rank-major: var(rank, c) = rank*K + c + 1.
  cnf.variables = static_cast<long long>(P) * K;
  auto v = [&](int rank, int c) { return static_cast<long long>(rank) * K + c + 1; };
  for (int r = 0; r < P; ++r) {
    std::vector<long long> alo;
    for (int c = 0; c < K; ++c) alo.push_back(v(r, c));
    cnf.add(std::move(alo));
    for (int c1 = 0; c1 < K; ++c1)
      for (int c2 = c1 + 1; c2 < K; ++c2) cnf.add({-v(r, c1), -v(r, c2)});
  }

  // Value precedence over the lex order: class c+1 may first appear only
  // after class c. u(r, c) <-> "class c used among ranks 0..r".
  if (K >= 2) {
    std::vector<std::vector<long long>> used(static_cast<size_t>(P), std::vector<long long>(static_cast<size_t>(K - 1)));
    for (int r = 0; r < P; ++r)
      for (int c = 0; c + 1 < K; ++c) used[static_cast<size_t>(r)][static_cast<size_t>(c)] = cnf.fresh();
    for (int c = 0; c + 1 < K; ++c) cnf.iff(used[0][static_cast<size_t>(c)], v(0, c));
    for (int r = 1; r < P; ++r)
      for (int c = 0; c + 1 < K; ++c)
        cnf.iff_or(used[static_cast<size_t>(r)][static_cast<size_t>(c)],
                   used[static_cast<size_t>(r - 1)][static_cast<size_t>(c)], v(r, c));
    for (int c = 1; c < K; ++c) {
      cnf.add({-v(0, c)});
      for (int r = 1; r < P; ++r) cnf.add({-v(r, c), used[static_cast<size_t>(r - 1)][static_cast<size_t>(c - 1)]});
    }
  }

  // Sequential counters s(j,c) = "at least c of the first j members take this
  // class", fully defined so models stay in bijection with assignments.
  // counter[set][class] holds the top row s(sz, 1..sz).
  std::vector<std::vector<std::vector<long long>>> top(core.sets.size());
  for (size_t s = 0; s < core.sets.size(); ++s) {
    const auto& members = core.sets[s].members;
    const int sz = static_cast<int>(members.size());
    top[s].assign(static_cast<size_t>(K), {});
    for (int cls = 0; cls < K; ++cls) {
      std::vector<std::vector<long long>> rows(static_cast<size_t>(sz) + 1);
      for (int j = 1; j <= sz; ++j) {
        rows[static_cast<size_t>(j)].assign(static_cast<size_t>(j) + 1, 0);
        for (int c = 1; c <= j; ++c) rows[static_cast<size_t>(j)][static_cast<size_t>(c)] = cnf.fresh();
      }
      for (int j = 1; j <= sz; ++j) {
        const long long vj = v(members[static_cast<size_t>(j - 1)], cls);
        for (int c = 1; c <= j; ++c) {
          const long long x = rows[static_cast<size_t>(j)][static_cast<size_t>(c)];
          if (j == 1) {
            cnf.iff(x, vj);
          } else if (c == 1) {
            cnf.iff_or(x, rows[static_cast<size_t>(j - 1)][1], vj);
          } else if (c == j) {
            cnf.iff_and(x, rows[static_cast<size_t>(j - 1)][static_cast<size_t>(c - 1)], vj);
          } else {
            cnf.iff_or_and(x, rows[static_cast<size_t>(j - 1)][static_cast<size_t>(c)],
                           rows[static_cast<size_t>(j - 1)][static_cast<size_t>(c - 1)], vj);
          }
        }
      }
      top[s][static_cast<size_t>(cls)] = rows[static_cast<size_t>(sz)];
    }
  }

  // Equal counts inside each group: chain every set to the group's first.
  for (const auto& group : core.groups) {
    if (group.sets.size() < 2) continue;
    const int first = group.sets.front();
    for (size_t i = 1; i < group.sets.size(); ++i) {
      const int other = group.sets[static_cast<size_t>(i)];
      for (int cls = 0; cls < K; ++cls)
        for (int c = 1; c <= group.size; ++c)
          cnf.iff(top[static_cast<size_t>(first)][static_cast<size_t>(cls)][static_cast<size_t>(c)],
                  top[static_cast<size_t>(other)][static_cast<size_t>(cls)][static_cast<size_t>(c)]);
    }
  }

  // Refinement blocks: ranks in different blocks never share a class.
  if (!core.block.empty()) {
    for (int r1 = 0; r1 < P; ++r1)
      for (int r2 = r1 + 1; r2 < P; ++r2)
        if (core.block[static_cast<size_t>(r1)] != core.block[static_cast<size_t>(r2)])
          for (int c = 0; c < K; ++c) cnf.add({-v(r1, c), -v(r2, c)});
  }

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write DIMACS file '" + path + "'");
  out << "c permstat level-extension search, n=" << core.n << ", classes=" << K << "\n";
  out << "c primary variables: v(rank,class) = rank*" << K << "+class+1, ranks in lex order\n";
  out << "p cnf " << cnf.variables << " " << cnf.clauses.size() << "\n";
  for (const auto& clause : cnf.clauses) {
    for (long long lit : clause) out << lit << " ";
    out << "0\n";
  }
  if (!out) throw IoError("short write to DIMACS file '" + path + "'");
  return DimacsSummary{cnf.variables, static_cast<long long>(cnf.clauses.size())};
}

}  // namespace permstat
