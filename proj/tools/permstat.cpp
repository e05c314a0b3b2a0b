// Command-line front end: builds statistic tables, runs compatibility
// checks, evaluates shuffle-algebra structure, verifies the quasisymmetric
// model, and drives the level-extension search. Structured results go to
// stdout as JSON; diagnostics go to stderr. Exit codes: 0 success or a
// holding verdict, 1 a verified negative verdict, 2 usage error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "permstat/algebra.hpp"
#include "permstat/errors.hpp"
#include "permstat/qsym.hpp"
#include "permstat/search.hpp"
#include "permstat/table_io.hpp"

using namespace permstat;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "permstat/1";

std::string term_key(ClassId c) {
  return "(" + std::to_string(c.level) + "," + std::to_string(c.index) + ")";
}

json vector_to_json(const GradedVector& v) {
  json terms = json::object();
  for (const auto& [c, coeff] : v) terms[term_key(c)] = coeff;
  return terms;
}

json tensor_to_json(const TensorTerms& t) {
  json terms = json::object();
  for (const auto& [pair, coeff] : t) terms[term_key(pair.first) + "x" + term_key(pair.second)] = coeff;
  return terms;
}

json witness_to_json(const Witness& w) {
  json out{{"kind", w.kind}};
  if (w.kind == "shuffle" || w.kind == "viability") {
    out["pair1"] = {w.perms[0].str(), w.perms[1].str()};
    out["pair2"] = {w.perms[2].str(), w.perms[3].str()};
    out["multisets"] = w.multisets;
    if (!w.windows.empty()) out["factors"] = w.windows;
  } else {
    json perms = json::array();
    for (const auto& p : w.perms) perms.push_back(p.str());
    out["perms"] = perms;
    if (!w.windows.empty()) out["window"] = w.windows;
  }
  return out;
}

json verdict_to_json(const CompatVerdict& v) {
  json out{{"holds", v.holds}};
  out["witness"] = v.witness.has_value() ? witness_to_json(*v.witness) : json(nullptr);
  return out;
}

void emit(const json& doc) { std::cout << doc.dump() << "\n"; }

int finish_verdict(json doc, const CompatVerdict& v) {
  doc.update(verdict_to_json(v));
  emit(doc);
  return v.holds ? 0 : 1;
}

// Shared options for commands that take a statistic by name or from a file.
struct TableChoice {
  std::string stat;
  std::string file;

  void attach(CLI::App* cmd, bool required = true) {
    auto* group = cmd->add_option_group("statistic");
    auto* s = group->add_option("--stat", stat, "builtin statistic name");
    auto* f = group->add_option("--table", file, "statistic table JSON file");
    s->excludes(f);
    group->require_option(required ? 1 : 0, 1);
  }

  StatisticTable get(int max_length) const {
    if (!file.empty()) {
      StatisticTable t = load_table(file);
      if (t.max_length() < max_length)
        throw LengthOutOfRange("table '" + t.name() + "' stops at length " + std::to_string(t.max_length()) +
                               ", need " + std::to_string(max_length));
      return t;
    }
    return StatisticTable::builtin(stat, max_length);
  }
};

std::vector<std::pair<int, int>> parse_factors(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t sep = text.find(';', pos);
    if (sep == std::string::npos) sep = text.size();
    const std::string item = text.substr(pos, sep - pos);
    const size_t comma = item.find(',');
    if (comma == std::string::npos) throw ParseError("factor pairs look like 'a,b;a,b'");
    out.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
    pos = sep + 1;
  }
  if (out.empty()) throw ParseError("no factor pairs given");
  return out;
}

Composition parse_composition(const std::string& text) {
  Composition out;
  if (text.empty()) return out;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(std::stoi(text.substr(pos, comma - pos)));
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return out;
}

long long now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

json search_summary(int n, const EnumerateResult& result, long long elapsed_ms, json viable) {
  long long nontrivial = 0;
  for (const auto& s : result.solutions)
    if (!s.trivial()) ++nontrivial;
  return json{{"schema", kSchema},
              {"n", n},
              {"solutions", static_cast<long long>(result.solutions.size())},
              {"nontrivial", nontrivial},
              {"viable", std::move(viable)},
              {"elapsed_ms", elapsed_ms},
              {"complete", result.complete},
              {"branches_done", result.branches_done},
              {"branches_total", result.branches_total}};
}

// Names a level partition when it matches a builtin.
std::string identify_partition(int n, const std::vector<int>& partition) {
  for (const char* name : {"triv", "Des", "Pk", "Val", "sPk", "dis", "maj", "inv"}) {
    if (StatisticTable::builtin(name, n).level(n) == partition) return name;
  }
  return "";
}

struct ReproduceLevel {
  int solutions = 0;
  int nontrivial = 0;
  int viable = 0;
  int viable_nontrivial = 0;
};

ReproduceLevel reproduce_level(int n, std::pair<int, int> factors, int jobs) {
  SearchInstance inst{StatisticTable::builtin("triv", n - 1), n, {}, false, {}};
  SearchOptions opts;
  opts.jobs = jobs;
  const auto result = enumerate_level(inst, opts);
  ReproduceLevel out;
  out.solutions = static_cast<int>(result.solutions.size());
  for (const auto& s : result.solutions) {
    if (!s.trivial()) ++out.nontrivial;
    const auto t = assemble(inst.base, n, s.partition, "candidate");
    if (viability_check(t, {factors}).holds) {
      ++out.viable;
      if (!s.trivial()) ++out.viable_nontrivial;
    }
  }
  return out;
}

int cmd_stat_build(const TableChoice& choice, int max_length, const std::string& out_path) {
  const StatisticTable t =
      choice.file.empty() ? StatisticTable::builtin(choice.stat, max_length) : load_table(choice.file);
  if (!out_path.empty()) save_table(t, out_path);
  json classes = json::array();
  for (int n = 0; n <= t.max_length(); ++n) classes.push_back(t.num_classes(n));
  emit(json{{"schema", kSchema},
            {"op", "stat.build"},
            {"name", t.name()},
            {"max_length", t.max_length()},
            {"classes_per_level", classes},
            {"out", out_path.empty() ? json(nullptr) : json(out_path)}});
  return 0;
}

int cmd_stat_eval(const std::string& perm_text) {
  const Permutation p = Permutation::parse(perm_text);
  emit(json{{"schema", kSchema},
            {"op", "stat.eval"},
            {"perm", p.str()},
            {"values",
             json{{"Des", descent_set(p)},
                  {"maj", major_index(p)},
                  {"Pk", peak_set(p)},
                  {"Val", valley_set(p)},
                  {"inv", inversion_count(p)},
                  {"dis", standardize(p).str()},
                  {"triv", 0}}}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permutation statistics, shuffle algebras, and the bicompatibility search"};
  app.require_subcommand(1);

  // ---- stat ----
  auto* stat = app.add_subcommand("stat", "build statistic tables and evaluate raw statistics");
  stat->require_subcommand(1);
  auto* stat_build = stat->add_subcommand("build", "materialize a statistic table");
  TableChoice stat_build_choice;
  int stat_build_len = 5;
  std::string stat_build_out;
  stat_build_choice.attach(stat_build);
  stat_build->add_option("--max-length", stat_build_len, "levels 0..N")->check(CLI::Range(0, 7));
  stat_build->add_option("--out", stat_build_out, "write the table as JSON");
  auto* stat_eval = stat->add_subcommand("eval", "evaluate the classical statistics on one permutation");
  std::string eval_perm;
  stat_eval->add_option("--perm", eval_perm, "permutation, e.g. 29546 or 2,9,5,4,6")->required();

  // ---- check ----
  auto* check = app.add_subcommand("check", "compatibility checks");
  check->require_subcommand(1);
  auto* check_shuffle = check->add_subcommand("shuffle", "shuffle compatibility");
  TableChoice shuffle_choice;
  shuffle_choice.attach(check_shuffle);
  std::string shuffle_mode = "strong";
  int shuffle_upto = 5;
  check_shuffle->add_option("--mode", shuffle_mode)->check(CLI::IsMember({"strong", "weak"}));
  check_shuffle->add_option("--upto", shuffle_upto, "max total length")->check(CLI::Range(2, 7));
  auto* check_substring = check->add_subcommand("substring", "substring compatibility");
  TableChoice substring_choice;
  substring_choice.attach(check_substring);
  int substring_upto = 5;
  check_substring->add_option("--upto", substring_upto, "max length")->check(CLI::Range(1, 7));
  auto* check_bicompat = check->add_subcommand("bicompat", "shuffle plus substring compatibility");
  TableChoice bicompat_choice;
  bicompat_choice.attach(check_bicompat);
  std::string bicompat_mode = "strong";
  int bicompat_upto = 5;
  check_bicompat->add_option("--mode", bicompat_mode)->check(CLI::IsMember({"strong", "weak"}));
  check_bicompat->add_option("--upto", bicompat_upto)->check(CLI::Range(2, 7));

  // ---- algebra ----
  auto* algebra = app.add_subcommand("algebra", "shuffle algebra and substring coalgebra structure");
  algebra->require_subcommand(1);
  auto* alg_product = algebra->add_subcommand("product", "structure constants of a basis product");
  TableChoice product_choice;
  product_choice.attach(alg_product);
  std::string product_a, product_b, product_mode = "strong";
  alg_product->add_option("--a", product_a)->required();
  alg_product->add_option("--b", product_b)->required();
  alg_product->add_option("--mode", product_mode)->check(CLI::IsMember({"strong", "weak"}));
  auto* alg_coproduct = algebra->add_subcommand("coproduct", "prefix/suffix coproduct of a basis class");
  TableChoice coproduct_choice;
  coproduct_choice.attach(alg_coproduct);
  std::string coproduct_a;
  alg_coproduct->add_option("--a", coproduct_a)->required();
  auto* alg_antipode = algebra->add_subcommand("antipode", "antipode of a basis class");
  TableChoice antipode_choice;
  antipode_choice.attach(alg_antipode);
  std::string antipode_a;
  alg_antipode->add_option("--a", antipode_a)->required();
  auto* alg_bialgebra = algebra->add_subcommand("bialgebra", "bialgebra compatibility check");
  TableChoice bialgebra_choice;
  bialgebra_choice.attach(alg_bialgebra);
  int bialgebra_upto = 4;
  std::string bialgebra_mode = "weak";
  alg_bialgebra->add_option("--upto", bialgebra_upto)->check(CLI::Range(0, 6));
  alg_bialgebra->add_option("--mode", bialgebra_mode)->check(CLI::IsMember({"strong", "weak"}));
  auto* alg_quotient = algebra->add_subcommand("quotient", "class-collapsing Hopf homomorphism check");
  std::string quotient_fine, quotient_coarse;
  int quotient_upto = 4;
  alg_quotient->add_option("--fine", quotient_fine)->required();
  alg_quotient->add_option("--coarse", quotient_coarse)->required();
  alg_quotient->add_option("--upto", quotient_upto)->check(CLI::Range(0, 6));

  // ---- qsym ----
  auto* qsym = app.add_subcommand("qsym", "quasisymmetric polynomial model");
  qsym->require_subcommand(1);
  auto* qsym_verify = qsym->add_subcommand("verify", "check the descent-class fundamental correspondence");
  int qsym_upto = 4;
  qsym_verify->add_option("--upto", qsym_upto)->check(CLI::Range(1, 6));
  auto* qsym_expand = qsym->add_subcommand("expand", "expand a fundamental polynomial");
  std::string expand_alpha;
  int expand_vars = 0;
  qsym_expand->add_option("--alpha", expand_alpha, "composition, e.g. 2,1")->required();
  qsym_expand->add_option("--vars", expand_vars, "variable count (default: weight)");

  // ---- search ----
  auto* search = app.add_subcommand("search", "level-extension search");
  search->require_subcommand(1);
  auto* search_bound = search->add_subcommand("bound", "class-count bound and size divisor");
  int bound_n = 0;
  search_bound->add_option("--n", bound_n)->required()->check(CLI::Range(2, 20));
  auto* search_enum = search->add_subcommand("enumerate", "enumerate all compatible level extensions");
  auto* search_filter = search->add_subcommand("filter", "enumerate, then apply the viability condition");
  auto* search_dimacs = search->add_subcommand("dimacs", "export the constraint system as DIMACS CNF");
  struct SearchArgs {
    TableChoice base;
    int n = 4;
    int max_classes = 0;
    bool require_substring = false;
    int jobs = 1;
    std::string checkpoint, log, out;
    std::string factors;
    bool verbose = false;
  };
  SearchArgs enum_args, filter_args, dimacs_args;
  auto attach_search = [](CLI::App* cmd, SearchArgs& args, bool with_run_opts) {
    cmd->add_option("--n", args.n, "level to extend")->required()->check(CLI::Range(1, 6));
    args.base.attach(cmd, false);
    cmd->add_option("--max-classes", args.max_classes, "class budget (default: bound)");
    cmd->add_flag("--require-substring", args.require_substring, "extensions must refine the lifted base");
    if (with_run_opts) {
      cmd->add_option("--jobs", args.jobs)->check(CLI::Range(1, 64));
      cmd->add_option("--checkpoint", args.checkpoint, "resumable progress file");
      cmd->add_option("--log", args.log, "append-only solution log");
      cmd->add_flag("--verbose", args.verbose, "progress on stderr");
    }
  };
  attach_search(search_enum, enum_args, true);
  attach_search(search_filter, filter_args, true);
  attach_search(search_dimacs, dimacs_args, false);
  search_filter->add_option("--factors", filter_args.factors, "viability factor pairs, e.g. 2,4;1,4");
  search_dimacs->add_option("--out", dimacs_args.out, "CNF path")->required();

  // ---- reproduce ----
  auto* reproduce = app.add_subcommand("reproduce", "canned end-to-end computations");
  reproduce->require_subcommand(1);
  auto* rep_theorem = reproduce->add_subcommand(
      "theorem-progress", "level-by-level extension counts with viability filtering, plus the length-6 bound");
  int rep_upto = 4;
  int rep_jobs = 1;
  rep_theorem->add_option("--upto", rep_upto)->check(CLI::Range(3, 5));
  rep_theorem->add_option("--jobs", rep_jobs)->check(CLI::Range(1, 64));
  auto* rep_lemma = reproduce->add_subcommand("lemma-n3", "the five level-3 extensions and their filtering");
  auto* rep_pk = reproduce->add_subcommand("pk-case", "peak-set extensions at level 4 and their viability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    // stat
    if (stat_build->parsed()) return cmd_stat_build(stat_build_choice, stat_build_len, stat_build_out);
    if (stat_eval->parsed()) return cmd_stat_eval(eval_perm);

    // check
    if (check_shuffle->parsed()) {
      const auto t = shuffle_choice.get(shuffle_upto);
      const auto mode = shuffle_mode == "strong" ? ShuffleMode::Strong : ShuffleMode::Weak;
      const auto v = check_shuffle_compatible(t, mode, shuffle_upto);
      return finish_verdict(json{{"schema", kSchema},
                                 {"op", "check.shuffle"},
                                 {"stat", t.name()},
                                 {"mode", shuffle_mode},
                                 {"upto", shuffle_upto}},
                            v);
    }
    if (check_substring->parsed()) {
      const auto t = substring_choice.get(substring_upto);
      const auto v = check_substring_compatible(t);
      return finish_verdict(
          json{{"schema", kSchema}, {"op", "check.substring"}, {"stat", t.name()}, {"upto", t.max_length()}}, v);
    }
    if (check_bicompat->parsed()) {
      const auto t = bicompat_choice.get(bicompat_upto);
      const auto mode = bicompat_mode == "strong" ? ShuffleMode::Strong : ShuffleMode::Weak;
      auto v = check_shuffle_compatible(t, mode, bicompat_upto);
      std::string failed = v.holds ? "" : "shuffle";
      if (v.holds) {
        v = check_substring_compatible(t);
        if (!v.holds) failed = "substring";
      }
      json doc{{"schema", kSchema},
               {"op", "check.bicompat"},
               {"stat", t.name()},
               {"mode", bicompat_mode},
               {"upto", bicompat_upto},
               {"failed_check", failed.empty() ? json(nullptr) : json(failed)}};
      return finish_verdict(std::move(doc), v);
    }

    // algebra
    if (alg_product->parsed()) {
      const Permutation a = Permutation::parse(product_a);
      const Permutation b = Permutation::parse(product_b);
      const auto t = product_choice.get(a.length() + b.length());
      StatisticAlgebra alg(t, product_mode == "strong" ? ShuffleMode::Strong : ShuffleMode::Weak);
      const auto result = alg.product(t.class_of(a), t.class_of(b));
      emit(json{{"schema", kSchema},
                {"op", "product"},
                {"stat", t.name()},
                {"basis", {a.str(), b.str()}},
                {"terms", vector_to_json(result)}});
      return 0;
    }
    if (alg_coproduct->parsed()) {
      const Permutation a = Permutation::parse(coproduct_a);
      const auto t = coproduct_choice.get(a.length());
      StatisticAlgebra alg(t, ShuffleMode::Weak);
      emit(json{{"schema", kSchema},
                {"op", "coproduct"},
                {"stat", t.name()},
                {"basis", {a.str()}},
                {"terms", tensor_to_json(alg.coproduct(t.class_of(a)))}});
      return 0;
    }
    if (alg_antipode->parsed()) {
      const Permutation a = Permutation::parse(antipode_a);
      const auto t = antipode_choice.get(a.length());
      StatisticAlgebra alg(t, ShuffleMode::Weak);
      emit(json{{"schema", kSchema},
                {"op", "antipode"},
                {"stat", t.name()},
                {"basis", {a.str()}},
                {"terms", vector_to_json(alg.antipode(t.class_of(a)))}});
      return 0;
    }
    if (alg_bialgebra->parsed()) {
      const auto t = bialgebra_choice.get(bialgebra_upto);
      StatisticAlgebra alg(t, bialgebra_mode == "strong" ? ShuffleMode::Strong : ShuffleMode::Weak);
      const auto v = alg.check_bialgebra(bialgebra_upto);
      return finish_verdict(json{{"schema", kSchema},
                                 {"op", "algebra.bialgebra"},
                                 {"stat", t.name()},
                                 {"mode", bialgebra_mode},
                                 {"upto", bialgebra_upto}},
                            v);
    }
    if (alg_quotient->parsed()) {
      const auto fine = StatisticTable::builtin(quotient_fine, quotient_upto);
      const auto coarse = StatisticTable::builtin(quotient_coarse, quotient_upto);
      const auto v = quotient_check(fine, coarse, quotient_upto);
      return finish_verdict(json{{"schema", kSchema},
                                 {"op", "algebra.quotient"},
                                 {"fine", quotient_fine},
                                 {"coarse", quotient_coarse},
                                 {"upto", quotient_upto}},
                            v);
    }

    // qsym
    if (qsym_verify->parsed()) {
      const auto v = verify_des_isomorphism(qsym_upto);
      json doc{{"schema", kSchema},
               {"op", "qsym.verify"},
               {"upto", qsym_upto},
               {"note", "peak classes are covered through the descent quotient; no separate peak-function "
                        "basis is constructed"}};
      return finish_verdict(std::move(doc), v);
    }
    if (qsym_expand->parsed()) {
      const Composition alpha = parse_composition(expand_alpha);
      const int vars = expand_vars > 0 ? expand_vars : weight(alpha);
      const auto f = fundamental_poly(alpha, vars);
      json terms = json::object();
      for (const auto& [e, c] : f.terms()) {
        std::string key;
        for (size_t i = 0; i < e.size(); ++i) {
          if (i) key += ',';
          key += std::to_string(e[i]);
        }
        terms[key] = c;
      }
      emit(json{{"schema", kSchema},
                {"op", "qsym.expand"},
                {"alpha", alpha},
                {"vars", vars},
                {"terms", terms}});
      return 0;
    }

    // search
    if (search_bound->parsed()) {
      emit(json{{"schema", kSchema},
                {"op", "search.bound"},
                {"n", bound_n},
                {"bound", class_count_bound(bound_n)},
                {"size_divisor", bound_n <= 12 ? json(class_size_divisor(bound_n)) : json(nullptr)}});
      return 0;
    }
    auto make_instance = [](const SearchArgs& args) {
      SearchInstance inst;
      inst.base = (args.base.stat.empty() && args.base.file.empty())
                      ? StatisticTable::builtin("triv", args.n - 1)
                      : args.base.get(args.n - 1);
      inst.level = args.n;
      if (args.max_classes != 0) inst.max_classes = args.max_classes;
      inst.require_substring = args.require_substring;
      return inst;
    };
    if (search_enum->parsed()) {
      const auto inst = make_instance(enum_args);
      SearchOptions opts{enum_args.jobs, enum_args.checkpoint, enum_args.log, 0, enum_args.verbose};
      const long long t0 = now_ms();
      const auto result = enumerate_level(inst, opts);
      json doc = search_summary(enum_args.n, result, now_ms() - t0, json(nullptr));
      doc["op"] = "search.enumerate";
      emit(doc);
      return 0;
    }
    if (search_filter->parsed()) {
      const auto inst = make_instance(filter_args);
      SearchOptions opts{filter_args.jobs, filter_args.checkpoint, filter_args.log, 0, filter_args.verbose};
      const auto factors = filter_args.factors.empty()
                               ? std::vector<std::pair<int, int>>{{2, filter_args.n}}
                               : parse_factors(filter_args.factors);
      const long long t0 = now_ms();
      const auto result = enumerate_level(inst, opts);
      long long viable = 0;
      json survivors = json::array();
      for (const auto& s : result.solutions) {
        const auto t = assemble(inst.base, filter_args.n, s.partition, "candidate");
        if (viability_check(t, factors).holds) {
          ++viable;
          const std::string name = identify_partition(filter_args.n, s.partition);
          survivors.push_back(name.empty() ? json(s.partition) : json(name));
        }
      }
      json doc = search_summary(filter_args.n, result, now_ms() - t0, json(viable));
      doc["op"] = "search.filter";
      json fl = json::array();
      for (const auto& [a, b] : factors) fl.push_back({a, b});
      doc["factors"] = fl;
      doc["survivors"] = survivors;
      emit(doc);
      return 0;
    }
    if (search_dimacs->parsed()) {
      const auto inst = make_instance(dimacs_args);
      const auto summary = export_dimacs(inst, dimacs_args.out);
      emit(json{{"schema", kSchema},
                {"op", "search.dimacs"},
                {"n", dimacs_args.n},
                {"out", dimacs_args.out},
                {"variables", summary.variables},
                {"clauses", summary.clauses}});
      return 0;
    }

    // reproduce
    if (rep_theorem->parsed()) {
      json levels = json::object();
      bool all_filtered_to_trivial = true;
      for (int n = 3; n <= rep_upto; ++n) {
        const auto row = reproduce_level(n, {2, n == 3 ? 2 : n}, rep_jobs);
        levels[std::to_string(n)] = json{{"solutions", row.solutions},
                                         {"nontrivial", row.nontrivial},
                                         {"factors", {2, n == 3 ? 2 : n}},
                                         {"viable", row.viable},
                                         {"viable_nontrivial", row.viable_nontrivial}};
        if (n >= 4 && row.viable_nontrivial != 0) all_filtered_to_trivial = false;
      }
      emit(json{{"schema", kSchema},
                {"recipe", "theorem-progress"},
                {"upto", rep_upto},
                {"levels", levels},
                {"n6_bound", class_count_bound(6)},
                {"n6_forced_trivial", rep_upto >= 5 && all_filtered_to_trivial}});
      return 0;
    }
    if (rep_lemma->parsed()) {
      SearchInstance inst{StatisticTable::builtin("triv", 2), 3, {}, false, {}};
      const auto sols = enumerate_level(inst);
      json partitions = json::array();
      json viable = json::array();
      bool forced = true;
      const int r312 = lex_rank(Permutation::parse("312")), r213 = lex_rank(Permutation::parse("213"));
      const int r132 = lex_rank(Permutation::parse("132")), r231 = lex_rank(Permutation::parse("231"));
      const int r123 = lex_rank(Permutation::parse("123")), r321 = lex_rank(Permutation::parse("321"));
      for (const auto& s : sols) {
        partitions.push_back(s.partition);
        forced = forced && s.partition[r312] == s.partition[r213] && s.partition[r132] == s.partition[r231] &&
                 s.partition[r123] == s.partition[r321];
        const auto t = assemble(inst.base, 3, s.partition, "candidate");
        if (viability_check(t, {{2, 2}}).holds) {
          const std::string name = identify_partition(3, s.partition);
          viable.push_back(name.empty() ? json(s.partition) : json(name));
        }
      }
      json forced_pairs = json::array();
      forced_pairs.push_back(json::array({"312", "213"}));
      forced_pairs.push_back(json::array({"132", "231"}));
      forced_pairs.push_back(json::array({"123", "321"}));
      emit(json{{"schema", kSchema},
                {"recipe", "lemma-n3"},
                {"solutions", static_cast<long long>(sols.size())},
                {"partitions", partitions},
                {"forced_pairs", forced_pairs},
                {"forced_pairs_hold", forced},
                {"factors", {2, 2}},
                {"viable", viable}});
      return 0;
    }
    if (rep_pk->parsed()) {
      SearchInstance inst{StatisticTable::builtin("Pk", 3), 4, 4, true, {}};
      const auto sols = enumerate_level(inst);
      json names = json::array();
      json viability = json::object();
      for (const auto& s : sols) {
        std::string name = identify_partition(4, s.partition);
        if (name.empty()) name = "unidentified";
        names.push_back(name);
        const auto t = assemble(inst.base, 4, s.partition, name);
        viability[name] = viability_check(t, {{1, 4}}).holds;
      }
      emit(json{{"schema", kSchema},
                {"recipe", "pk-case"},
                {"n", 4},
                {"max_classes", 4},
                {"require_substring", true},
                {"solutions", static_cast<long long>(sols.size())},
                {"identified", names},
                {"viability_factors", {1, 4}},
                {"viable", viability}});
      return 0;
    }
  } catch (const IncompatibleStatistic& e) {
    emit(json{{"schema", kSchema}, {"holds", false}, {"error", "IncompatibleStatistic"}, {"message", e.what()}});
    return 1;
  } catch (const NotARefinement& e) {
    emit(json{{"schema", kSchema}, {"holds", false}, {"error", "NotARefinement"}, {"message", e.what()}});
    return 1;
  } catch (const NotQuasisymmetric& e) {
    emit(json{{"schema", kSchema}, {"holds", false}, {"error", "NotQuasisymmetric"}, {"message", e.what()}});
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "usage error: no command selected\n";
  return 2;
}
