// Python bindings for the core operations. Permutations cross the boundary
// as plain lists of letters; classes as (level, index) pairs; verdicts as
// dicts with a "holds" flag and an optional "witness".

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "permstat/algebra.hpp"
#include "permstat/errors.hpp"
#include "permstat/qsym.hpp"
#include "permstat/search.hpp"
#include "permstat/table_io.hpp"

namespace py = pybind11;
using namespace permstat;

namespace {

Permutation to_perm(const std::vector<int>& letters) { return Permutation(letters); }

std::vector<std::vector<int>> from_perms(const std::vector<Permutation>& perms) {
  std::vector<std::vector<int>> out;
  out.reserve(perms.size());
  for (const auto& p : perms) out.push_back(p.letters());
  return out;
}

ShuffleMode parse_mode(const std::string& mode) {
  if (mode == "strong") return ShuffleMode::Strong;
  if (mode == "weak") return ShuffleMode::Weak;
  throw ParseError("mode must be 'strong' or 'weak'");
}

std::pair<int, int> from_class(ClassId c) { return {c.level, c.index}; }
ClassId to_class(std::pair<int, int> c) { return ClassId{c.first, c.second}; }

py::dict verdict_to_dict(const CompatVerdict& v) {
  py::dict out;
  out["holds"] = v.holds;
  if (v.witness) {
    py::dict w;
    w["kind"] = v.witness->kind;
    w["perms"] = from_perms(v.witness->perms);
    w["multisets"] = v.witness->multisets;
    w["windows"] = v.witness->windows;
    out["witness"] = w;
  } else {
    out["witness"] = py::none();
  }
  return out;
}

py::dict vector_to_dict(const GradedVector& v) {
  py::dict out;
  for (const auto& [c, coeff] : v) out[py::make_tuple(c.level, c.index)] = coeff;
  return out;
}

py::dict tensor_to_dict(const TensorTerms& t) {
  py::dict out;
  for (const auto& [pair, coeff] : t)
    out[py::make_tuple(py::make_tuple(pair.first.level, pair.first.index),
                       py::make_tuple(pair.second.level, pair.second.index))] = coeff;
  return out;
}

}  // namespace

PYBIND11_MODULE(_permstat, m) {
  m.doc() = "permutation statistics, shuffle algebras, substring coalgebras, and the bicompatibility search";
  m.attr("__version__") = "1.0.0";

  py::register_exception<Error>(m, "PermstatError");

  // Permutation calculus. Permutations are lists of distinct positive ints.
  m.def("standardize", [](const std::vector<int>& p) { return standardize(to_perm(p)).letters(); }, py::arg("p"));
  m.def(
      "shuffles",
      [](const std::vector<int>& p, const std::vector<int>& q) {
        return from_perms(shuffles(to_perm(p), to_perm(q)));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "window", [](const std::vector<int>& p, int i, int j) { return window(to_perm(p), i, j).letters(); },
      py::arg("p"), py::arg("i"), py::arg("j"), "contiguous substring at 1-based positions i..j");
  m.def("complement", [](const std::vector<int>& p) { return complement(to_perm(p)).letters(); }, py::arg("p"));
  m.def(
      "concat",
      [](const std::vector<int>& p, const std::vector<int>& q) {
        return concat(to_perm(p), to_perm(q)).letters();
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "shifted", [](const std::vector<int>& q, int k) { return shifted(to_perm(q), k).letters(); },
      py::arg("q"), py::arg("k"));
  m.def("parse_permutation", [](const std::string& text) { return Permutation::parse(text).letters(); },
        py::arg("text"));
  m.def("lex_rank", [](const std::vector<int>& p) { return lex_rank(to_perm(p)); }, py::arg("p"));
  m.def("nth_permutation", [](int n, long long rank) { return nth_permutation(n, rank).letters(); },
        py::arg("n"), py::arg("rank"));
  m.def("standard_permutations", [](int n) { return from_perms(standard_permutations(n)); }, py::arg("n"));

  // Raw statistic evaluators.
  m.def("descent_set", [](const std::vector<int>& p) { return descent_set(to_perm(p)); }, py::arg("p"));
  m.def("major_index", [](const std::vector<int>& p) { return major_index(to_perm(p)); }, py::arg("p"));
  m.def("peak_set", [](const std::vector<int>& p) { return peak_set(to_perm(p)); }, py::arg("p"));
  m.def("valley_set", [](const std::vector<int>& p) { return valley_set(to_perm(p)); }, py::arg("p"));
  m.def("inversion_count", [](const std::vector<int>& p) { return inversion_count(to_perm(p)); }, py::arg("p"));

  // Statistic tables.
  py::class_<StatisticTable>(m, "StatisticTable")
      .def_static("builtin", &StatisticTable::builtin, py::arg("name"), py::arg("max_length"))
      .def_static("from_levels", &StatisticTable::from_levels, py::arg("name"), py::arg("levels"))
      .def_property_readonly("name", &StatisticTable::name)
      .def_property_readonly("max_length", &StatisticTable::max_length)
      .def("num_classes", &StatisticTable::num_classes, py::arg("level"))
      .def("level", &StatisticTable::level, py::arg("n"))
      .def(
          "class_of",
          [](const StatisticTable& t, const std::vector<int>& p) { return from_class(t.class_of(to_perm(p))); },
          py::arg("p"))
      .def(
          "representative",
          [](const StatisticTable& t, std::pair<int, int> c) { return t.representative(to_class(c)).letters(); },
          py::arg("class_id"))
      .def(
          "class_members",
          [](const StatisticTable& t, std::pair<int, int> c) { return from_perms(t.class_members(to_class(c))); },
          py::arg("class_id"))
      .def("trivial_through", &StatisticTable::trivial_through, py::arg("n"))
      .def("to_json", [](const StatisticTable& t) { return table_to_json_string(t); })
      .def_static("from_json", &table_from_json_string, py::arg("text"))
      .def("save", [](const StatisticTable& t, const std::string& path) { save_table(t, path); }, py::arg("path"))
      .def_static("load", &load_table, py::arg("path"))
      .def("__eq__", [](const StatisticTable& a, const StatisticTable& b) { return a == b; })
      .def("__repr__", [](const StatisticTable& t) {
        return "<StatisticTable '" + t.name() + "' up to length " + std::to_string(t.max_length()) + ">";
      });

  m.def(
      "refines",
      [](const StatisticTable& s, const StatisticTable& t, int upto) {
        const auto r = refines(s, t, upto);
        return py::make_tuple(r.refines,
                              r.witness ? py::cast(std::make_pair(r.witness->first.letters(),
                                                                  r.witness->second.letters()))
                                        : py::none().cast<py::object>());
      },
      py::arg("s"), py::arg("t"), py::arg("upto"));
  m.def("equivalent", &equivalent, py::arg("s"), py::arg("t"), py::arg("upto"));
  m.def("lift_partition", &lift_partition, py::arg("level"), py::arg("n"), py::arg("k"));

  // Compatibility checks and related machinery.
  m.def(
      "check_shuffle_compatible",
      [](const StatisticTable& t, const std::string& mode, int upto) {
        return verdict_to_dict(check_shuffle_compatible(t, parse_mode(mode), upto));
      },
      py::arg("table"), py::arg("mode"), py::arg("upto"));
  m.def(
      "check_substring_compatible",
      [](const StatisticTable& t) { return verdict_to_dict(check_substring_compatible(t)); }, py::arg("table"));
  m.def("ab_move_closure", &ab_move_closure, py::arg("base"), py::arg("n"));
  m.def("rsk_recording", [](const std::vector<int>& p) { return rsk_recording(to_perm(p)).rows; }, py::arg("p"));
  m.def("dual_knuth_table", &dual_knuth_table, py::arg("max_length"));

  // Algebra structure.
  py::class_<StatisticAlgebra>(m, "StatisticAlgebra")
      .def(py::init([](const StatisticTable& t, const std::string& mode) {
             return std::make_unique<StatisticAlgebra>(t, parse_mode(mode));
           }),
           py::arg("table"), py::arg("mode") = "weak")
      .def(
          "product",
          [](const StatisticAlgebra& a, std::pair<int, int> x, std::pair<int, int> y) {
            return vector_to_dict(a.product(to_class(x), to_class(y)));
          },
          py::arg("a"), py::arg("b"))
      .def(
          "coproduct",
          [](const StatisticAlgebra& a, std::pair<int, int> x) { return tensor_to_dict(a.coproduct(to_class(x))); },
          py::arg("a"))
      .def(
          "antipode",
          [](const StatisticAlgebra& a, std::pair<int, int> x) { return vector_to_dict(a.antipode(to_class(x))); },
          py::arg("a"))
      .def(
          "antipode_takeuchi",
          [](const StatisticAlgebra& a, std::pair<int, int> x) {
            return vector_to_dict(a.antipode_takeuchi(to_class(x)));
          },
          py::arg("a"))
      .def(
          "check_bialgebra",
          [](const StatisticAlgebra& a, int upto) { return verdict_to_dict(a.check_bialgebra(upto)); },
          py::arg("upto"));
  m.def(
      "quotient_check",
      [](const StatisticTable& fine, const StatisticTable& coarse, int upto) {
        return verdict_to_dict(quotient_check(fine, coarse, upto));
      },
      py::arg("fine"), py::arg("coarse"), py::arg("upto"));

  // Quasisymmetric model.
  m.def("comp_of", [](const std::vector<int>& p) { return comp_of(to_perm(p)); }, py::arg("p"));
  m.def("composition_refinements", &refinements, py::arg("alpha"));
  m.def("composition_coarsenings", &coarsenings, py::arg("alpha"));
  m.def(
      "fundamental_poly",
      [](const Composition& alpha, int vars) {
        const TruncatedPolynomial f = fundamental_poly(alpha, vars);
        py::dict out;
        for (const auto& [e, c] : f.terms()) out[py::tuple(py::cast(e))] = c;
        return out;
      },
      py::arg("alpha"), py::arg("vars"));
  m.def(
      "verify_des_isomorphism", [](int upto) { return verdict_to_dict(verify_des_isomorphism(upto)); },
      py::arg("upto"));

  // Search.
  m.def("binomial", &binomial, py::arg("n"), py::arg("k"));
  m.def("class_count_bound", &class_count_bound, py::arg("n"));
  m.def("class_size_divisor", &class_size_divisor, py::arg("n"));
  m.def(
      "enumerate_level",
      [](const StatisticTable& base, int level, py::object max_classes, bool require_substring,
         py::object must_refine, int jobs) {
        SearchInstance inst;
        inst.base = base;
        inst.level = level;
        if (!max_classes.is_none()) inst.max_classes = max_classes.cast<int>();
        inst.require_substring = require_substring;
        if (!must_refine.is_none()) inst.must_refine = must_refine.cast<std::vector<int>>();
        SearchOptions opts;
        opts.jobs = jobs;
        const auto result = enumerate_level(inst, opts);
        py::list out;
        for (const auto& s : result.solutions) out.append(py::make_tuple(s.partition, s.class_sizes));
        return out;
      },
      py::arg("base"), py::arg("level"), py::arg("max_classes") = py::none(),
      py::arg("require_substring") = false, py::arg("must_refine") = py::none(), py::arg("jobs") = 1);
  m.def("assemble", &assemble, py::arg("base"), py::arg("level"), py::arg("partition"), py::arg("name"));
  m.def(
      "viability_check",
      [](const StatisticTable& t, const std::vector<std::pair<int, int>>& factors) {
        return verdict_to_dict(viability_check(t, factors));
      },
      py::arg("table"), py::arg("factor_lengths"));
  m.def(
      "export_dimacs",
      [](const StatisticTable& base, int level, py::object max_classes, bool require_substring,
         const std::string& path) {
        SearchInstance inst;
        inst.base = base;
        inst.level = level;
        if (!max_classes.is_none()) inst.max_classes = max_classes.cast<int>();
        inst.require_substring = require_substring;
        const auto summary = export_dimacs(inst, path);
        py::dict out;
        out["variables"] = summary.variables;
        out["clauses"] = summary.clauses;
        return out;
      },
      py::arg("base"), py::arg("level"), py::arg("max_classes"), py::arg("require_substring"), py::arg("path"));
}
