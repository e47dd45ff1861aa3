#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "strongnet/backbone.hpp"
#include "strongnet/corpus_stats.hpp"
#include "strongnet/errors.hpp"
#include "strongnet/feature_model.hpp"
#include "strongnet/net_metrics.hpp"
#include "strongnet/oracle.hpp"
#include "strongnet/report.hpp"

namespace py = pybind11;
using namespace strongnet;

namespace {

// Python sees literals as signed DIMACS integers.
std::vector<Literal> to_literals(const std::vector<std::int64_t>& xs) {
  std::vector<Literal> out;
  out.reserve(xs.size());
  for (auto x : xs) out.push_back(Literal::from_dimacs(x));
  return out;
}

std::vector<std::int64_t> to_ints(const std::vector<Literal>& ls) {
  std::vector<std::int64_t> out;
  out.reserve(ls.size());
  for (Literal l : ls) out.push_back(l.to_dimacs());
  return out;
}

py::dict relations_dict(const StrongRelationResult& r) {
  py::dict relations;
  for (const auto& [v, rel] : r.relations) {
    relations[py::int_(v)] = py::make_tuple(rel.depends_on, rel.conflicts_with);
  }
  py::dict out;
  out["core"] = r.classification.core;
  out["dead"] = r.classification.dead;
  out["configurable"] = r.classification.configurable;
  out["relations"] = relations;
  return out;
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Strong dependency and conflict graphs of Boolean variability models.";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<UnsatisfiableError>(m, "VoidModelError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());

  py::class_<CnfFormula>(m, "CnfFormula")
      .def(py::init([](Var num_vars, const std::vector<std::vector<std::int64_t>>& clauses,
                       std::map<Var, std::string> names) {
             std::vector<Clause> cs;
             for (const auto& c : clauses) cs.push_back(to_literals(c));
             return CnfFormula(num_vars, std::move(cs), std::move(names));
           }),
           py::arg("num_vars"), py::arg("clauses"), py::arg("names") = std::map<Var, std::string>{})
      .def_property_readonly("num_vars", &CnfFormula::num_vars)
      .def_property_readonly("clauses",
                             [](const CnfFormula& f) {
                               std::vector<std::vector<std::int64_t>> out;
                               for (const auto& c : f.clauses()) out.push_back(to_ints(c));
                               return out;
                             })
      .def_property_readonly("names", &CnfFormula::names)
      .def_property_readonly("has_empty_clause", &CnfFormula::has_empty_clause)
      .def("name_of", &CnfFormula::name_of)
      .def("find", &CnfFormula::find)
      .def("__eq__", [](const CnfFormula& a, const CnfFormula& b) { return a == b; })
      .def("__repr__", [](const CnfFormula& f) {
        return "<CnfFormula vars=" + std::to_string(f.num_vars()) +
               " clauses=" + std::to_string(f.clauses().size()) + ">";
      });

  m.def("parse_dimacs", &parse_dimacs_string, py::arg("text"));
  m.def("emit_dimacs", &emit_dimacs, py::arg("formula"));
  m.def("parse_fm", [](std::string_view text) { return fm_to_cnf(parse_fm_string(text)); }, py::arg("text"),
        "Parse a feature model and return its CNF encoding.");
  m.def(
      "load_formula",
      [](const std::filesystem::path& path, std::optional<std::string> format) {
        return load_formula(path, format ? parse_model_format(*format) : detect_model_format(path));
      },
      py::arg("path"), py::arg("format") = py::none());

  m.def(
      "solve",
      [](const CnfFormula& f, const std::vector<std::int64_t>& assumptions) -> std::optional<std::vector<std::int64_t>> {
        auto lits = to_literals(assumptions);
        SatOutcome r;
        {
          py::gil_scoped_release release;
          r = solve_under_assumptions(f, lits);
        }
        if (!r.sat()) return std::nullopt;
        return to_ints(r.model->literals());
      },
      py::arg("formula"), py::arg("assumptions") = std::vector<std::int64_t>{},
      "A model as signed literals, or None when unsatisfiable.");
  m.def(
      "count_models",
      [](const CnfFormula& f, Var limit) {
        std::size_t n = 0;
        for_each_model(f, [&](const Model&) { return ++n, true; }, limit);
        return n;
      },
      py::arg("formula"), py::arg("var_limit") = kDefaultEnumerationLimit);
  m.def(
      "backbone",
      [](const CnfFormula& f, const std::vector<std::int64_t>& assumptions) {
        auto lits = to_literals(assumptions);
        py::gil_scoped_release release;
        return to_ints(compute_backbone(f, lits).literals);
      },
      py::arg("formula"), py::arg("assumptions") = std::vector<std::int64_t>{});

  m.def(
      "strong_relations",
      [](const CnfFormula& f, unsigned jobs) {
        StrongRelationResult r;
        {
          py::gil_scoped_release release;
          r = extract_strong_relations(f, ExtractionOptions{jobs});
        }
        return relations_dict(r);
      },
      py::arg("formula"), py::arg("jobs") = 1);
  m.def(
      "oracle_relations", [](const CnfFormula& f) { return relations_dict(oracle_strong_relations(f)); },
      py::arg("formula"));

  py::class_<StrongGraphs>(m, "StrongGraphs")
      .def_readonly("nodes", &StrongGraphs::nodes)
      .def_readonly("dep_arcs", &StrongGraphs::dep_arcs)
      .def_readonly("conflict_edges", &StrongGraphs::conflict_edges)
      .def_property_readonly("core", [](const StrongGraphs& g) { return g.classification.core; })
      .def_property_readonly("dead", [](const StrongGraphs& g) { return g.classification.dead; })
      .def_readonly("names", &StrongGraphs::names)
      .def("label", &StrongGraphs::label)
      .def("export", [](const StrongGraphs& g, std::string_view fmt) { return export_graph(g, parse_graph_format(fmt)); },
           py::arg("format"))
      .def("to_json", [](const StrongGraphs& g) { return json_to_py(graphs_to_json(g)); });

  m.def(
      "strong_graphs",
      [](const CnfFormula& f, unsigned jobs) {
        py::gil_scoped_release release;
        return compute_strong_graphs(f, ExtractionOptions{jobs});
      },
      py::arg("formula"), py::arg("jobs") = 1);

  m.def(
      "analyze",
      [](const CnfFormula& f, std::string model_id, double threshold_pct) {
        ModelAnalysis a;
        {
          py::gil_scoped_release release;
          a = analyze_formula(f, std::move(model_id), AnalysisOptions{threshold_pct, kDefaultHistogramBinPct, 1});
        }
        return json_to_py(summary_json(a));
      },
      py::arg("formula"), py::arg("model_id") = "model", py::arg("threshold_pct") = kDefaultHighDegreeThresholdPct,
      "Summary of the model's strong graphs as a dict.");

  m.def(
      "validate",
      [](const CnfFormula& f, const StrongGraphs& g, std::size_t sample, std::uint64_t seed) {
        ValidationOptions o;
        o.sample_size = sample;
        o.seed = seed;
        ValidationReport r;
        {
          py::gil_scoped_release release;
          r = validate_model(f, g, o);
        }
        return json_to_py(validation_to_json(r, g));
      },
      py::arg("formula"), py::arg("graphs"), py::arg("sample") = 1000, py::arg("seed") = 0);

  m.def(
      "analyze_corpus",
      [](const std::filesystem::path& manifest, const std::filesystem::path& out_dir, unsigned jobs,
         double threshold_pct) {
        CorpusOptions o;
        o.jobs = jobs;
        o.out_dir = out_dir;
        o.analysis.threshold_pct = threshold_pct;
        CorpusResult r;
        {
          py::gil_scoped_release release;
          r = analyze_corpus(load_manifest(manifest), o);
        }
        return py::make_tuple(r.records.size(), r.failures.size());
      },
      py::arg("manifest"), py::arg("out_dir"), py::arg("jobs") = 1,
      py::arg("threshold_pct") = kDefaultHighDegreeThresholdPct,
      "Writes the corpus tables to out_dir; returns (analysed, failed).");

  m.def(
      "median_and_coverage",
      [](const std::vector<double>& v) {
        StatsSummary s = median_and_coverage(v);
        return py::make_tuple(s.median, s.ci_low, s.ci_high);
      },
      py::arg("values"));
  m.def(
      "spearman_rho", [](const std::vector<double>& x, const std::vector<double>& y) { return spearman_rho(x, y); },
      py::arg("x"), py::arg("y"));
  m.def(
      "wilcoxon",
      [](const std::vector<double>& a, const std::vector<double>& b, std::string_view alternative) {
        Alternative alt;
        if (alternative == "greater") {
          alt = Alternative::AGreater;
        } else if (alternative == "less") {
          alt = Alternative::BGreater;
        } else {
          throw InvalidArgument("alternative must be 'greater' or 'less'");
        }
        WilcoxonResult r = wilcoxon_signed_rank(a, b, alt);
        py::dict out;
        out["n"] = r.n_effective;
        out["statistic"] = r.statistic;
        out["z"] = r.z_value;
        out["p_value"] = r.p_value;
        out["r"] = r.effect_size;
        out["effect"] = to_string(r.effect);
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("alternative") = "greater");
}
