#include "strongnet/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "strongnet/errors.hpp"
#include "strongnet/feature_model.hpp"

namespace strongnet {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

ModelFormat parse_model_format(std::string_view name) {
  if (name == "dimacs") return ModelFormat::Dimacs;
  if (name == "fm") return ModelFormat::Fm;
  throw InvalidArgument("unknown model format '" + std::string(name) + "' (expected dimacs|fm)");
}

ModelFormat detect_model_format(const fs::path& path) {
  return path.extension() == ".fm" ? ModelFormat::Fm : ModelFormat::Dimacs;
}

CnfFormula load_formula(const fs::path& path, ModelFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  if (format == ModelFormat::Fm) return fm_to_cnf(parse_fm(in));
  return parse_dimacs(in);
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "dot") return GraphFormat::Dot;
  if (name == "graphml") return GraphFormat::GraphML;
  if (name == "json") return GraphFormat::Json;
  throw InvalidArgument("unknown graph format '" + std::string(name) + "' (expected dot|graphml|json)");
}

namespace {

std::string dot_id(const std::string& s) {
  bool plain = !s.empty() && !std::isdigit(static_cast<unsigned char>(s[0])) &&
               std::all_of(s.begin(), s.end(), [](char c) {
                 return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
               });
  if (plain) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string export_dot(const StrongGraphs& g) {
  std::ostringstream out;
  out << "digraph strong_graphs {\n";
  out << "  // core: " << g.classification.core.size()
      << ", dead: " << g.classification.dead.size() << "\n";
  for (Var v : g.nodes) out << "  " << dot_id(g.label(v)) << ";\n";
  for (const auto& [f, t] : g.dep_arcs) {
    out << "  " << dot_id(g.label(f)) << " -> " << dot_id(g.label(t)) << " [relation=requires];\n";
  }
  for (const auto& [a, b] : g.conflict_edges) {
    out << "  " << dot_id(g.label(a)) << " -> " << dot_id(g.label(b))
        << " [relation=excludes, dir=none, style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_graphml(const StrongGraphs& g) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\" "
         "xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\" "
         "xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
         "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
         "  <key id=\"var\" for=\"node\" attr.name=\"var\" attr.type=\"int\"/>\n"
         "  <key id=\"relation\" for=\"edge\" attr.name=\"relation\" attr.type=\"string\"/>\n"
         "  <graph id=\"strong_graphs\" edgedefault=\"directed\">\n";
  for (Var v : g.nodes) {
    out << "    <node id=\"n" << v << "\"><data key=\"label\">" << xml_escape(g.label(v))
        << "</data><data key=\"var\">" << v << "</data></node>\n";
  }
  // Generic readers reject graphs mixing directed and undirected edges, so a
  // conflict is one edge from the smaller to the larger index, told apart
  // from dependencies by its relation attribute alone.
  std::size_t id = 0;
  for (const auto& [f, t] : g.dep_arcs) {
    out << "    <edge id=\"e" << id++ << "\" source=\"n" << f << "\" target=\"n" << t
        << "\"><data key=\"relation\">requires</data></edge>\n";
  }
  for (const auto& [a, b] : g.conflict_edges) {
    out << "    <edge id=\"e" << id++ << "\" source=\"n" << a << "\" target=\"n" << b
        << "\"><data key=\"relation\">excludes</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

}  // namespace

json graphs_to_json(const StrongGraphs& g) {
  json names = json::object();
  for (Var v = 1; v <= g.num_vars(); ++v) {
    if (auto it = g.names.find(v); it != g.names.end()) names[std::to_string(v)] = it->second;
  }
  json requires_ = json::array();
  for (const auto& [f, t] : g.dep_arcs) requires_.push_back({f, t});
  json excludes = json::array();
  for (const auto& [a, b] : g.conflict_edges) excludes.push_back({a, b});
  return json{{"format", "strongnet-graphs"},
              {"version", 1},
              {"num_vars", g.num_vars()},
              {"names", names},
              {"core", g.classification.core},
              {"dead", g.classification.dead},
              {"nodes", g.nodes},
              {"requires", requires_},
              {"excludes", excludes}};
}

StrongGraphs graphs_from_json(const json& doc) {
  try {
    if (doc.at("format") != "strongnet-graphs") throw InvalidArgument("not a strongnet graph document");
    StrongGraphs g;
    g.classification.core = doc.at("core").get<std::vector<Var>>();
    g.classification.dead = doc.at("dead").get<std::vector<Var>>();
    g.nodes = doc.at("nodes").get<std::vector<Var>>();
    g.classification.configurable = g.nodes;
    for (const auto& arc : doc.at("requires")) g.dep_arcs.emplace_back(arc.at(0).get<Var>(), arc.at(1).get<Var>());
    for (const auto& e : doc.at("excludes")) {
      g.conflict_edges.push_back(std::minmax(e.at(0).get<Var>(), e.at(1).get<Var>()));
    }
    for (const auto& [key, value] : doc.at("names").items()) {
      g.names.emplace(static_cast<Var>(std::stoul(key)), value.get<std::string>());
    }
    std::sort(g.dep_arcs.begin(), g.dep_arcs.end());
    std::sort(g.conflict_edges.begin(), g.conflict_edges.end());
    return g;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed graph document: ") + e.what());
  }
}

std::string export_graph(const StrongGraphs& graphs, GraphFormat format) {
  switch (format) {
    case GraphFormat::Dot: return export_dot(graphs);
    case GraphFormat::GraphML: return export_graphml(graphs);
    case GraphFormat::Json: return graphs_to_json(graphs).dump(2) + "\n";
  }
  throw InvalidArgument("unknown graph format");
}

json relations_to_json(const StrongRelationResult& result, const CnfFormula& formula) {
  auto labels = [&](const std::vector<Var>& vars) {
    json out = json::array();
    for (Var v : vars) out.push_back(formula.name_of(v));
    return out;
  };
  json relations = json::object();
  for (const auto& [v, rel] : result.relations) {
    relations[formula.name_of(v)] = {{"requires", labels(rel.depends_on)},
                                     {"excludes", labels(rel.conflicts_with)}};
  }
  return json{{"core", labels(result.classification.core)},
              {"dead", labels(result.classification.dead)},
              {"configurable", labels(result.classification.configurable)},
              {"relations", relations}};
}

json validation_to_json(const ValidationReport& report, const StrongGraphs& graphs) {
  json discrepancies = json::array();
  for (const auto& d : report.discrepancies) {
    json features = json::array();
    for (Var v : d.features) features.push_back(graphs.label(v));
    discrepancies.push_back({{"kind", d.kind},
                             {"features", features},
                             {"expected", d.expected},
                             {"actual", d.actual}});
  }
  return json{{"model_id", report.model_id},
              {"passed", report.passed()},
              {"checked_nodes", report.checked_nodes},
              {"checked_arcs", report.checked_arcs},
              {"checked_edges", report.checked_edges},
              {"checked_core", report.checked_core},
              {"checked_dead", report.checked_dead},
              {"checked_absences", report.checked_absences},
              {"discrepancies", discrepancies}};
}

ModelAnalysis analyze_formula(const CnfFormula& formula, std::string model_id,
                              const AnalysisOptions& options) {
  ModelAnalysis a;
  a.model_id = std::move(model_id);
  a.graphs = compute_strong_graphs(formula, ExtractionOptions{options.jobs});
  a.metrics = compute_model_metrics(a.graphs, options.threshold_pct, a.model_id);
  return a;
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json extreme_degree(const ModelAnalysis& a, std::size_t NodeMetrics::*field) {
  std::size_t best = 0;
  for (const auto& n : a.metrics.nodes) best = std::max(best, n.*field);
  json features = json::array();
  if (best > 0) {
    for (const auto& n : a.metrics.nodes) {
      if (n.*field == best) features.push_back(a.graphs.label(n.feature));
    }
  }
  return json{{"degree", best}, {"features", features}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_optional(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

json summary_json(const ModelAnalysis& a) {
  const auto& m = a.metrics;
  auto labels = [&](const std::vector<Var>& vars) {
    json out = json::array();
    for (Var v : vars) out.push_back(a.graphs.label(v));
    return out;
  };
  std::size_t high_in = 0, high_out = 0, high_conflict = 0;
  for (const auto& n : m.nodes) {
    high_in += n.high_in;
    high_out += n.high_out;
    high_conflict += n.high_conflict;
  }
  return json{{"model_id", a.model_id},
              {"num_vars", m.num_vars},
              {"num_configurable", m.num_configurable},
              {"num_core", m.num_core},
              {"num_dead", m.num_dead},
              {"core_pct", m.core_pct},
              {"dead_pct", m.dead_pct},
              {"num_arcs", m.num_arcs},
              {"num_edges", m.num_edges},
              {"require_density_x", m.require_density},
              {"exclude_density_x", m.exclude_density},
              {"threshold_pct", m.threshold_pct},
              {"num_high_in", high_in},
              {"num_high_out", high_out},
              {"num_high_conflict", high_conflict},
              {"high_in_also_high_out_pct", optional_number(m.high_in_also_high_out_pct)},
              {"high_in_also_high_conflict_pct", optional_number(m.high_in_also_high_conflict_pct)},
              {"max_in_degree", extreme_degree(a, &NodeMetrics::in_degree)},
              {"max_out_degree", extreme_degree(a, &NodeMetrics::out_degree)},
              {"max_conflict_degree", extreme_degree(a, &NodeMetrics::conflict_degree)},
              {"core", labels(a.graphs.classification.core)},
              {"dead", labels(a.graphs.classification.dead)}};
}

std::string nodes_csv(const ModelAnalysis& a) {
  std::ostringstream out;
  out << "var,feature,in_degree,out_degree,conflict_degree,in_pct,out_pct,conflict_pct,"
         "high_in,high_out,high_conflict\n";
  for (const auto& n : a.metrics.nodes) {
    out << n.feature << ',' << csv_field(a.graphs.label(n.feature)) << ',' << n.in_degree << ','
        << n.out_degree << ',' << n.conflict_degree << ',' << format_number(n.in_pct) << ','
        << format_number(n.out_pct) << ',' << format_number(n.conflict_pct) << ','
        << int(n.high_in) << ',' << int(n.high_out) << ',' << int(n.high_conflict) << '\n';
  }
  return out.str();
}

std::string histograms_csv(const ModelAnalysis& a, double bin_width_pct) {
  std::ostringstream out;
  out << "axis,bin_lo_pct,bin_hi_pct,share\n";
  for (auto axis : {DegreeAxis::In, DegreeAxis::Out, DegreeAxis::Conflict}) {
    for (const auto& bin : degree_distribution(a.metrics.nodes, axis, bin_width_pct).bins) {
      out << to_string(axis) << ',' << format_number(bin.lo) << ',' << format_number(bin.hi) << ','
          << format_number(bin.share) << '\n';
    }
  }
  return out.str();
}

void write_model_artifacts(const ModelAnalysis& a, const fs::path& dir, double bin_width_pct) {
  fs::create_directories(dir);
  write_file(dir / "graphs.dot", export_graph(a.graphs, GraphFormat::Dot));
  write_file(dir / "graphs.graphml", export_graph(a.graphs, GraphFormat::GraphML));
  write_file(dir / "graphs.json", export_graph(a.graphs, GraphFormat::Json));
  write_file(dir / "nodes.csv", nodes_csv(a));
  write_file(dir / "histograms.csv", histograms_csv(a, bin_width_pct));
  write_file(dir / "summary.json", summary_json(a).dump(2) + "\n");
}

namespace {

std::vector<std::string> split_csv_row(std::string_view line, std::size_t lineno) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError(lineno, "unterminated quoted field");
  for (auto& f : fields) {
    auto b = f.find_first_not_of(" \t");
    auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
  }
  return fields;
}

}  // namespace

CorpusManifest parse_manifest(std::string_view csv, const fs::path& base_dir) {
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t> column;
  CorpusManifest manifest;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fields = split_csv_row(line, lineno);
    if (column.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) column[fields[i]] = i;
      for (const char* required : {"id", "path", "format", "domain"}) {
        if (!column.contains(required)) {
          throw ParseError(lineno, std::string("manifest header lacks column '") + required + "'");
        }
      }
      continue;
    }
    if (fields.size() != column.size()) {
      throw ParseError(lineno, "expected " + std::to_string(column.size()) + " fields, found " +
                                   std::to_string(fields.size()));
    }
    ManifestEntry e;
    e.id = fields[column["id"]];
    e.domain = fields[column["domain"]];
    std::string path = fields[column["path"]];
    if (e.id.empty() || e.domain.empty() || path.empty()) throw ParseError(lineno, "empty manifest field");
    if (!ids.insert(e.id).second) throw ParseError(lineno, "duplicate model id '" + e.id + "'");
    try {
      e.format = parse_model_format(fields[column["format"]]);
    } catch (const InvalidArgument& err) {
      throw ParseError(lineno, err.what());
    }
    e.path = fs::path(path).is_absolute() ? fs::path(path) : base_dir / path;
    manifest.entries.push_back(std::move(e));
  }
  if (column.empty()) throw ParseError(1, "manifest is empty");
  return manifest;
}

CorpusManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str(), path.parent_path());
}

namespace {

struct MetricColumn {
  const char* name;
  std::optional<double> (*get)(const ModelMetrics&);
};

const MetricColumn kMetricColumns[] = {
    {"core_pct", [](const ModelMetrics& m) -> std::optional<double> { return m.core_pct; }},
    {"dead_pct", [](const ModelMetrics& m) -> std::optional<double> { return m.dead_pct; }},
    {"require_density_x", [](const ModelMetrics& m) -> std::optional<double> { return m.require_density; }},
    {"exclude_density_x", [](const ModelMetrics& m) -> std::optional<double> { return m.exclude_density; }},
    {"high_in_out_overlap_pct", [](const ModelMetrics& m) { return m.high_in_also_high_out_pct; }},
    {"high_in_conflict_overlap_pct", [](const ModelMetrics& m) { return m.high_in_also_high_conflict_pct; }},
};

struct PairedTest {
  const char* hypothesis;
  double (*a)(const ModelMetrics&);
  double (*b)(const ModelMetrics&);
  Alternative alternative;
};

const PairedTest kPairedTests[] = {
    {"dead_pct > core_pct", [](const ModelMetrics& m) { return m.dead_pct; },
     [](const ModelMetrics& m) { return m.core_pct; }, Alternative::AGreater},
    {"exclude_density_x > require_density_x", [](const ModelMetrics& m) { return m.exclude_density; },
     [](const ModelMetrics& m) { return m.require_density; }, Alternative::AGreater},
    {"exclude_density_x < require_density_x", [](const ModelMetrics& m) { return m.exclude_density; },
     [](const ModelMetrics& m) { return m.require_density; }, Alternative::BGreater},
};

}  // namespace

CorpusResult analyze_corpus(const CorpusManifest& manifest, const CorpusOptions& options) {
  if (manifest.entries.empty()) throw InvalidArgument("corpus manifest has no entries");
  const auto& entries = manifest.entries;

  struct Slot {
    std::optional<CorpusRecord> record;
    std::optional<CorpusFailure> failure;
  };
  std::vector<Slot> slots(entries.size());
  std::atomic<std::size_t> next{0};

  auto run_one = [&](std::size_t i) {
    const auto& e = entries[i];
    try {
      CnfFormula formula = load_formula(e.path, e.format);
      ModelAnalysis analysis = analyze_formula(formula, e.id, options.analysis);
      if (!options.out_dir.empty()) {
        write_model_artifacts(analysis, options.out_dir / e.id, options.analysis.bin_width_pct);
      }
      slots[i].record = CorpusRecord{e.id, e.domain, std::move(analysis.metrics)};
    } catch (const ParseError& err) {
      slots[i].failure = CorpusFailure{e.id, "parse", err.what()};
    } catch (const UnsatisfiableError& err) {
      slots[i].failure = CorpusFailure{e.id, "void", err.what()};
    } catch (const std::exception& err) {
      slots[i].failure = CorpusFailure{e.id, "error", err.what()};
    }
  };
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) run_one(i);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(entries.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  CorpusResult result;
  for (auto& slot : slots) {
    if (slot.record) result.records.push_back(std::move(*slot.record));
    if (slot.failure) result.failures.push_back(std::move(*slot.failure));
  }
  std::sort(result.records.begin(), result.records.end(), [](const auto& x, const auto& y) {
    return std::tie(x.domain, x.model_id) < std::tie(y.domain, y.model_id);
  });
  std::sort(result.failures.begin(), result.failures.end(),
            [](const auto& x, const auto& y) { return x.model_id < y.model_id; });

  std::map<std::string, std::vector<const CorpusRecord*>> by_domain;
  for (const auto& r : result.records) by_domain[r.domain].push_back(&r);

  for (const auto& [domain, records] : by_domain) {
    for (const auto& column : kMetricColumns) {
      std::vector<double> values, sizes;
      for (const auto* r : records) {
        if (auto v = column.get(r->metrics)) {
          values.push_back(*v);
          sizes.push_back(static_cast<double>(r->metrics.num_vars));
        }
      }
      if (values.empty()) continue;
      StatsSummary s = median_and_coverage(values);
      s.rho = spearman_rho(values, sizes);
      result.domain_stats.push_back({domain, column.name, s});
    }
    for (const auto& test : kPairedTests) {
      std::vector<double> a, b;
      for (const auto* r : records) {
        a.push_back(test.a(r->metrics));
        b.push_back(test.b(r->metrics));
      }
      DomainTest t{domain, test.hypothesis, records.size(), wilcoxon_signed_rank(a, b, test.alternative), false};
      t.significant = !t.result.degenerate && t.result.p_value < kSignificanceLevel;
      result.tests.push_back(std::move(t));
    }
  }

  if (!options.out_dir.empty()) {
    fs::create_directories(options.out_dir);
    const double w = options.analysis.bin_width_pct;
    write_file(options.out_dir / "corpus.csv", corpus_csv(result));
    write_file(options.out_dir / "domain_stats.csv", domain_stats_csv(result));
    write_file(options.out_dir / "tests.csv", tests_csv(result));
    write_file(options.out_dir / "degree_medians.csv", degree_medians_csv(result, w));
    write_file(options.out_dir / "failures.csv", failures_csv(result));
  }
  return result;
}

std::string corpus_csv(const CorpusResult& result) {
  std::ostringstream out;
  out << "id,domain,num_vars,num_configurable,num_core,num_dead,core_pct,dead_pct,num_arcs,"
         "num_edges,require_density_x,exclude_density_x,high_in_out_overlap_pct,"
         "high_in_conflict_overlap_pct\n";
  for (const auto& r : result.records) {
    const auto& m = r.metrics;
    out << csv_field(r.model_id) << ',' << csv_field(r.domain) << ',' << m.num_vars << ','
        << m.num_configurable << ',' << m.num_core << ',' << m.num_dead << ','
        << format_number(m.core_pct) << ',' << format_number(m.dead_pct) << ',' << m.num_arcs << ','
        << m.num_edges << ',' << format_number(m.require_density) << ','
        << format_number(m.exclude_density) << ',' << csv_optional(m.high_in_also_high_out_pct) << ','
        << csv_optional(m.high_in_also_high_conflict_pct) << '\n';
  }
  return out.str();
}

std::string domain_stats_csv(const CorpusResult& result) {
  std::ostringstream out;
  out << "domain,metric,n,ci_low,median,ci_high,rho\n";
  for (const auto& d : result.domain_stats) {
    out << csv_field(d.domain) << ',' << d.metric << ',' << d.stats.n << ','
        << format_number(d.stats.ci_low) << ',' << format_number(d.stats.median) << ','
        << format_number(d.stats.ci_high) << ',' << csv_optional(d.stats.rho) << '\n';
  }
  return out.str();
}

std::string tests_csv(const CorpusResult& result) {
  std::ostringstream out;
  out << "domain,alternative,n,n_effective,W,Z,p_value,significant,r,effect,degenerate\n";
  for (const auto& t : result.tests) {
    const auto& w = t.result;
    out << csv_field(t.domain) << ',' << csv_field(t.hypothesis) << ',' << t.n << ','
        << w.n_effective << ',' << format_number(w.statistic) << ',' << format_number(w.z_value)
        << ',' << format_number(w.p_value) << ',' << (t.significant ? "yes" : "no") << ','
        << format_number(w.effect_size) << ',' << to_string(w.effect) << ','
        << (w.degenerate ? "yes" : "no") << '\n';
  }
  return out.str();
}

std::string degree_medians_csv(const CorpusResult& result, double bin_width_pct) {
  std::ostringstream out;
  out << "domain,axis,bin_lo_pct,bin_hi_pct,n,median_share\n";
  std::map<std::string, std::vector<const CorpusRecord*>> by_domain;
  for (const auto& r : result.records) {
    if (!r.metrics.nodes.empty()) by_domain[r.domain].push_back(&r);
  }
  for (const auto& [domain, records] : by_domain) {
    for (auto axis : {DegreeAxis::In, DegreeAxis::Out, DegreeAxis::Conflict}) {
      std::vector<Histogram> hists;
      for (const auto* r : records) hists.push_back(degree_distribution(r->metrics.nodes, axis, bin_width_pct));
      for (std::size_t k = 0; k < hists.front().bins.size(); ++k) {
        std::vector<double> shares;
        for (const auto& h : hists) shares.push_back(h.bins[k].share);
        const auto& bin = hists.front().bins[k];
        out << csv_field(domain) << ',' << to_string(axis) << ',' << format_number(bin.lo) << ','
            << format_number(bin.hi) << ',' << shares.size() << ','
            << format_number(median_and_coverage(shares).median) << '\n';
      }
    }
  }
  return out.str();
}

std::string failures_csv(const CorpusResult& result) {
  std::ostringstream out;
  out << "id,reason,message\n";
  for (const auto& f : result.failures) {
    out << csv_field(f.model_id) << ',' << f.reason << ',' << csv_field(f.message) << '\n';
  }
  return out.str();
}

}  // namespace strongnet
