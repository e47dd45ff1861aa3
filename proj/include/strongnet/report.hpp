#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "strongnet/corpus_stats.hpp"
#include "strongnet/formula.hpp"
#include "strongnet/net_metrics.hpp"
#include "strongnet/oracle.hpp"
#include "strongnet/strong_graphs.hpp"

namespace strongnet {

enum class ModelFormat { Dimacs, Fm };

/// "dimacs" or "fm"; throws InvalidArgument otherwise.
ModelFormat parse_model_format(std::string_view name);
/// `.fm` files are feature models, everything else DIMACS.
ModelFormat detect_model_format(const std::filesystem::path& path);

/// Throws Error when the file cannot be read, ParseError on bad content.
CnfFormula load_formula(const std::filesystem::path& path, ModelFormat format);

enum class GraphFormat { Dot, GraphML, Json };

GraphFormat parse_graph_format(std::string_view name);

/// Deterministic rendering: nodes ascending, arcs and edges in canonical order.
/// Conflict edges appear once, tagged `relation=excludes`.
std::string export_graph(const StrongGraphs& graphs, GraphFormat format);

nlohmann::json graphs_to_json(const StrongGraphs& graphs);
/// Inverse of graphs_to_json. Throws InvalidArgument on a malformed document.
StrongGraphs graphs_from_json(const nlohmann::json& doc);

nlohmann::json relations_to_json(const StrongRelationResult& result, const CnfFormula& formula);
nlohmann::json validation_to_json(const ValidationReport& report, const StrongGraphs& graphs);

inline constexpr double kDefaultHistogramBinPct = 10.0;

struct ModelAnalysis {
  std::string model_id;
  StrongGraphs graphs;
  ModelMetrics metrics;
};

struct AnalysisOptions {
  double threshold_pct = kDefaultHighDegreeThresholdPct;
  double bin_width_pct = kDefaultHistogramBinPct;
  unsigned jobs = 1;  // per-variable parallelism inside one model
};

ModelAnalysis analyze_formula(const CnfFormula& formula, std::string model_id,
                              const AnalysisOptions& options = {});

nlohmann::json summary_json(const ModelAnalysis& analysis);
std::string nodes_csv(const ModelAnalysis& analysis);
std::string histograms_csv(const ModelAnalysis& analysis, double bin_width_pct);

/// Writes graphs.{dot,graphml,json}, nodes.csv, histograms.csv and
/// summary.json into `dir` (created if needed).
void write_model_artifacts(const ModelAnalysis& analysis, const std::filesystem::path& dir,
                           double bin_width_pct = kDefaultHistogramBinPct);

struct ManifestEntry {
  std::string id;
  std::filesystem::path path;  // resolved against the manifest's directory
  ModelFormat format = ModelFormat::Dimacs;
  std::string domain;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
};

/// CSV with header `id,path,format,domain`. Throws ParseError on malformed
/// rows, duplicate ids or empty fields.
CorpusManifest parse_manifest(std::string_view csv, const std::filesystem::path& base_dir);
CorpusManifest load_manifest(const std::filesystem::path& path);

struct CorpusRecord {
  std::string model_id;
  std::string domain;
  ModelMetrics metrics;  // nodes included for the degree distributions
};

struct CorpusFailure {
  std::string model_id;
  std::string reason;  // "parse", "void" or "error"
  std::string message;
};

struct DomainMetricSummary {
  std::string domain;
  std::string metric;
  StatsSummary stats;
};

struct DomainTest {
  std::string domain;
  std::string hypothesis;
  std::size_t n = 0;
  WilcoxonResult result;
  bool significant = false;  // p < 0.05
};

struct CorpusOptions {
  AnalysisOptions analysis;
  unsigned jobs = 1;  // models analysed concurrently
  std::filesystem::path out_dir;  // empty: nothing written
};

struct CorpusResult {
  std::vector<CorpusRecord> records;    // sorted by (domain, id)
  std::vector<CorpusFailure> failures;  // sorted by id
  std::vector<DomainMetricSummary> domain_stats;
  std::vector<DomainTest> tests;
};

inline constexpr double kSignificanceLevel = 0.05;

/// Throws InvalidArgument on an empty manifest; per-model failures are tallied.
CorpusResult analyze_corpus(const CorpusManifest& manifest, const CorpusOptions& options = {});

std::string corpus_csv(const CorpusResult& result);
std::string domain_stats_csv(const CorpusResult& result);
std::string tests_csv(const CorpusResult& result);
std::string degree_medians_csv(const CorpusResult& result, double bin_width_pct);
std::string failures_csv(const CorpusResult& result);

/// Shortest round-trip decimal rendering, used for every CSV number.
std::string format_number(double value);

}  // namespace strongnet
