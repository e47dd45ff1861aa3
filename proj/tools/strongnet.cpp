// Command-line front end. Exit codes: 0 success, 1 usage or I/O error,
// 2 parse failure, 3 void model, 4 validation found discrepancies.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "strongnet/errors.hpp"
#include "strongnet/oracle.hpp"
#include "strongnet/report.hpp"

namespace fs = std::filesystem;
using namespace strongnet;

namespace {

enum ExitCode { kOk = 0, kError = 1, kParse = 2, kVoid = 3, kDiscrepancy = 4 };

struct ModelInput {
  std::string path;
  std::string format;  // empty: guess from the extension

  CnfFormula load() const {
    ModelFormat f = format.empty() ? detect_model_format(path) : parse_model_format(format);
    return load_formula(path, f);
  }
  std::string id() const { return fs::path(path).stem().string(); }
};

void add_input(CLI::App* cmd, ModelInput& in) {
  cmd->add_option("file", in.path, "DIMACS (.cnf/.dimacs) or feature model (.fm) file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--format", in.format, "Input format, overriding the extension")
      ->check(CLI::IsMember({"dimacs", "fm"}));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open '" + p.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong dependency and conflict graphs for variability models"};
  app.require_subcommand(1);

  ModelInput analyze_in;
  AnalysisOptions analyze_opts;
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Extract strong graphs and metrics for one model");
  add_input(analyze, analyze_in);
  analyze->add_option("--threshold", analyze_opts.threshold_pct, "High-degree threshold in percent")
      ->capture_default_str();
  analyze->add_option("--bin-width", analyze_opts.bin_width_pct, "Histogram bin width in percent")
      ->capture_default_str();
  analyze->add_option("--out", analyze_out, "Write artifacts to DIR/<model-id>/");
  analyze->add_option("--jobs", analyze_opts.jobs, "Threads for the per-feature loop")
      ->capture_default_str();

  std::string manifest_path;
  CorpusOptions corpus_opts;
  std::string corpus_out = "strongnet-out";
  auto* corpus = app.add_subcommand("corpus", "Analyse every model listed in a manifest CSV");
  corpus->add_option("manifest", manifest_path, "CSV with columns id,path,format,domain")
      ->required()
      ->check(CLI::ExistingFile);
  corpus->add_option("--jobs", corpus_opts.jobs, "Models analysed concurrently")->capture_default_str();
  corpus->add_option("--threshold", corpus_opts.analysis.threshold_pct, "High-degree threshold in percent")
      ->capture_default_str();
  corpus->add_option("--bin-width", corpus_opts.analysis.bin_width_pct, "Histogram bin width in percent")
      ->capture_default_str();
  corpus->add_option("--out", corpus_out, "Output directory")->capture_default_str();

  std::string export_dir;
  std::string export_format;
  auto* exporter = app.add_subcommand("export", "Render a model directory's graphs.json");
  exporter->add_option("model-dir", export_dir, "Directory written by analyze or corpus")
      ->required()
      ->check(CLI::ExistingDirectory);
  exporter->add_option("--format", export_format, "Output format")
      ->required()
      ->check(CLI::IsMember({"dot", "graphml", "json"}));

  ModelInput validate_in;
  ValidationOptions validate_opts;
  std::string validate_graphs;
  auto* validate = app.add_subcommand("validate", "Cross-check graphs against the formula with the SAT solver");
  add_input(validate, validate_in);
  validate->add_option("--sample", validate_opts.sample_size, "Nodes to sample")->capture_default_str();
  validate->add_option("--seed", validate_opts.seed, "Sampling seed")->capture_default_str();
  validate->add_option("--absence", validate_opts.absence_checks,
                       "Claimed non-neighbours probed per node and relation")
      ->capture_default_str();
  validate->add_option("--graphs", validate_graphs,
                       "Model directory holding graphs.json (default: extract afresh)")
      ->check(CLI::ExistingDirectory);
  validate->add_option("--jobs", validate_opts.jobs, "Worker threads")->capture_default_str();

  ModelInput oracle_in;
  auto* oracle = app.add_subcommand("oracle", "Brute-force relations by model enumeration (at most 25 variables)");
  add_input(oracle, oracle_in);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      CnfFormula formula = analyze_in.load();
      ModelAnalysis a = analyze_formula(formula, analyze_in.id(), analyze_opts);
      if (!analyze_out.empty()) {
        write_model_artifacts(a, fs::path(analyze_out) / a.model_id, analyze_opts.bin_width_pct);
      }
      std::cout << summary_json(a).dump(2) << "\n";
    } else if (*corpus) {
      corpus_opts.out_dir = corpus_out;
      CorpusResult r = analyze_corpus(load_manifest(manifest_path), corpus_opts);
      std::cout << "analysed " << r.records.size() << " models, " << r.failures.size()
                << " failures; results in " << corpus_out << "\n";
    } else if (*exporter) {
      auto doc = nlohmann::json::parse(slurp(fs::path(export_dir) / "graphs.json"));
      std::cout << export_graph(graphs_from_json(doc), parse_graph_format(export_format));
    } else if (*validate) {
      CnfFormula formula = validate_in.load();
      StrongGraphs graphs = validate_graphs.empty()
                                ? compute_strong_graphs(formula)
                                : graphs_from_json(nlohmann::json::parse(
                                      slurp(fs::path(validate_graphs) / "graphs.json")));
      if (graphs.names.empty()) graphs.names = formula.names();
      ValidationReport report = validate_model(formula, graphs, validate_opts);
      report.model_id = validate_in.id();
      std::cout << validation_to_json(report, graphs).dump(2) << "\n";
      return report.passed() ? kOk : kDiscrepancy;
    } else if (*oracle) {
      CnfFormula formula = oracle_in.load();
      StrongRelationResult truth = oracle_strong_relations(formula);
      nlohmann::json out = relations_to_json(truth, formula);
      out["agrees_with_extraction"] = extract_strong_relations(formula) == truth;
      std::cout << out.dump(2) << "\n";
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const UnsatisfiableError& e) {
    std::cerr << e.what() << "\n";
    return kVoid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kOk;
}
