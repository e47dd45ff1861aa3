#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strongnet/formula.hpp"
#include "strongnet/strong_graphs.hpp"

namespace strongnet {

/// Ground truth by full model enumeration (at most `var_limit` variables).
/// Output is pruned exactly like extract_strong_relations, so the two compare
/// with operator==. Throws InvalidArgument over the limit and
/// UnsatisfiableError for a void model.
StrongRelationResult oracle_strong_relations(const CnfFormula& formula,
                                             Var var_limit = 25);

struct Discrepancy {
  std::string kind;  // "core", "dead", "node", "arc" or "edge"
  std::vector<Var> features;
  std::string expected;  // what the solver establishes
  std::string actual;    // what the graph artifact claims

  friend bool operator==(const Discrepancy&, const Discrepancy&) = default;
  friend auto operator<=>(const Discrepancy&, const Discrepancy&) = default;
};

struct ValidationReport {
  std::string model_id;
  std::size_t checked_nodes = 0;
  std::size_t checked_arcs = 0;
  std::size_t checked_edges = 0;
  std::size_t checked_core = 0;
  std::size_t checked_dead = 0;
  std::size_t checked_absences = 0;
  std::vector<Var> sampled_nodes;
  std::vector<Discrepancy> discrepancies;  // sorted by features, then kind

  bool passed() const { return discrepancies.empty(); }
};

struct ValidationOptions {
  std::size_t sample_size = 1000;  // capped at the node count
  std::uint64_t seed = 0;
  /// Non-neighbours probed per sampled node and relation (capped).
  std::size_t absence_checks = 100;
  unsigned jobs = 1;
};

/// Checks a graph artifact against the formula using only assumption-based
/// SAT calls: every claimed core/dead variable, every unclassified variable,
/// and for a seeded sample of nodes their node status, claimed arcs and
/// edges, and a random subset of claimed absences.
ValidationReport validate_model(const CnfFormula& formula, const StrongGraphs& graphs,
                                const ValidationOptions& options = {});

}  // namespace strongnet
