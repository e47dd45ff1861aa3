#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "strongnet/formula.hpp"

namespace strongnet {

/// Partition of 1..num_vars into core, dead and configurable variables.
/// Each set is sorted ascending.
struct FeatureClassification {
  std::vector<Var> core;
  std::vector<Var> dead;
  std::vector<Var> configurable;

  Var num_vars() const {
    return static_cast<Var>(core.size() + dead.size() + configurable.size());
  }
  friend bool operator==(const FeatureClassification&, const FeatureClassification&) = default;
};

/// Consequences of selecting one configurable variable, restricted to other
/// configurable variables. Both lists are sorted ascending.
struct StrongRelations {
  std::vector<Var> depends_on;
  std::vector<Var> conflicts_with;

  friend bool operator==(const StrongRelations&, const StrongRelations&) = default;
};

/// Keyed by configurable variable; every configurable variable has an entry.
using StrongRelationMap = std::map<Var, StrongRelations>;

struct StrongRelationResult {
  FeatureClassification classification;
  StrongRelationMap relations;

  friend bool operator==(const StrongRelationResult&, const StrongRelationResult&) = default;
};

using Arc = std::pair<Var, Var>;   // f strongly depends on g
using Edge = std::pair<Var, Var>;  // unordered, stored with first < second

/// Dependency arcs and conflict edges over the configurable variables.
struct StrongGraphs {
  std::vector<Var> nodes;  // the configurable set
  std::vector<Arc> dep_arcs;
  std::vector<Edge> conflict_edges;
  FeatureClassification classification;
  std::map<Var, std::string> names;

  Var num_vars() const { return classification.num_vars(); }
  /// Declared name, or the synthetic `v<index>`.
  std::string label(Var var) const;

  friend bool operator==(const StrongGraphs&, const StrongGraphs&) = default;
};

struct ExtractionOptions {
  /// Worker threads for the per-variable loop; results do not depend on it.
  unsigned jobs = 1;
};

/// Core/dead classification plus, for each configurable variable v, the
/// backbone of `formula && v` minus the unconditioned backbone.
/// Throws UnsatisfiableError ("void model") when the formula has no model.
StrongRelationResult extract_strong_relations(const CnfFormula& formula,
                                              const ExtractionOptions& options = {});

/// Materializes arcs (v, g) for g in depends_on(v) and each conflicting pair
/// once. Names are left empty.
StrongGraphs build_strong_graphs(const FeatureClassification& classification,
                                 const StrongRelationMap& relations);

/// extract + build, with names copied from the formula.
StrongGraphs compute_strong_graphs(const CnfFormula& formula,
                                   const ExtractionOptions& options = {});

/// True when (f,g),(g,h) in arcs implies (f,h) in arcs.
bool is_transitively_closed(const std::vector<Arc>& arcs);

}  // namespace strongnet
