#include "strongnet/strong_graphs.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <span>
#include <thread>

#include "strongnet/backbone.hpp"
#include "strongnet/errors.hpp"

namespace strongnet {

std::string StrongGraphs::label(Var var) const {
  if (auto it = names.find(var); it != names.end()) return it->second;
  return "v" + std::to_string(var);
}

StrongRelationResult extract_strong_relations(const CnfFormula& formula,
                                              const ExtractionOptions& options) {
  const Var n = formula.num_vars();
  StrongRelationResult result;
  auto& cls = result.classification;

  Backbone global;
  try {
    global = compute_backbone(formula);
  } catch (const UnsatisfiableError&) {
    throw UnsatisfiableError("void model: the formula admits no valid configuration");
  }

  // 0 = configurable, 1 = core, -1 = dead
  std::vector<int> kind(n + 1, 0);
  for (Literal lit : global.literals) {
    kind[lit.var()] = lit.positive() ? 1 : -1;
    (lit.positive() ? cls.core : cls.dead).push_back(lit.var());
  }
  for (Var v = 1; v <= n; ++v) {
    if (kind[v] == 0) cls.configurable.push_back(v);
  }

  const auto& todo = cls.configurable;
  std::vector<StrongRelations> slots(todo.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      BackboneSolver solver(formula);
      for (std::size_t i = next++; i < todo.size(); i = next++) {
        const Var v = todo[i];
        const Literal select = Literal::pos(v);
        Backbone conditioned = solver.compute(std::span(&select, 1));
        auto& rel = slots[i];
        for (Literal lit : conditioned.literals) {
          Var g = lit.var();
          if (g == v || kind[g] != 0) continue;  // self, core or dead
          (lit.positive() ? rel.depends_on : rel.conflicts_with).push_back(g);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = todo.size();
    }
  };

  unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(todo.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t i = 0; i < todo.size(); ++i) result.relations.emplace(todo[i], std::move(slots[i]));
  return result;
}

StrongGraphs build_strong_graphs(const FeatureClassification& classification,
                                 const StrongRelationMap& relations) {
  StrongGraphs graphs;
  graphs.classification = classification;
  graphs.nodes = classification.configurable;

  std::set<Edge> edges;
  for (const auto& [v, rel] : relations) {
    for (Var g : rel.depends_on) {
      if (g != v) graphs.dep_arcs.emplace_back(v, g);
    }
    for (Var g : rel.conflicts_with) {
      if (g != v) edges.insert(std::minmax(v, g));
    }
  }
  std::sort(graphs.dep_arcs.begin(), graphs.dep_arcs.end());
  graphs.dep_arcs.erase(std::unique(graphs.dep_arcs.begin(), graphs.dep_arcs.end()),
                        graphs.dep_arcs.end());
  graphs.conflict_edges.assign(edges.begin(), edges.end());
  return graphs;
}

StrongGraphs compute_strong_graphs(const CnfFormula& formula, const ExtractionOptions& options) {
  auto [classification, relations] = extract_strong_relations(formula, options);
  StrongGraphs graphs = build_strong_graphs(classification, relations);
  graphs.names = formula.names();
  return graphs;
}

bool is_transitively_closed(const std::vector<Arc>& arcs) {
  std::set<Arc> present(arcs.begin(), arcs.end());
  std::map<Var, std::vector<Var>> out;
  for (const auto& [f, g] : arcs) out[f].push_back(g);
  for (const auto& [f, g] : arcs) {
    auto it = out.find(g);
    if (it == out.end()) continue;
    for (Var h : it->second) {
      if (h != f && !present.contains({f, h})) return false;
    }
  }
  return true;
}

}  // namespace strongnet
