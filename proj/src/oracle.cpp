#include "strongnet/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <map>
#include <set>
#include <tuple>
#include <thread>

#include "strongnet/errors.hpp"
#include "strongnet/sat_engine.hpp"

namespace strongnet {

StrongRelationResult oracle_strong_relations(const CnfFormula& formula, Var var_limit) {
  const Var n = formula.num_vars();
  if (n > var_limit) {
    throw InvalidArgument("oracle refused: " + std::to_string(n) +
                          " variables exceed the limit of " + std::to_string(var_limit));
  }
  // columns[v] is a bitset over models: bit m set iff model m assigns v true.
  std::vector<std::vector<std::uint64_t>> columns(n + 1);
  std::size_t model_count = 0;
  for_each_model(formula, [&](const Model& model) {
    const std::size_t word = model_count / 64;
    const std::uint64_t bit = std::uint64_t{1} << (model_count % 64);
    for (Var v = 1; v <= n; ++v) {
      if (columns[v].size() <= word) columns[v].resize(word + 1, 0);
      if (model.value(v)) columns[v][word] |= bit;
    }
    ++model_count;
    return true;
  }, var_limit);
  if (model_count == 0) {
    throw UnsatisfiableError("void model: the formula admits no valid configuration");
  }
  const std::size_t words = (model_count + 63) / 64;
  for (Var v = 1; v <= n; ++v) columns[v].resize(words, 0);

  auto popcount = [&](Var v) {
    std::size_t c = 0;
    for (auto w : columns[v]) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  };

  StrongRelationResult out;
  auto& cls = out.classification;
  for (Var v = 1; v <= n; ++v) {
    std::size_t c = popcount(v);
    if (c == model_count) {
      cls.core.push_back(v);
    } else if (c == 0) {
      cls.dead.push_back(v);
    } else {
      cls.configurable.push_back(v);
    }
  }
  for (Var f : cls.configurable) {
    StrongRelations rel;
    for (Var g : cls.configurable) {
      if (g == f) continue;
      bool implies = true;
      bool disjoint = true;
      for (std::size_t w = 0; w < words; ++w) {
        if (columns[f][w] & ~columns[g][w]) implies = false;
        if (columns[f][w] & columns[g][w]) disjoint = false;
      }
      if (implies) rel.depends_on.push_back(g);
      if (disjoint) rel.conflicts_with.push_back(g);
    }
    out.relations.emplace(f, std::move(rel));
  }
  return out;
}

namespace {

struct NodeResult {
  std::vector<Discrepancy> found;
  std::size_t arcs = 0;
  std::size_t edges = 0;
  std::size_t absences = 0;
};

Edge canonical(Var a, Var b) { return std::minmax(a, b); }

std::vector<Var> sample_without_replacement(std::vector<Var> pool, std::size_t k,
                                            std::mt19937_64& rng) {
  if (k >= pool.size()) return pool;
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

ValidationReport validate_model(const CnfFormula& formula, const StrongGraphs& graphs,
                                const ValidationOptions& options) {
  const Var n = formula.num_vars();
  ValidationReport report;
  std::set<Discrepancy> found;

  std::vector<int> claimed(n + 1, 0);  // bit 1 core, 2 dead, 4 node
  std::set<Var> out_of_range;
  auto mark = [&](const std::vector<Var>& vars, int bit) {
    for (Var v : vars) {
      if (v == 0 || v > n) {
        out_of_range.insert(v);
      } else {
        claimed[v] |= bit;
      }
    }
  };
  mark(graphs.classification.core, 1);
  mark(graphs.classification.dead, 2);
  mark(graphs.nodes, 4);
  for (Var v : out_of_range) found.insert({"node", {v}, "absent", "present"});

  SatEngine engine(formula);
  auto sat = [](SatEngine& e, std::initializer_list<Literal> assume) {
    std::vector<Literal> a(assume);
    return e.solve(a).sat();
  };

  for (Var c : graphs.classification.core) {
    if (c == 0 || c > n) continue;
    ++report.checked_core;
    if (sat(engine, {Literal::neg(c)})) found.insert({"core", {c}, "not core", "core"});
  }
  for (Var d : graphs.classification.dead) {
    if (d == 0 || d > n) continue;
    ++report.checked_dead;
    if (sat(engine, {Literal::pos(d)})) found.insert({"dead", {d}, "not dead", "dead"});
  }
  for (Var v = 1; v <= n; ++v) {
    if (claimed[v] != 0) continue;
    if (!sat(engine, {Literal::neg(v)})) {
      found.insert({"core", {v}, "core", "unclassified"});
    } else if (!sat(engine, {Literal::pos(v)})) {
      found.insert({"dead", {v}, "dead", "unclassified"});
    } else {
      found.insert({"node", {v}, "configurable", "unclassified"});
    }
  }

  std::vector<Var> nodes;
  for (Var v : graphs.nodes) {
    if (v >= 1 && v <= n) nodes.push_back(v);
  }
  std::map<Var, std::set<Var>> arcs_from;
  std::map<Var, std::set<Var>> edges_at;
  for (const auto& [f, g] : graphs.dep_arcs) arcs_from[f].insert(g);
  for (const auto& [f, g] : graphs.conflict_edges) {
    edges_at[f].insert(g);
    edges_at[g].insert(f);
  }

  std::mt19937_64 rng(options.seed);
  report.sampled_nodes = sample_without_replacement(nodes, options.sample_size, rng);
  report.checked_nodes = report.sampled_nodes.size();

  const auto& sampled = report.sampled_nodes;
  std::vector<NodeResult> slots(sampled.size());
  std::atomic<std::size_t> next{0};

  auto check_node = [&](SatEngine& e, Var v, NodeResult& r) {
    if (!sat(e, {Literal::pos(v)})) {
      r.found.push_back({"dead", {v}, "dead", "configurable"});
      return;
    }
    if (!sat(e, {Literal::neg(v)})) {
      r.found.push_back({"core", {v}, "core", "configurable"});
      return;
    }
    static const std::set<Var> kNone;
    auto arcs_it = arcs_from.find(v);
    auto edges_it = edges_at.find(v);
    const auto& arcs = arcs_it == arcs_from.end() ? kNone : arcs_it->second;
    const auto& edges = edges_it == edges_at.end() ? kNone : edges_it->second;
    for (Var g : arcs) {
      ++r.arcs;
      if (g == 0 || g > n || sat(e, {Literal::pos(v), Literal::neg(g)})) {
        r.found.push_back({"arc", {v, g}, "absent", "present"});
      }
    }
    for (Var g : edges) {
      ++r.edges;
      if (g == 0 || g > n || sat(e, {Literal::pos(v), Literal::pos(g)})) {
        auto [a, b] = canonical(v, g);
        r.found.push_back({"edge", {a, b}, "absent", "present"});
      }
    }

    std::seed_seq seq{static_cast<std::uint32_t>(options.seed),
                      static_cast<std::uint32_t>(options.seed >> 32), v};
    std::mt19937_64 local(seq);
    std::vector<Var> no_arc, no_edge;
    for (Var g : nodes) {
      if (g == v) continue;
      if (!arcs.contains(g)) no_arc.push_back(g);
      if (!edges.contains(g)) no_edge.push_back(g);
    }
    for (Var g : sample_without_replacement(no_arc, options.absence_checks, local)) {
      ++r.absences;
      if (!sat(e, {Literal::pos(v), Literal::neg(g)})) {
        r.found.push_back({"arc", {v, g}, "present", "absent"});
      }
    }
    for (Var g : sample_without_replacement(no_edge, options.absence_checks, local)) {
      ++r.absences;
      if (!sat(e, {Literal::pos(v), Literal::pos(g)})) {
        auto [a, b] = canonical(v, g);
        r.found.push_back({"edge", {a, b}, "present", "absent"});
      }
    }
  };

  auto worker = [&](SatEngine& e) {
    for (std::size_t i = next++; i < sampled.size(); i = next++) check_node(e, sampled[i], slots[i]);
  };

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(sampled.size())));
  if (jobs <= 1) {
    worker(engine);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        SatEngine own(formula);
        worker(own);
      });
    }
  }

  for (auto& slot : slots) {
    report.checked_arcs += slot.arcs;
    report.checked_edges += slot.edges;
    report.checked_absences += slot.absences;
    found.insert(slot.found.begin(), slot.found.end());
  }
  report.discrepancies.assign(found.begin(), found.end());
  std::stable_sort(report.discrepancies.begin(), report.discrepancies.end(),
                   [](const Discrepancy& x, const Discrepancy& y) {
                     return std::tie(x.features, x.kind) < std::tie(y.features, y.kind);
                   });
  return report;
}

}  // namespace strongnet
