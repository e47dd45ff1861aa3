#include "strongnet/net_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "strongnet/errors.hpp"

namespace strongnet {

std::vector<NodeMetrics> compute_node_metrics(const StrongGraphs& graphs, double threshold_pct) {
  if (!(threshold_pct > 0.0 && threshold_pct <= 100.0)) {
    throw InvalidArgument("threshold must lie in (0, 100]");
  }
  std::vector<NodeMetrics> nodes(graphs.nodes.size());
  std::unordered_map<Var, std::size_t> index;
  for (std::size_t i = 0; i < graphs.nodes.size(); ++i) {
    nodes[i].feature = graphs.nodes[i];
    index.emplace(graphs.nodes[i], i);
  }
  for (const auto& [f, g] : graphs.dep_arcs) {
    ++nodes[index.at(f)].out_degree;
    ++nodes[index.at(g)].in_degree;
  }
  for (const auto& [f, g] : graphs.conflict_edges) {
    ++nodes[index.at(f)].conflict_degree;
    ++nodes[index.at(g)].conflict_degree;
  }

  const std::size_t others = nodes.size() >= 2 ? nodes.size() - 1 : 0;
  auto pct = [&](std::size_t degree) {
    return others == 0 ? 0.0 : 100.0 * static_cast<double>(degree) / static_cast<double>(others);
  };
  for (auto& node : nodes) {
    node.in_pct = pct(node.in_degree);
    node.out_pct = pct(node.out_degree);
    node.conflict_pct = pct(node.conflict_degree);
    node.high_in = node.in_pct >= threshold_pct;
    node.high_out = node.out_pct >= threshold_pct;
    node.high_conflict = node.conflict_pct >= threshold_pct;
  }
  return nodes;
}

ModelMetrics compute_model_metrics(const StrongGraphs& graphs, double threshold_pct,
                                   std::string model_id) {
  ModelMetrics m;
  m.model_id = std::move(model_id);
  m.num_vars = graphs.num_vars();
  m.num_configurable = graphs.nodes.size();
  m.num_core = graphs.classification.core.size();
  m.num_dead = graphs.classification.dead.size();
  m.num_arcs = graphs.dep_arcs.size();
  m.num_edges = graphs.conflict_edges.size();
  m.threshold_pct = threshold_pct;
  if (m.num_vars > 0) {
    const auto n = static_cast<double>(m.num_vars);
    m.core_pct = 100.0 * static_cast<double>(m.num_core) / n;
    m.dead_pct = 100.0 * static_cast<double>(m.num_dead) / n;
    m.require_density = static_cast<double>(m.num_arcs) / n;
    m.exclude_density = static_cast<double>(m.num_edges) / n;
  }
  m.nodes = compute_node_metrics(graphs, threshold_pct);

  std::size_t high_in = 0, with_out = 0, with_conflict = 0;
  for (const auto& node : m.nodes) {
    if (!node.high_in) continue;
    ++high_in;
    with_out += node.high_out ? 1 : 0;
    with_conflict += node.high_conflict ? 1 : 0;
  }
  if (high_in > 0) {
    m.high_in_also_high_out_pct = 100.0 * static_cast<double>(with_out) / static_cast<double>(high_in);
    m.high_in_also_high_conflict_pct =
        100.0 * static_cast<double>(with_conflict) / static_cast<double>(high_in);
  }
  return m;
}

std::string to_string(DegreeAxis axis) {
  switch (axis) {
    case DegreeAxis::In: return "in";
    case DegreeAxis::Out: return "out";
    case DegreeAxis::Conflict: return "conflict";
  }
  return "?";
}

Histogram degree_distribution(const std::vector<NodeMetrics>& nodes, DegreeAxis axis,
                              double bin_width_pct) {
  if (!(bin_width_pct > 0.0)) throw InvalidArgument("bin width must be positive");
  const auto count = static_cast<std::size_t>(std::ceil(100.0 / bin_width_pct));
  Histogram hist;
  hist.bin_width_pct = bin_width_pct;
  hist.bins.resize(std::max<std::size_t>(count, 1));
  for (std::size_t k = 0; k < hist.bins.size(); ++k) {
    hist.bins[k].lo = static_cast<double>(k) * bin_width_pct;
    hist.bins[k].hi = std::min(100.0, static_cast<double>(k + 1) * bin_width_pct);
  }
  if (nodes.empty()) return hist;

  std::vector<std::size_t> counts(hist.bins.size(), 0);
  for (const auto& node : nodes) {
    double pct = axis == DegreeAxis::In    ? node.in_pct
                 : axis == DegreeAxis::Out ? node.out_pct
                                           : node.conflict_pct;
    auto k = static_cast<std::size_t>(std::floor(pct / bin_width_pct));
    ++counts[std::min(k, hist.bins.size() - 1)];
  }
  for (std::size_t k = 0; k < counts.size(); ++k) {
    hist.bins[k].share = static_cast<double>(counts[k]) / static_cast<double>(nodes.size());
  }
  return hist;
}

}  // namespace strongnet
