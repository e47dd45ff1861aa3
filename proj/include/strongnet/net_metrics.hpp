#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "strongnet/strong_graphs.hpp"

namespace strongnet {

inline constexpr double kDefaultHighDegreeThresholdPct = 10.0;

struct NodeMetrics {
  Var feature = 0;
  std::size_t in_degree = 0;
  std::size_t out_degree = 0;
  std::size_t conflict_degree = 0;
  // Percent of the other configurable features (Nc - 1).
  double in_pct = 0.0;
  double out_pct = 0.0;
  double conflict_pct = 0.0;
  bool high_in = false;
  bool high_out = false;
  bool high_conflict = false;

  friend bool operator==(const NodeMetrics&, const NodeMetrics&) = default;
};

struct ModelMetrics {
  std::string model_id;
  Var num_vars = 0;
  std::size_t num_configurable = 0;
  std::size_t num_core = 0;
  std::size_t num_dead = 0;
  std::size_t num_arcs = 0;
  std::size_t num_edges = 0;
  double core_pct = 0.0;
  double dead_pct = 0.0;
  double require_density = 0.0;  // arcs / num_vars
  double exclude_density = 0.0;  // edges / num_vars
  double threshold_pct = kDefaultHighDegreeThresholdPct;
  std::vector<NodeMetrics> nodes;
  // Percent of high-in nodes that are also high-out / high-conflict.
  // Empty when no node has a high in-degree.
  std::optional<double> high_in_also_high_out_pct;
  std::optional<double> high_in_also_high_conflict_pct;
};

/// Throws InvalidArgument unless 0 < threshold_pct <= 100.
std::vector<NodeMetrics> compute_node_metrics(
    const StrongGraphs& graphs, double threshold_pct = kDefaultHighDegreeThresholdPct);

ModelMetrics compute_model_metrics(const StrongGraphs& graphs,
                                   double threshold_pct = kDefaultHighDegreeThresholdPct,
                                   std::string model_id = {});

enum class DegreeAxis { In, Out, Conflict };

std::string to_string(DegreeAxis axis);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;  // exclusive, except the last bin which closes at 100
  double share = 0.0;
};

struct Histogram {
  double bin_width_pct = 0.0;
  std::vector<HistogramBin> bins;
};

/// Share of nodes per degree-percentage bin [k*w, (k+1)*w). Every bin is
/// listed, empty ones with share 0. Throws InvalidArgument if w <= 0.
Histogram degree_distribution(const std::vector<NodeMetrics>& nodes, DegreeAxis axis,
                              double bin_width_pct);

}  // namespace strongnet
