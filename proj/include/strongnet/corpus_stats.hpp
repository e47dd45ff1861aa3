#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace strongnet {

struct StatsSummary {
  std::size_t n = 0;
  double median = 0.0;
  double ci_low = 0.0;   // nearest-rank 2.5th percentile
  double ci_high = 0.0;  // nearest-rank 97.5th percentile
  std::optional<double> rho;  // Spearman vs model size, absent for n < 4
};

/// Median (mean of the two central order statistics for even n) and the 95%
/// coverage interval. Throws InvalidArgument on empty input.
StatsSummary median_and_coverage(std::span<const double> values);

/// 1-based nearest-rank index ceil(permille * n / 1000), clamped to [1, n].
std::size_t nearest_rank(std::size_t n, unsigned permille);

/// Average ranks (1-based), ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of average ranks. Absent when n < 4 or either input
/// is constant. Throws InvalidArgument on length mismatch.
std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y);

enum class Alternative { AGreater, BGreater };

enum class EffectLabel { Negligible, Small, Moderate, Large };

std::string to_string(EffectLabel label);
/// |r| < 0.1 negligible, < 0.3 small, < 0.5 moderate, otherwise large.
EffectLabel effect_label(double r);

struct WilcoxonResult {
  std::size_t n_effective = 0;  // pairs left after dropping zero differences
  double statistic = 0.0;       // W+, rank sum of positive differences a - b
  double z_value = 0.0;
  double p_value = 0.5;  // one-sided
  double effect_size = 0.0;  // Z / sqrt(n_effective)
  EffectLabel effect = EffectLabel::Negligible;
  bool degenerate = false;  // every difference was zero
};

/// One-sided Wilcoxon signed-rank test on paired samples using the normal
/// approximation with tie correction and a 0.5 continuity correction.
/// All-zero differences give a degenerate result with p = 0.5.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    Alternative alternative);

}  // namespace strongnet
