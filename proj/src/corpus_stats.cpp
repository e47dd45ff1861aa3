#include "strongnet/corpus_stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "strongnet/errors.hpp"

namespace strongnet {

std::size_t nearest_rank(std::size_t n, unsigned permille) {
  std::size_t rank = (permille * n + 999) / 1000;
  return std::clamp<std::size_t>(rank, 1, n);
}

StatsSummary median_and_coverage(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("median of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  StatsSummary s;
  s.n = n;
  s.median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
  s.ci_low = sorted[nearest_rank(n, 25) - 1];
  s.ci_high = sorted[nearest_rank(n, 975) - 1];
  return s;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("spearman_rho: length mismatch");
  if (x.size() < 4) return std::nullopt;
  auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  const double mean = (static_cast<double>(x.size()) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    double dx = rx[i] - mean;
    double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::string to_string(EffectLabel label) {
  switch (label) {
    case EffectLabel::Negligible: return "negligible";
    case EffectLabel::Small: return "small";
    case EffectLabel::Moderate: return "moderate";
    case EffectLabel::Large: return "large";
  }
  return "?";
}

EffectLabel effect_label(double r) {
  const double m = std::abs(r);
  if (m < 0.1) return EffectLabel::Negligible;
  if (m < 0.3) return EffectLabel::Small;
  if (m < 0.5) return EffectLabel::Moderate;
  return EffectLabel::Large;
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    Alternative alternative) {
  if (a.size() != b.size()) throw InvalidArgument("wilcoxon_signed_rank: length mismatch");
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  WilcoxonResult r;
  r.n_effective = diffs.size();
  if (diffs.empty()) {
    r.degenerate = true;
    return r;
  }

  std::vector<double> magnitudes(diffs.size());
  std::transform(diffs.begin(), diffs.end(), magnitudes.begin(),
                 [](double d) { return std::abs(d); });
  auto ranks = average_ranks(magnitudes);
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i] > 0.0) r.statistic += ranks[i];
  }

  std::map<double, std::size_t> ties;
  for (double m : magnitudes) ++ties[m];
  double tie_term = 0.0;
  for (const auto& [value, t] : ties) {
    const auto tt = static_cast<double>(t);
    tie_term += tt * tt * tt - tt;
  }
  const auto n = static_cast<double>(diffs.size());
  const double mean = n * (n + 1.0) / 4.0;
  const double variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
  const double correction = alternative == Alternative::AGreater ? 0.5 : -0.5;
  r.z_value = (r.statistic - mean - correction) / std::sqrt(variance);

  // Upper tail for a > b, lower tail for b > a; both via erfc for symmetry.
  r.p_value = alternative == Alternative::AGreater
                  ? 0.5 * std::erfc(r.z_value / std::sqrt(2.0))
                  : 0.5 * std::erfc(-r.z_value / std::sqrt(2.0));
  r.effect_size = r.z_value / std::sqrt(n);
  r.effect = effect_label(r.effect_size);
  return r;
}

}  // namespace strongnet
