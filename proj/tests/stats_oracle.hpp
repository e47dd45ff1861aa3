#pragma once

// Reference statistics computed the slow, obvious way.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

namespace statsoracle {

/// Rank of x[i] among x: values below it plus the mean position inside its tie block.
inline std::vector<double> ranks_by_counting(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double below = 0, equal = 0;
    for (double v : x) {
      below += v < x[i];
      equal += v == x[i];
    }
    r[i] = below + (equal + 1.0) / 2.0;
  }
  return r;
}

/// Tie-corrected rank formula:
/// rho = (Sx + Sy - sum d^2) / (2 sqrt(Sx Sy)), S = (n^3 - n)/12 - sum (t^3 - t)/12.
inline double spearman_direct(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  auto rx = ranks_by_counting(x), ry = ranks_by_counting(y);
  auto s = [&](const std::vector<double>& v) {
    std::map<double, double> ties;
    for (double e : v) ties[e] += 1;
    double t = 0;
    for (const auto& [value, c] : ties) t += c * c * c - c;
    return (n * n * n - n) / 12.0 - t / 12.0;
  };
  double d2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const double sx = s(x), sy = s(y);
  return (sx + sy - d2) / (2.0 * std::sqrt(sx * sy));
}

/// Exact one-sided p-value P(W+ >= observed) under the sign-flip null,
/// enumerating all 2^n sign patterns over the observed (average) ranks.
inline double wilcoxon_exact_upper(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d, mag;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) {
      d.push_back(a[i] - b[i]);
      mag.push_back(std::abs(a[i] - b[i]));
    }
  }
  auto r = ranks_by_counting(mag);
  double observed = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0) observed += r[i];
  }
  const std::uint64_t patterns = std::uint64_t{1} << d.size();
  std::uint64_t at_least = 0;
  for (std::uint64_t s = 0; s < patterns; ++s) {
    double w = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if ((s >> i) & 1U) w += r[i];
    }
    at_least += w >= observed - 1e-9;
  }
  return static_cast<double>(at_least) / static_cast<double>(patterns);
}

struct PairedCase {
  std::vector<double> a, b;
  std::size_t n, negatives;
  bool tied_top;
};

/// Small paired samples in the one-sided decision region: n in 6..8 distinct
/// magnitudes 1..n (optionally with the two largest tied), the `negatives`
/// smallest differences negative, keeping those whose exact p <= 0.11.
/// Near the centre of the null distribution the normal approximation drifts
/// by more than 0.01 at these sizes, so central cases are not included.
inline std::vector<PairedCase> small_sample_cases() {
  std::vector<PairedCase> out;
  for (std::size_t n = 6; n <= 8; ++n) {
    for (std::size_t k = 0; k <= 3; ++k) {
      for (bool tied : {false, true}) {
        PairedCase c{{}, {}, n, k, tied};
        for (std::size_t i = 0; i < n; ++i) {
          double mag = static_cast<double>(i + 1);
          if (tied && i == n - 1) mag = static_cast<double>(n - 1);
          double d = i < k ? -mag : mag;
          c.b.push_back(10.0 + static_cast<double>(i));
          c.a.push_back(c.b.back() + d);
        }
        if (wilcoxon_exact_upper(c.a, c.b) <= 0.11) out.push_back(std::move(c));
      }
    }
  }
  return out;
}

}  // namespace statsoracle
