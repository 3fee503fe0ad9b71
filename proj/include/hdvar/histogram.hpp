#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "hdvar/error.hpp"

namespace hdvar {

struct Histogram {
  std::vector<double> edges;    ///< bins + 1 edges
  std::vector<std::size_t> counts;
  std::vector<double> density;  ///< count / (total * width)
  std::vector<double> kde;      ///< Gaussian KDE at bin centers
  double bandwidth = 0.0;

  [[nodiscard]] std::size_t bins() const noexcept { return counts.size(); }
  [[nodiscard]] double center(std::size_t k) const noexcept {
    return 0.5 * (edges[k] + edges[k + 1]);
  }
};

/// Linear-interpolated quantile of sorted data.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

/// Silverman's rule 0.9 min(sd, IQR/1.34) m^(-1/5).
inline double silverman_bandwidth(std::span<const double> values) {
  const std::size_t m = values.size();
  if (m < 2) return 1e-3;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(m - 1));
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  if (!(spread > 0.0)) return 1e-3;
  return 0.9 * spread * std::pow(static_cast<double>(m), -0.2);
}

inline double gaussian_kde(std::span<const double> values, double bandwidth, double at) {
  double s = 0.0;
  for (double v : values) {
    const double z = (at - v) / bandwidth;
    s += std::exp(-0.5 * z * z);
  }
  return s / (static_cast<double>(values.size()) * bandwidth *
              std::sqrt(2.0 * std::numbers::pi));
}

/// Equal-width bins over [min, max]; the maximum falls in the last bin. A
/// zero-width range is widened to [v - 0.005, v + 0.005].
inline Histogram make_histogram(std::span<const double> values, std::size_t bins = 30) {
  detail::require(!values.empty(), "make_histogram: no values");
  detail::require(bins >= 1, "make_histogram: bins must be >= 1");
  auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  double lo = *mn_it, hi = *mx_it;
  if (hi - lo <= 0.0) {
    lo -= 0.005;
    hi += 0.005;
  }
  Histogram h;
  h.edges.resize(bins + 1);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t k = 0; k <= bins; ++k) h.edges[k] = lo + width * static_cast<double>(k);
  h.edges[bins] = hi;
  h.counts.assign(bins, 0);
  for (double v : values) {
    auto k = static_cast<std::size_t>((v - lo) / width);
    if (k >= bins) k = bins - 1;
    ++h.counts[k];
  }
  const double total = static_cast<double>(values.size());
  h.density.resize(bins);
  h.kde.resize(bins);
  h.bandwidth = silverman_bandwidth(values);
  for (std::size_t k = 0; k < bins; ++k) {
    h.density[k] = static_cast<double>(h.counts[k]) / (total * width);
    h.kde[k] = gaussian_kde(values, h.bandwidth, h.center(k));
  }
  return h;
}

}  // namespace hdvar
