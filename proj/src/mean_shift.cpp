#include "mean_shift.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace egonet {

MeanShiftResult mean_shift_1d(std::span<const double> values, double bandwidth, double tolerance,
                              int max_iters) {
  if (values.empty()) throw std::invalid_argument("mean shift needs at least one value");
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
    throw std::invalid_argument("mean shift bandwidth must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("mean shift tolerance must be positive");
  if (std::any_of(values.begin(), values.end(), [](double v) { return !std::isfinite(v); }))
    throw std::invalid_argument("mean shift needs finite values");

  const std::size_t n = values.size();
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sorted[i];

  auto window_mean = [&](double y) {
    const auto lo = std::lower_bound(sorted.begin(), sorted.end(), y - bandwidth) - sorted.begin();
    const auto hi = std::upper_bound(sorted.begin(), sorted.end(), y + bandwidth) - sorted.begin();
    // The window always holds at least one input: the start point at first,
    // and afterwards the mean of a set whose gaps are all <= 2 * bandwidth.
    return (prefix[static_cast<std::size_t>(hi)] - prefix[static_cast<std::size_t>(lo)]) /
           static_cast<double>(hi - lo);
  };

  MeanShiftResult result;
  std::vector<double> position(n);
  std::vector<bool> converged(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    double y = values[i];
    for (int iter = 0; iter < max_iters; ++iter) {
      const double next = window_mean(y);
      const double step = std::abs(next - y);
      y = next;
      if (step < tolerance) {
        converged[i] = true;
        break;
      }
    }
    position[i] = y;
    if (!converged[i]) result.unconverged.push_back(i);
  }

  std::vector<double> anchors;
  for (std::size_t i = 0; i < n; ++i)
    if (converged[i]) anchors.push_back(position[i]);
  if (anchors.empty()) anchors = position;
  std::sort(anchors.begin(), anchors.end(), std::greater<>{});

  // Groups of converged positions, descending, split on gaps > bandwidth / 2.
  const double merge_radius = bandwidth / 2.0;
  std::vector<std::pair<double, double>> groups;  // (highest, lowest) position
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= anchors.size(); ++i) {
    if (i == anchors.size() || anchors[i - 1] - anchors[i] > merge_radius) {
      const double sum = std::accumulate(anchors.begin() + static_cast<std::ptrdiff_t>(begin),
                                         anchors.begin() + static_cast<std::ptrdiff_t>(i), 0.0);
      result.modes.push_back(sum / static_cast<double>(i - begin));
      groups.emplace_back(anchors[begin], anchors[i - 1]);
      begin = i;
    }
  }

  result.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = position[i];
    std::size_t label = 0;
    if (converged[i] || result.unconverged.size() == n) {
      while (!(y >= groups[label].second)) ++label;
    } else {
      double best = std::abs(y - result.modes[0]);
      for (std::size_t m = 1; m < result.modes.size(); ++m) {
        const double d = std::abs(y - result.modes[m]);
        if (d < best) {
          best = d;
          label = m;
        }
      }
    }
    result.labels[i] = label;
  }
  return result;
}

double median_pairwise_distance(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  std::vector<double> d;
  d.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.push_back(std::abs(values[i] - values[j]));
  const std::size_t mid = d.size() / 2;
  std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid), d.end());
  const double upper = d[mid];
  if (d.size() % 2 == 1) return upper;
  const double lower = *std::max_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace egonet
