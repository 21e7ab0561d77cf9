#include "snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mean_shift.hpp"

namespace egonet {

std::string_view to_string(ClusterDomain d) { return d == ClusterDomain::log10 ? "log10" : "raw"; }

std::size_t EgoNetworkSnapshot::active_size() const {
  std::size_t total = 0;
  for (const auto& r : rings) total += r.members.size();
  return total;
}

std::vector<std::size_t> EgoNetworkSnapshot::circle_sizes() const {
  std::vector<std::size_t> sizes;
  std::size_t total = 0;
  for (const auto& r : rings) {
    total += r.members.size();
    sizes.push_back(total);
  }
  return sizes;
}

std::vector<UserId> EgoNetworkSnapshot::circle(std::size_t k) const {
  if (k < 1 || k > rings.size()) throw std::out_of_range("circle index out of range");
  std::vector<UserId> out;
  for (std::size_t i = 0; i < k; ++i)
    out.insert(out.end(), rings[i].members.begin(), rings[i].members.end());
  std::sort(out.begin(), out.end());
  return out;
}

int EgoNetworkSnapshot::rank_of(const UserId& alter) const {
  for (const auto& r : rings)
    if (std::binary_search(r.members.begin(), r.members.end(), alter)) return r.rank;
  return 0;
}

double select_bandwidth(std::span<const double> domain_values, const ClusteringConfig& config) {
  if (config.fixed_bandwidth) {
    if (!(*config.fixed_bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    return *config.fixed_bandwidth;
  }
  if (!(config.bandwidth_divisor > 0.0))
    throw std::invalid_argument("bandwidth divisor must be positive");
  double spread = median_pairwise_distance(domain_values);
  if (spread <= 0.0 && domain_values.size() > 1) {
    // Mostly-tied weights: fall back to the full range.
    const auto [lo, hi] = std::minmax_element(domain_values.begin(), domain_values.end());
    spread = *hi - *lo;
  }
  return spread > 0.0 ? spread / config.bandwidth_divisor : 1.0;
}

EgoNetworkSnapshot build_snapshot(std::span<const TieStrength> active,
                                  const ClusteringConfig& config) {
  EgoNetworkSnapshot snap;
  if (active.empty()) return snap;
  snap.ego = active.front().ego;
  snap.period_index = active.front().period_index;

  std::vector<double> domain_values;
  domain_values.reserve(active.size());
  for (const auto& t : active) {
    if (!(t.weight > 0.0)) throw std::invalid_argument("active ties need positive weights");
    domain_values.push_back(config.domain == ClusterDomain::log10 ? std::log10(t.weight) : t.weight);
  }
  snap.bandwidth = select_bandwidth(domain_values, config);
  const auto ms = mean_shift_1d(domain_values, snap.bandwidth, config.tolerance, config.max_iters);
  snap.unconverged = ms.unconverged.size();

  std::vector<Ring> rings(ms.modes.size());
  std::vector<double> weight_sum(ms.modes.size(), 0.0);
  for (std::size_t i = 0; i < active.size(); ++i) {
    rings[ms.labels[i]].members.push_back(active[i].alter);
    weight_sum[ms.labels[i]] += active[i].weight;
  }
  for (std::size_t m = 0; m < rings.size(); ++m) {
    if (rings[m].members.empty()) continue;
    rings[m].mean_weight = weight_sum[m] / static_cast<double>(rings[m].members.size());
    std::sort(rings[m].members.begin(), rings[m].members.end());
  }
  std::erase_if(rings, [](const Ring& r) { return r.members.empty(); });
  std::stable_sort(rings.begin(), rings.end(),
                   [](const Ring& a, const Ring& b) { return a.mean_weight > b.mean_weight; });
  for (std::size_t k = 0; k < rings.size(); ++k) rings[k].rank = static_cast<int>(k + 1);
  snap.rings = std::move(rings);
  return snap;
}

std::vector<double> scaling_ratios(const EgoNetworkSnapshot& snapshot) {
  if (snapshot.num_circles() < 2) throw std::invalid_argument("scaling ratios need at least two circles");
  const auto sizes = snapshot.circle_sizes();
  std::vector<double> ratios;
  for (std::size_t k = 1; k < sizes.size(); ++k)
    ratios.push_back(static_cast<double>(sizes[k]) / static_cast<double>(sizes[k - 1]));
  return ratios;
}

}  // namespace egonet
