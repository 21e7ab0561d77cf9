#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ingest.hpp"
#include "tie_strength.hpp"

namespace egonet {

enum class ClusterDomain { log10, raw };

std::string_view to_string(ClusterDomain d);

struct ClusteringConfig {
  ClusterDomain domain = ClusterDomain::log10;
  // When unset, bandwidth = median pairwise distance / bandwidth_divisor,
  // computed per ego and period in the clustering domain.
  std::optional<double> fixed_bandwidth;
  double bandwidth_divisor = 2.0;
  double tolerance = 1e-8;
  int max_iters = 500;
};

struct Ring {
  int rank = 1;                // 1 = most intimate
  std::vector<UserId> members;  // sorted
  double mean_weight = 0.0;
};

/// One ego's rings for one period. Circle k is the union of rings 1..k.
struct EgoNetworkSnapshot {
  UserId ego;
  int period_index = 0;
  std::vector<Ring> rings;  // strictly decreasing mean_weight
  double bandwidth = 0.0;
  std::size_t unconverged = 0;

  std::size_t num_circles() const { return rings.size(); }
  std::size_t active_size() const;
  std::vector<std::size_t> circle_sizes() const;
  std::vector<UserId> circle(std::size_t k) const;  // k is 1-based, sorted
  /// Rank of `alter`, 0 when it is not in the active network.
  int rank_of(const UserId& alter) const;
};

double select_bandwidth(std::span<const double> domain_values, const ClusteringConfig& config);

/// Clusters the active ties (all with positive weight, same ego and period)
/// into rings. An empty input yields a snapshot with no rings.
EgoNetworkSnapshot build_snapshot(std::span<const TieStrength> active,
                                  const ClusteringConfig& config = {});

/// |C_{k+1}| / |C_k| for consecutive circles; needs at least two circles.
std::vector<double> scaling_ratios(const EgoNetworkSnapshot& snapshot);

}  // namespace egonet
