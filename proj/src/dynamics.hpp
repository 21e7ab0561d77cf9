#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ingest.hpp"
#include "snapshot.hpp"

namespace egonet {

/// (next - x) / x; nullopt when x == 0.
std::optional<double> growth_rate(double x, double next);

/// D_i = sizes[i] - sizes[i-1] for i = 1..n-1.
std::vector<double> size_differences(std::span<const double> sizes);

/// Lost / stable / new alters between two consecutive active networks.
struct ChurnSummary {
  UserId ego;
  int period_from = 0;
  int period_to = 0;
  std::size_t n_lost = 0;
  std::size_t n_stable = 0;
  std::size_t n_new = 0;
  double lost = 0.0;
  double stable = 0.0;
  double gained = 0.0;  // fraction of new alters
  bool empty_union = false;

  std::size_t union_size() const { return n_lost + n_stable + n_new; }
};

/// Both inputs must be sorted and duplicate-free.
ChurnSummary churn(std::span<const UserId> before, std::span<const UserId> after);

enum class MovementDirection { inner, outer, same };
enum class MovementExtreme { to_innermost, to_outermost, same, neither };

std::string_view to_string(MovementDirection d);
std::string_view to_string(MovementExtreme e);

struct MovementRecord {
  UserId ego;
  UserId alter;
  int period_from = 0;
  int period_to = 0;
  MovementDirection direction = MovementDirection::same;
  MovementExtreme extreme = MovementExtreme::neither;
};

// How ring ranks of snapshots with different ring counts are compared.
enum class RankMode {
  raw,         // rank as is
  normalized,  // rank / ring count
};

std::string_view to_string(RankMode m);

/// One record per alter active in both snapshots, ordered by alter id.
std::vector<MovementRecord> ring_movement(const EgoNetworkSnapshot& before,
                                          const EgoNetworkSnapshot& after,
                                          RankMode mode = RankMode::raw);

}  // namespace egonet
