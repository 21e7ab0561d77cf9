#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ingest.hpp"

namespace egonet {

/// Directed ego -> alter contact frequency for one period, in interactions
/// per year.
struct TieStrength {
  UserId ego;
  UserId alter;
  int period_index = 0;
  std::uint32_t n_reply = 0;
  std::uint32_t n_mention = 0;
  std::uint32_t n_retweet = 0;
  double weight = 0.0;

  std::uint32_t interactions() const { return n_reply + n_mention + n_retweet; }
};

enum class WeightDenominator {
  period_length,        // count / |I_i|
  relationship_length,  // count / (period end - max(period start, first contact))
};

std::string_view to_string(WeightDenominator d);

/// One entry per alter with at least one reply/mention/retweet from the ego
/// inside the period, sorted by alter id.
std::vector<TieStrength> compute_weights(const Timeline& timeline, const PeriodWindow& period,
                                         WeightDenominator denominator = WeightDenominator::period_length);

struct ActiveNetwork {
  UserId ego;
  int period_index = 0;
  std::vector<UserId> alters;  // sorted

  std::size_t size() const { return alters.size(); }
};

/// Alters with weight >= threshold (closed comparison).
ActiveNetwork active_network(std::span<const TieStrength> weights, double threshold = 1.0);

/// The subset of `weights` whose weight meets the threshold, order preserved.
std::vector<TieStrength> active_ties(std::span<const TieStrength> weights, double threshold = 1.0);

}  // namespace egonet
