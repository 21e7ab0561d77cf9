#include "tie_strength.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace egonet {

std::string_view to_string(WeightDenominator d) {
  return d == WeightDenominator::period_length ? "period" : "relationship";
}

std::vector<TieStrength> compute_weights(const Timeline& timeline, const PeriodWindow& period,
                                         WeightDenominator denominator) {
  std::unordered_map<std::string_view, TieStrength> by_alter;
  for (const auto& r : records_between(timeline, period.start, period.end)) {
    if (!is_social(r.kind)) continue;
    auto& tie = by_alter[r.alter];
    switch (r.kind) {
      case InteractionKind::reply: ++tie.n_reply; break;
      case InteractionKind::mention: ++tie.n_mention; break;
      case InteractionKind::retweet: ++tie.n_retweet; break;
      case InteractionKind::plain_tweet: break;
    }
  }

  std::unordered_map<std::string_view, Timestamp> first_contact;
  if (denominator == WeightDenominator::relationship_length) {
    for (const auto& r : records_between(timeline, Timestamp::min(), period.end))
      if (is_social(r.kind) && by_alter.contains(r.alter)) first_contact.try_emplace(r.alter, r.timestamp);
  }

  constexpr double seconds_per_year = 365.25 * 86400.0;
  std::vector<TieStrength> out;
  out.reserve(by_alter.size());
  for (auto& [alter, tie] : by_alter) {
    tie.ego = timeline.ego;
    tie.alter = UserId{alter};
    tie.period_index = period.index;
    double years = period.length_years;
    if (denominator == WeightDenominator::relationship_length) {
      const Timestamp since = std::max(period.start, first_contact.at(alter));
      years = static_cast<double>((period.end - since).count()) / seconds_per_year;
    }
    tie.weight = static_cast<double>(tie.interactions()) / years;
    out.push_back(std::move(tie));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.alter < b.alter; });
  return out;
}

ActiveNetwork active_network(std::span<const TieStrength> weights, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("activity threshold must be positive");
  ActiveNetwork net;
  if (!weights.empty()) {
    net.ego = weights.front().ego;
    net.period_index = weights.front().period_index;
  }
  for (const auto& w : weights)
    if (w.weight >= threshold) net.alters.push_back(w.alter);
  std::sort(net.alters.begin(), net.alters.end());
  return net;
}

std::vector<TieStrength> active_ties(std::span<const TieStrength> weights, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("activity threshold must be positive");
  std::vector<TieStrength> out;
  std::copy_if(weights.begin(), weights.end(), std::back_inserter(out),
               [&](const auto& w) { return w.weight >= threshold; });
  return out;
}

}  // namespace egonet
