#include "dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace egonet {

std::optional<double> growth_rate(double x, double next) {
  if (x == 0.0) return std::nullopt;
  return (next - x) / x;
}

std::vector<double> size_differences(std::span<const double> sizes) {
  std::vector<double> d;
  for (std::size_t i = 1; i < sizes.size(); ++i) d.push_back(sizes[i] - sizes[i - 1]);
  return d;
}

ChurnSummary churn(std::span<const UserId> before, std::span<const UserId> after) {
  ChurnSummary s;
  auto i = before.begin();
  auto j = after.begin();
  while (i != before.end() && j != after.end()) {
    if (*i < *j) {
      ++s.n_lost;
      ++i;
    } else if (*j < *i) {
      ++s.n_new;
      ++j;
    } else {
      ++s.n_stable;
      ++i;
      ++j;
    }
  }
  s.n_lost += static_cast<std::size_t>(before.end() - i);
  s.n_new += static_cast<std::size_t>(after.end() - j);

  const std::size_t total = s.union_size();
  if (total == 0) {
    s.empty_union = true;
    return s;
  }
  const double denom = static_cast<double>(total);
  s.lost = static_cast<double>(s.n_lost) / denom;
  s.stable = static_cast<double>(s.n_stable) / denom;
  s.gained = static_cast<double>(s.n_new) / denom;
  return s;
}

std::string_view to_string(MovementDirection d) {
  switch (d) {
    case MovementDirection::inner: return "inner";
    case MovementDirection::outer: return "outer";
    case MovementDirection::same: return "same";
  }
  return "?";
}

std::string_view to_string(MovementExtreme e) {
  switch (e) {
    case MovementExtreme::to_innermost: return "to_innermost";
    case MovementExtreme::to_outermost: return "to_outermost";
    case MovementExtreme::same: return "same";
    case MovementExtreme::neither: return "neither";
  }
  return "?";
}

std::string_view to_string(RankMode m) { return m == RankMode::raw ? "raw" : "normalized"; }

std::vector<MovementRecord> ring_movement(const EgoNetworkSnapshot& before,
                                          const EgoNetworkSnapshot& after, RankMode mode) {
  if (!before.ego.empty() && !after.ego.empty() && before.ego != after.ego)
    throw std::invalid_argument("ring movement needs two snapshots of the same ego");

  const int outer_before = static_cast<int>(before.rings.size());
  const int outer_after = static_cast<int>(after.rings.size());
  std::vector<MovementRecord> out;
  for (const auto& ring : before.rings) {
    for (const auto& alter : ring.members) {
      const int to = after.rank_of(alter);
      if (to == 0) continue;
      const int from = ring.rank;

      MovementRecord m{before.ego, alter, before.period_index, after.period_index};
      // Cross-multiplied to compare from/outer_before with to/outer_after exactly.
      const long lhs = mode == RankMode::raw ? from : static_cast<long>(from) * outer_after;
      const long rhs = mode == RankMode::raw ? to : static_cast<long>(to) * outer_before;
      m.direction = rhs < lhs   ? MovementDirection::inner
                    : rhs > lhs ? MovementDirection::outer
                                : MovementDirection::same;

      if (to == 1 && from != 1)
        m.extreme = MovementExtreme::to_innermost;
      else if (to == outer_after && from != outer_before)
        m.extreme = MovementExtreme::to_outermost;
      else if (to == from)
        m.extreme = MovementExtreme::same;
      else
        m.extreme = MovementExtreme::neither;
      out.push_back(std::move(m));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.alter < b.alter; });
  return out;
}

}  // namespace egonet
