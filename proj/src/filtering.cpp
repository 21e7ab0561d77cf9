#include "filtering.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <stdexcept>

namespace egonet {

namespace chr = std::chrono;

bool is_active(const Timeline& timeline, const PeriodWindow& period,
               const ActivityOptions& options) {
  const Timestamp from = options.iit_scope == IitScope::period ? period.start : Timestamp::min();
  const auto tweets = records_between(timeline, from, period.end);
  if (tweets.empty()) return false;
  if (tweets.size() < 2) return true;

  chr::seconds max_gap{0};
  for (std::size_t i = 1; i < tweets.size(); ++i)
    max_gap = std::max(max_gap, tweets[i].timestamp - tweets[i - 1].timestamp);
  const chr::seconds inactive_life = period.end - tweets.back().timestamp;
  return inactive_life <= max_gap + options.grace;
}

namespace {

int month_index(Timestamp t) {
  const chr::year_month_day ymd{chr::floor<chr::days>(t)};
  return static_cast<int>(ymd.year()) * 12 + static_cast<int>(static_cast<unsigned>(ymd.month())) - 1;
}

}  // namespace

bool is_regular(const Timeline& timeline, const PeriodWindow& period, double min_fraction) {
  const int first = month_index(period.start);
  const int last = month_index(period.end - chr::seconds{1});
  const int months = last - first + 1;

  std::vector<bool> seen(static_cast<std::size_t>(months), false);
  int hit = 0;
  for (const auto& r : records_between(timeline, period.start, period.end)) {
    if (!is_social(r.kind)) continue;
    const auto slot = static_cast<std::size_t>(month_index(r.timestamp) - first);
    if (!seen[slot]) {
      seen[slot] = true;
      ++hit;
    }
  }
  return hit >= min_fraction * months;
}

CohortReport select_cohort(const TimelineMap& timelines, std::span<const PeriodWindow> periods,
                           const std::set<UserId>& bots, const ActivityOptions& options) {
  if (periods.empty()) throw std::invalid_argument("select_cohort needs at least one period");
  CohortReport report;
  report.total_users = timelines.size();
  for (const auto& [ego, timeline] : timelines) {
    if (bots.contains(ego)) {
      ++report.bot_excluded;
      continue;
    }
    const bool active = std::all_of(periods.begin(), periods.end(), [&](const auto& p) {
      return is_active(timeline, p, options);
    });
    if (!active) {
      ++report.inactive_excluded;
      continue;
    }
    const bool regular = std::all_of(periods.begin(), periods.end(),
                                     [&](const auto& p) { return is_regular(timeline, p); });
    if (!regular) {
      ++report.irregular_excluded;
      continue;
    }
    report.final_cohort.push_back(ego);
  }
  return report;
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

OutlierBounds iqr_outlier_bounds(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("IQR bounds of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  if (std::any_of(sorted.begin(), sorted.end(), [](double v) { return !std::isfinite(v); }))
    throw std::invalid_argument("IQR bounds need finite values");
  std::sort(sorted.begin(), sorted.end());
  const double q1 = quantile_sorted(sorted, 0.25);
  const double q3 = quantile_sorted(sorted, 0.75);
  const double iqr = q3 - q1;
  return {q1 - 1.5 * iqr, q3 + 1.5 * iqr};
}

std::string_view to_string(OutlierMode mode) {
  switch (mode) {
    case OutlierMode::aggregate: return "aggregate";
    case OutlierMode::per_period: return "per-period";
    case OutlierMode::off: return "off";
  }
  return "?";
}

void exclude_outliers(CohortReport& report,
                      const std::map<UserId, std::vector<std::size_t>>& sizes, OutlierMode mode) {
  if (mode == OutlierMode::off || report.final_cohort.empty()) return;

  auto sizes_of = [&](const UserId& u) -> const std::vector<std::size_t>& {
    const auto it = sizes.find(u);
    if (it == sizes.end()) throw std::invalid_argument("missing active sizes for " + u);
    return it->second;
  };

  std::set<UserId> flagged;
  if (mode == OutlierMode::aggregate) {
    std::vector<double> maxima;
    for (const auto& u : report.final_cohort) {
      const auto& s = sizes_of(u);
      maxima.push_back(s.empty() ? 0.0 : static_cast<double>(*std::max_element(s.begin(), s.end())));
    }
    const auto bounds = iqr_outlier_bounds(maxima);
    for (std::size_t i = 0; i < maxima.size(); ++i)
      if (!bounds.contains(maxima[i])) flagged.insert(report.final_cohort[i]);
  } else {
    const std::size_t num_periods = sizes_of(report.final_cohort.front()).size();
    for (std::size_t k = 0; k < num_periods; ++k) {
      std::vector<double> column;
      for (const auto& u : report.final_cohort) column.push_back(static_cast<double>(sizes_of(u).at(k)));
      const auto bounds = iqr_outlier_bounds(column);
      for (std::size_t i = 0; i < column.size(); ++i)
        if (!bounds.contains(column[i])) flagged.insert(report.final_cohort[i]);
    }
  }

  std::vector<UserId> kept;
  for (auto& u : report.final_cohort) {
    if (flagged.contains(u))
      report.outliers.push_back(u);
    else
      kept.push_back(std::move(u));
  }
  report.final_cohort = std::move(kept);
  report.outlier_excluded = report.outliers.size();
}

std::set<UserId> read_user_list(std::istream& in) {
  std::set<UserId> users;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    const auto start = line.find_first_not_of(' ');
    if (start == std::string::npos || line[start] == '#') continue;
    users.insert(line.substr(start));
  }
  return users;
}

}  // namespace egonet
