#pragma once

#include <chrono>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ingest.hpp"

namespace egonet {

// Which tweets the maximum inter-tweet time is measured over.
enum class IitScope {
  history,  // everything from the start of the timeline to the period end
  period,   // only tweets inside the period
};

struct ActivityOptions {
  IitScope iit_scope = IitScope::history;
  std::chrono::seconds grace = std::chrono::days{183};
};

/// Inactive iff (period end - last tweet) > (max inter-tweet gap) + grace.
/// Fewer than two tweets in scope means an unbounded gap, i.e. active, as long
/// as there is at least one tweet.
bool is_active(const Timeline& timeline, const PeriodWindow& period,
               const ActivityOptions& options = {});

/// Regular iff at least `min_fraction` of the calendar months overlapping the
/// period contain a reply, mention or retweet.
bool is_regular(const Timeline& timeline, const PeriodWindow& period, double min_fraction = 0.5);

struct CohortReport {
  std::size_t total_users = 0;
  std::size_t bot_excluded = 0;
  std::size_t inactive_excluded = 0;
  std::size_t irregular_excluded = 0;
  std::size_t outlier_excluded = 0;
  std::vector<UserId> final_cohort;  // sorted
  std::vector<UserId> outliers;      // sorted
};

/// Bot, activity and regularity stages, in that order. Outlier removal needs
/// active network sizes and is applied afterwards with exclude_outliers.
CohortReport select_cohort(const TimelineMap& timelines, std::span<const PeriodWindow> periods,
                           const std::set<UserId>& bots, const ActivityOptions& options = {});

struct OutlierBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double v) const { return lower <= v && v <= upper; }
};

/// Linear-interpolation quantile (R type 7) of ascending-sorted values.
double quantile_sorted(std::span<const double> sorted, double p);

/// (Q1 - 1.5 IQR, Q3 + 1.5 IQR).
OutlierBounds iqr_outlier_bounds(std::span<const double> values);

enum class OutlierMode {
  aggregate,   // IQR once, over each user's maximum active size across periods
  per_period,  // IQR per period; outlier in any period excludes the user
  off,
};

std::string_view to_string(OutlierMode mode);

/// `sizes` maps every cohort member to its active network size per period.
void exclude_outliers(CohortReport& report,
                      const std::map<UserId, std::vector<std::size_t>>& sizes, OutlierMode mode);

std::set<UserId> read_user_list(std::istream& in);

}  // namespace egonet
