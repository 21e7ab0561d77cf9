#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "filtering.hpp"
#include "oracles.hpp"

using namespace egonet;
using namespace std::chrono;

namespace {

Timestamp on(int y, int m, int d) { return sys_days{year{y} / m / d}; }

PeriodWindow year_2020() {
  return make_periods(sys_days{2020y / 1 / 1}, 1, {1, PeriodLength::Unit::years}).front();
}

Timeline timeline_of(std::vector<Timestamp> times, InteractionKind kind = InteractionKind::reply) {
  Timeline tl{"u", {}};
  std::sort(times.begin(), times.end());
  for (auto t : times) tl.records.push_back({"u", kind == InteractionKind::plain_tweet ? "" : "a", kind, t});
  return tl;
}

std::vector<Timestamp> every(Timestamp from, Timestamp to, days step) {
  std::vector<Timestamp> out;
  for (auto t = from; t <= to; t += step) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("is_active examples") {
  const auto p = year_2020();
  SUBCASE("silent for 7 months after fortnightly tweeting") {
    CHECK_FALSE(is_active(timeline_of(every(on(2019, 6, 1), on(2020, 5, 31), days{14})), p));
  }
  SUBCASE("last tweet on the final day") {
    CHECK(is_active(timeline_of({on(2020, 1, 5), on(2020, 12, 31)}), p));
  }
  SUBCASE("silent for 5 months after monthly tweeting") {
    std::vector<Timestamp> ts;
    for (int m = 1; m <= 8; ++m) ts.push_back(on(2020, m, 1));
    CHECK(is_active(timeline_of(ts), p));
  }
  SUBCASE("closed boundary") {
    // Gap 10 days, silence exactly 193 days.
    const auto last = p.end - days{193};
    CHECK(is_active(timeline_of({last - days{10}, last}), p));
    CHECK_FALSE(is_active(timeline_of({last - days{10}, last - seconds{1}}), p));
  }
  SUBCASE("one tweet is active, none is not") {
    CHECK(is_active(timeline_of({on(2020, 1, 2)}), p));
    CHECK_FALSE(is_active(timeline_of({}), p));
    CHECK_FALSE(is_active(timeline_of({on(2021, 2, 1)}), p));
  }
  SUBCASE("history scope sees gaps before the period") {
    auto ts = every(on(2020, 1, 1), on(2020, 6, 1), days{10});
    ts.push_back(on(2017, 1, 1));
    const auto tl = timeline_of(ts);
    CHECK(is_active(tl, p));
    CHECK_FALSE(is_active(tl, p, {IitScope::period}));
  }
}

TEST_CASE("is_regular examples") {
  const auto p = year_2020();
  std::vector<Timestamp> six, five;
  for (int m = 1; m <= 6; ++m) six.push_back(on(2020, 2 * m - 1, 15));
  for (int m = 1; m <= 5; ++m) five.push_back(on(2020, 2 * m, 15));
  CHECK(is_regular(timeline_of(six), p));
  CHECK_FALSE(is_regular(timeline_of(five), p));
  CHECK_FALSE(is_regular(timeline_of(every(on(2020, 1, 1), on(2020, 12, 31), days{1}),
                                     InteractionKind::plain_tweet),
                         p));
  SUBCASE("months are clipped to a short period") {
    const auto q = make_periods(sys_days{2020y / 1 / 20}, 1, {30, PeriodLength::Unit::days}).front();
    CHECK(is_regular(timeline_of({on(2020, 2, 2)}), q));  // one of two months
  }
}

TEST_CASE("property: is_regular ignores interaction targets") {
  std::mt19937_64 rng(3);
  const auto p = year_2020();
  for (int trial = 0; trial < 200; ++trial) {
    Timeline tl{"u", {}};
    const int n = static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i)
      tl.records.push_back({"u", "a" + std::to_string(rng() % 4), InteractionKind::mention,
                            p.start + seconds{static_cast<long>(rng() % 31'536'000)}});
    std::sort(tl.records.begin(), tl.records.end(),
              [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    const bool before = is_regular(tl, p);
    for (auto& r : tl.records) r.alter = "b" + std::to_string(rng() % 1000);
    CHECK(is_regular(tl, p) == before);
  }
}

TEST_CASE("property: tweeting after the last tweet never deactivates") {
  // Needs two tweets to start with: a lone tweet has no gap and counts as
  // active, and a second one can make the gap finite.
  std::mt19937_64 rng(17);
  const auto p = year_2020();
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Timestamp> ts;
    const int n = 2 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) ts.push_back(p.start - days{400} + seconds{static_cast<long>(rng() % 60'000'000)});
    std::sort(ts.begin(), ts.end());
    if (!(ts.back() < p.end)) continue;
    if (!is_active(timeline_of(ts), p)) continue;
    const auto room = (p.end - ts.back()).count();
    ts.push_back(ts.back() + seconds{static_cast<long>(rng() % static_cast<std::uint64_t>(room))});
    CHECK(is_active(timeline_of(ts), p));
  }
}

TEST_CASE("counterexample: tweets between earlier tweets can deactivate") {
  // Adding tweets inside the period can shrink the maximum gap below the
  // silence that follows, so activity is not monotone in general.
  const auto p = year_2020();
  const auto sparse = timeline_of({p.start, p.start + days{170}});
  CHECK(is_active(sparse, p));
  const auto dense = timeline_of(every(p.start, p.start + days{170}, days{10}));
  CHECK_FALSE(is_active(dense, p));
}

TEST_CASE("select_cohort stages") {
  const auto periods = make_periods(sys_days{2019y / 1 / 1}, 2, {1, PeriodLength::Unit::years});
  auto monthly = [](const std::string& ego, int until_year, int until_month) {
    Timeline tl{ego, {}};
    for (int y = 2019; y <= 2020; ++y)
      for (int m = 1; m <= 12; ++m)
        if (y < until_year || (y == until_year && m <= until_month))
          tl.records.push_back({ego, "a", InteractionKind::reply, on(y, m, 10)});
    return tl;
  };
  TimelineMap tls;
  tls["good"] = monthly("good", 2020, 12);
  tls["bot"] = monthly("bot", 2020, 12);
  tls["gone"] = monthly("gone", 2020, 4);
  auto gap = monthly("gap", 2020, 12);
  std::erase_if(gap.records, [](const auto& r) { return r.timestamp >= on(2019, 5, 1) && r.timestamp < on(2019, 12, 1); });
  tls["gap"] = gap;  // irregular in 2019 only

  const auto report = select_cohort(tls, periods, {"bot"});
  CHECK(report.total_users == 4);
  CHECK(report.bot_excluded == 1);
  CHECK(report.inactive_excluded == 1);
  CHECK(report.irregular_excluded == 1);
  CHECK(report.final_cohort == std::vector<UserId>{"good"});
  CHECK(report.total_users - report.bot_excluded - report.inactive_excluded - report.irregular_excluded ==
        report.final_cohort.size());
}

TEST_CASE("select_cohort is independent of record order") {
  std::mt19937_64 rng(8);
  const auto periods = make_periods(sys_days{2019y / 1 / 1}, 2, {1, PeriodLength::Unit::years});
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<InteractionRecord> rs;
    for (int i = 0; i < 400; ++i)
      rs.push_back({"u" + std::to_string(rng() % 8), "a", InteractionKind::reply,
                    on(2019, 1, 1) + seconds{static_cast<long>(rng() % 63'158'400)}});
    const auto a = select_cohort(build_timelines(rs), periods, {"u3"});
    std::shuffle(rs.begin(), rs.end(), rng);
    const auto b = select_cohort(build_timelines(rs), periods, {"u3"});
    CHECK(a.final_cohort == b.final_cohort);
    CHECK(a.inactive_excluded == b.inactive_excluded);
    CHECK(a.irregular_excluded == b.irregular_excluded);
  }
}

TEST_CASE("IQR bounds") {
  SUBCASE("one high outlier") {
    const std::vector<double> v{1, 2, 3, 4, 100};
    CHECK(oracle::quantile(v, 0.25) == 2.0);
    CHECK(oracle::quantile(v, 0.75) == 4.0);
    const auto b = iqr_outlier_bounds(v);
    CHECK(b.lower == -1.0);
    CHECK(b.upper == 7.0);
    CHECK_FALSE(b.contains(100));
    CHECK(b.contains(1));
  }
  SUBCASE("constant sample") {
    const std::vector<double> v(9, 4.5);
    const auto b = iqr_outlier_bounds(v);
    CHECK(b.lower == 4.5);
    CHECK(b.upper == 4.5);
    CHECK(b.contains(4.5));
  }
  SUBCASE("symmetric sample without a tail") {
    const std::vector<double> v{-3, -2, -1, -0.5, 0, 0.5, 1, 2, 3};
    const auto b = iqr_outlier_bounds(v);
    for (double x : v) CHECK(b.contains(x));
    const double q1 = oracle::quantile(v, 0.25), q3 = oracle::quantile(v, 0.75);
    CHECK(b.lower == doctest::Approx(q1 - 1.5 * (q3 - q1)).epsilon(1e-15));
    CHECK(b.upper == doctest::Approx(q3 + 1.5 * (q3 - q1)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(iqr_outlier_bounds(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("property: quantiles match the reference on random samples") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(1 + rng() % 40);
    for (auto& x : v) x = static_cast<double>(rng() % 1000) / 7.0;
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    for (double p : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0})
      CHECK(quantile_sorted(sorted, p) == doctest::Approx(oracle::quantile(v, p)).epsilon(1e-12));
  }
}

TEST_CASE("property: IQR bounds shift with the data") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> v(2 + rng() % 30);
    // Integers keep the arithmetic exact.
    for (auto& x : v) x = static_cast<double>(rng() % 200);
    const double c = static_cast<double>(static_cast<int>(rng() % 2000) - 1000);
    auto shifted = v;
    for (auto& x : shifted) x += c;
    const auto a = iqr_outlier_bounds(v), b = iqr_outlier_bounds(shifted);
    CHECK(b.lower == doctest::Approx(a.lower + c).epsilon(1e-12));
    CHECK(b.upper == doctest::Approx(a.upper + c).epsilon(1e-12));
  }
}

TEST_CASE("exclude_outliers modes") {
  CohortReport base;
  base.final_cohort = {"a", "b", "c", "d", "e"};
  std::map<UserId, std::vector<std::size_t>> sizes{
      {"a", {1, 1}}, {"b", {2, 2}}, {"c", {3, 3}}, {"d", {4, 4}}, {"e", {3, 100}}};
  SUBCASE("aggregate uses each user's maximum") {
    auto r = base;
    exclude_outliers(r, sizes, OutlierMode::aggregate);
    CHECK(r.outliers == std::vector<UserId>{"e"});
    CHECK(r.outlier_excluded == 1);
    CHECK(r.final_cohort.size() == 4);
  }
  SUBCASE("per period") {
    auto r = base;
    exclude_outliers(r, sizes, OutlierMode::per_period);
    CHECK(r.outliers == std::vector<UserId>{"e"});
  }
  SUBCASE("off") {
    auto r = base;
    exclude_outliers(r, sizes, OutlierMode::off);
    CHECK(r.final_cohort.size() == 5);
  }
}

TEST_CASE("user list") {
  std::istringstream in("# bots\nb1\n\n  b2  \nb1\n");
  CHECK(read_user_list(in) == std::set<UserId>{"b1", "b2"});
}
