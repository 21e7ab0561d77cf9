#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "stats.hpp"

using namespace egonet;

namespace {

EgoNetworkSnapshot with_circles(const std::string& ego, int period, std::size_t k) {
  EgoNetworkSnapshot s;
  s.ego = ego;
  s.period_index = period;
  for (std::size_t i = 0; i < k; ++i) {
    Ring r;
    r.rank = static_cast<int>(i + 1);
    r.members = {ego + "_" + std::to_string(i)};
    s.rings.push_back(r);
  }
  return s;
}

}  // namespace

TEST_CASE("incomplete beta and t distribution") {
  CHECK(incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(2, 1) = x^2
  CHECK(incomplete_beta(2.0, 1.0, 0.6) == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(student_t_cdf(0.0, 5.0) == 0.5);
  // df = 1 is Cauchy.
  CHECK(student_t_cdf(1.0, 1.0) == doctest::Approx(0.75).epsilon(1e-14));
  for (double df : {1.0, 2.0, 4.5, 9.0, 30.0, 199.0})
    for (double t : {-40.0, -6.0, -2.5, -0.7, 0.0, 0.1, 1.3, 3.0, 8.0}) {
      CHECK(std::abs(student_t_cdf(t, df) - oracle::t_cdf(t, df)) <= 1e-12);
      CHECK(std::abs(student_t_cdf(t, df) + student_t_sf(t, df) - 1.0) <= 1e-12);
    }
  for (double df : {1.0, 3.0, 29.0})
    for (double p : {0.005, 0.1, 0.5, 0.9, 0.995})
      CHECK(std::abs(student_t_cdf(student_t_quantile(p, df), df) - p) <= 1e-12);
}

TEST_CASE("t-test examples") {
  SUBCASE("clearly positive mean") {
    const std::vector<double> xs{1.0, 1.1, 0.9, 1.05};
    const auto r = one_sided_t_test(xs, NullHypothesis::nonpositive);
    const auto o = oracle::summarize(xs);
    CHECK(r.p_value < 1e-4);
    CHECK(r.decision == Decision::rejected);
    CHECK(r.t_statistic == doctest::Approx(o.t).epsilon(1e-13));
    CHECK(std::abs(r.p_value - oracle::t_sf(o.t, 3.0)) <= 1e-9);
    const auto other = one_sided_t_test(xs, NullHypothesis::nonnegative);
    CHECK(other.decision == Decision::accepted);
    CHECK(std::abs(r.p_value + other.p_value - 1.0) <= 1e-12);
  }
  SUBCASE("all zeros is degenerate and accepted both ways") {
    const std::vector<double> zeros(5, 0.0);
    for (auto h : {NullHypothesis::nonpositive, NullHypothesis::nonnegative}) {
      const auto r = one_sided_t_test(zeros, h);
      CHECK(r.degenerate);
      CHECK(r.p_value == 1.0);
      CHECK(r.decision == Decision::accepted);
    }
  }
  SUBCASE("constant positive sample") {
    const std::vector<double> xs(4, 2.0);
    CHECK(one_sided_t_test(xs, NullHypothesis::nonpositive).decision == Decision::rejected);
    CHECK(one_sided_t_test(xs, NullHypothesis::nonnegative).decision == Decision::accepted);
  }
  SUBCASE("errors") {
    const std::vector<double> one{1.0};
    const std::vector<double> two{1.0, 2.0};
    CHECK_THROWS_AS(one_sided_t_test(one, NullHypothesis::nonpositive), std::invalid_argument);
    CHECK_THROWS_AS(one_sided_t_test(two, NullHypothesis::nonpositive, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(confidence_interval(one), std::invalid_argument);
  }
}

TEST_CASE("frozen battery against the integration oracle") {
  for (const auto& xs : oracle::t_battery()) {
    const auto o = oracle::summarize(xs);
    const double df = static_cast<double>(xs.size() - 1);
    const auto pos = one_sided_t_test(xs, NullHypothesis::nonpositive);
    const auto neg = one_sided_t_test(xs, NullHypothesis::nonnegative);
    CHECK(std::abs(pos.p_value - oracle::t_sf(o.t, df)) <= 1e-9);
    CHECK(std::abs(neg.p_value - oracle::t_cdf(o.t, df)) <= 1e-9);
    CHECK(std::abs(pos.p_value + neg.p_value - 1.0) <= 1e-12);
  }
}

TEST_CASE("confidence interval") {
  oracle::Normal z(42);
  std::vector<double> xs(30);
  for (auto& x : xs) x = 3.0 + z();
  const auto o = oracle::summarize(xs);
  const auto ci = confidence_interval(xs, 0.99);
  const double half = oracle::t_quantile(0.995, 29.0) * o.sd / std::sqrt(30.0);
  CHECK(std::abs(ci.lower - (o.mean - half)) <= 1e-9);
  CHECK(std::abs(ci.upper - (o.mean + half)) <= 1e-9);
  CHECK(ci.mean == doctest::Approx(o.mean).epsilon(1e-14));

  const auto narrow = confidence_interval(xs, 0.9);
  CHECK(narrow.upper - narrow.lower < ci.upper - ci.lower);

  const std::vector<double> flat(6, 4.0);
  const auto c = confidence_interval(flat);
  CHECK(c.lower == 4.0);
  CHECK(c.upper == 4.0);
}

TEST_CASE("property: t is invariant to positive scaling and p follows shifts") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    oracle::Normal z(rng());
    std::vector<double> xs(2 + rng() % 50);
    for (auto& x : xs) x = z() + 0.3;
    const auto base = one_sided_t_test(xs, NullHypothesis::nonpositive);
    if (base.degenerate) continue;

    const double c = std::ldexp(1.0, static_cast<int>(rng() % 11) - 5);
    auto scaled = xs;
    for (auto& x : scaled) x *= c;
    CHECK(one_sided_t_test(scaled, NullHypothesis::nonpositive).t_statistic == base.t_statistic);

    // Moving every sample up never raises the p-value of H0: mean <= 0.
    auto shifted = xs;
    for (auto& x : shifted) x += 0.5;
    CHECK(one_sided_t_test(shifted, NullHypothesis::nonpositive).p_value <= base.p_value);

    const auto neg = one_sided_t_test(xs, NullHypothesis::nonnegative);
    CHECK(std::abs(base.p_value + neg.p_value - 1.0) <= 1e-12);
  }
}

TEST_CASE("circle count histograms") {
  std::vector<EgoNetworkSnapshot> snaps{with_circles("a", 0, 3), with_circles("b", 0, 3),
                                        with_circles("c", 0, 4), with_circles("d", 0, 5),
                                        with_circles("a", 1, 7)};
  const auto h = circle_count_distribution(snaps, 0);
  CHECK(h == Histogram{{3, 0.5}, {4, 0.25}, {5, 0.25}});
  CHECK(circle_count_distribution(snaps, 1) == Histogram{{7, 1.0}});
  CHECK(circle_count_delta_distribution(snaps, 0, 1) == Histogram{{4, 1.0}});
  CHECK_THROWS_AS(circle_count_distribution(snaps, 2), std::invalid_argument);

  snaps.push_back(with_circles("b", 1, 3));
  snaps.push_back(with_circles("e", 1, 3));  // no earlier snapshot
  CHECK(circle_count_delta_distribution(snaps, 0, 1) == Histogram{{0, 0.5}, {4, 0.5}});
}

TEST_CASE("property: histograms sum to one") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<EgoNetworkSnapshot> snaps;
    const auto egos = 1 + rng() % 40;
    for (std::size_t e = 0; e < egos; ++e)
      for (int p = 0; p < 2; ++p) snaps.push_back(with_circles("e" + std::to_string(e), p, rng() % 9));
    double total = 0.0, delta_total = 0.0;
    for (const auto& [k, mass] : circle_count_distribution(snaps, 1)) total += mass;
    for (const auto& [k, mass] : circle_count_delta_distribution(snaps, 0, 1)) delta_total += mass;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(delta_total == doctest::Approx(1.0).epsilon(1e-12));
  }
}
