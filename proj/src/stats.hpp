#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string_view>

#include "snapshot.hpp"

namespace egonet {

/// Regularized incomplete beta I_x(a, b). `y` must equal 1 - x; passing it
/// separately keeps precision when x is close to 1.
double incomplete_beta(double a, double b, double x, double y);
double incomplete_beta(double a, double b, double x);

/// Student t distribution with `df` degrees of freedom.
double student_t_cdf(double t, double df);
/// P(T > t).
double student_t_sf(double t, double df);
double student_t_quantile(double p, double df);

enum class NullHypothesis {
  nonpositive,  // H0: mean <= 0, rejected by large positive t
  nonnegative,  // H0: mean >= 0, rejected by large negative t
};

enum class Decision { accepted, rejected };

std::string_view to_string(NullHypothesis h);
std::string_view to_string(Decision d);

struct TestResult {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double t_statistic = 0.0;
  double p_value = 1.0;
  NullHypothesis direction = NullHypothesis::nonpositive;
  Decision decision = Decision::accepted;
  double alpha = 0.01;
  bool degenerate = false;  // zero sample variance
};

/// One-sample Student t-test of the mean against zero. With zero variance the
/// test is degenerate: p is 0 when the mean lies strictly inside the
/// alternative and 1 otherwise.
TestResult one_sided_t_test(std::span<const double> samples, NullHypothesis direction,
                            double alpha = 0.01);

struct IntervalEstimate {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.99;
};

/// mean +- t_{(1+level)/2, n-1} * s / sqrt(n).
IntervalEstimate confidence_interval(std::span<const double> samples, double level = 0.99);

using Histogram = std::map<long, double>;

/// Fraction of egos per number of circles in `period`.
Histogram circle_count_distribution(std::span<const EgoNetworkSnapshot> snapshots, int period);

/// Fraction of egos per change in number of circles from `from` to `to`.
Histogram circle_count_delta_distribution(std::span<const EgoNetworkSnapshot> snapshots, int from,
                                          int to);

}  // namespace egonet
