#include "stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace egonet {

namespace {

// Continued fraction for I_x(a, b) (modified Lentz), valid for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 20000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x, double y) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete beta needs a, b > 0");
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
    throw std::invalid_argument("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (y == 0.0) return 1.0;
  const double log_front =
      a * std::log(x) + b * std::log(y) - (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(log_front) * beta_continued_fraction(a, b, x) / a;
  return 1.0 - std::exp(log_front) * beta_continued_fraction(b, a, y) / b;
}

double incomplete_beta(double a, double b, double x) { return incomplete_beta(a, b, x, 1.0 - x); }

double student_t_sf(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("t distribution needs df > 0");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double t2 = t * t;
  const double x = df / (df + t2);
  const double y = t2 / (df + t2);
  const double two_sided = incomplete_beta(df / 2.0, 0.5, x, y);  // P(|T| > |t|)
  return t >= 0 ? 0.5 * two_sided : 1.0 - 0.5 * two_sided;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("t distribution needs df > 0");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double t2 = t * t;
  const double two_sided = incomplete_beta(df / 2.0, 0.5, df / (df + t2), t2 / (df + t2));
  return t <= 0 ? 0.5 * two_sided : 1.0 - 0.5 * two_sided;
}

double student_t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("t quantile needs p in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p < 0.5) return -student_t_quantile(1.0 - p, df);
  // Upper tail: bracket, then bisect on the survival function, which keeps
  // full relative precision for p close to 1.
  const double q = 1.0 - p;
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_sf(hi, df) > q) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return std::numeric_limits<double>::infinity();
  }
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (student_t_sf(mid, df) > q)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::string_view to_string(NullHypothesis h) {
  return h == NullHypothesis::nonpositive ? "H0_nonpositive" : "H0_nonnegative";
}

std::string_view to_string(Decision d) { return d == Decision::accepted ? "ACCEPTED" : "REJECTED"; }

namespace {

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

Moments sample_moments(std::span<const double> samples) {
  Moments m;
  const double n = static_cast<double>(samples.size());
  for (double v : samples) m.mean += v;
  m.mean /= n;
  double ss = 0.0;
  for (double v : samples) ss += (v - m.mean) * (v - m.mean);
  m.stddev = std::sqrt(ss / (n - 1.0));
  return m;
}

}  // namespace

TestResult one_sided_t_test(std::span<const double> samples, NullHypothesis direction, double alpha) {
  if (samples.size() < 2) throw std::invalid_argument("t-test needs at least two samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  const auto m = sample_moments(samples);
  TestResult r;
  r.n = samples.size();
  r.mean = m.mean;
  r.stddev = m.stddev;
  r.direction = direction;
  r.alpha = alpha;

  if (m.stddev == 0.0) {
    r.degenerate = true;
    const bool in_alternative = direction == NullHypothesis::nonpositive ? m.mean > 0 : m.mean < 0;
    r.t_statistic = m.mean == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), m.mean);
    r.p_value = in_alternative ? 0.0 : 1.0;
  } else {
    const double df = static_cast<double>(r.n) - 1.0;
    r.t_statistic = m.mean / (m.stddev / std::sqrt(static_cast<double>(r.n)));
    r.p_value = direction == NullHypothesis::nonpositive ? student_t_sf(r.t_statistic, df)
                                                         : student_t_cdf(r.t_statistic, df);
  }
  r.decision = r.p_value < alpha ? Decision::rejected : Decision::accepted;
  return r;
}

IntervalEstimate confidence_interval(std::span<const double> samples, double level) {
  if (samples.size() < 2) throw std::invalid_argument("confidence interval needs at least two samples");
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must lie in (0, 1)");
  const auto m = sample_moments(samples);
  const double n = static_cast<double>(samples.size());
  const double half =
      m.stddev == 0.0 ? 0.0 : student_t_quantile((1.0 + level) / 2.0, n - 1.0) * m.stddev / std::sqrt(n);
  return {m.mean, m.mean - half, m.mean + half, level};
}

Histogram circle_count_distribution(std::span<const EgoNetworkSnapshot> snapshots, int period) {
  Histogram h;
  std::size_t egos = 0;
  for (const auto& s : snapshots) {
    if (s.period_index != period) continue;
    h[static_cast<long>(s.num_circles())] += 1.0;
    ++egos;
  }
  if (egos == 0) throw std::invalid_argument("circle count distribution of an empty cohort");
  for (auto& [bin, mass] : h) mass /= static_cast<double>(egos);
  return h;
}

Histogram circle_count_delta_distribution(std::span<const EgoNetworkSnapshot> snapshots, int from,
                                          int to) {
  std::unordered_map<std::string_view, long> before;
  for (const auto& s : snapshots)
    if (s.period_index == from) before[s.ego] = static_cast<long>(s.num_circles());
  Histogram h;
  std::size_t egos = 0;
  for (const auto& s : snapshots) {
    if (s.period_index != to) continue;
    const auto it = before.find(s.ego);
    if (it == before.end()) continue;
    h[static_cast<long>(s.num_circles()) - it->second] += 1.0;
    ++egos;
  }
  if (egos == 0) throw std::invalid_argument("circle count delta distribution of an empty cohort");
  for (auto& [bin, mass] : h) mass /= static_cast<double>(egos);
  return h;
}

}  // namespace egonet
