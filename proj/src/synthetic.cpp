#include "synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace egonet {

namespace chr = std::chrono;

void validate(const ScenarioConfig& c) {
  if (c.num_egos == 0) throw std::invalid_argument("num_egos must be positive");
  if (c.periods < 1) throw std::invalid_argument("periods must be at least 1");
  if (c.period_length.count < 1) throw std::invalid_argument("period_length must be positive");
  if (c.circle_sizes.empty()) throw std::invalid_argument("circle_sizes must not be empty");
  if (c.circle_sizes.size() != c.band_frequencies.size())
    throw std::invalid_argument("circle_sizes and band_frequencies must have the same length");
  if (c.circle_sizes.front() == 0) throw std::invalid_argument("circle sizes must be positive");
  for (std::size_t i = 1; i < c.circle_sizes.size(); ++i) {
    if (c.circle_sizes[i] <= c.circle_sizes[i - 1])
      throw std::invalid_argument("circle_sizes must be strictly increasing");
    if (c.band_frequencies[i] >= c.band_frequencies[i - 1])
      throw std::invalid_argument("band_frequencies must be strictly decreasing");
  }
  for (std::size_t i = 0; i < c.band_frequencies.size(); ++i) {
    if (!(c.band_frequencies[i] > 0.0)) throw std::invalid_argument("band frequencies must be positive");
    if (i + 1 < c.band_frequencies.size() && !(c.band_frequencies[i] > 1.0))
      throw std::invalid_argument("inner band frequencies must exceed the activity threshold");
  }
  if (c.churn_rate < 0.0 || c.churn_rate > 1.0) throw std::invalid_argument("churn_rate must lie in [0, 1]");
  if (c.shock_period && (*c.shock_period < 0 || *c.shock_period >= c.periods))
    throw std::invalid_argument("shock_period must index an existing period");
  if (!(c.shock_size_multiplier > 0.0)) throw std::invalid_argument("shock_size_multiplier must be positive");
  if (c.baseline_growth < 0.0) throw std::invalid_argument("baseline_growth must be non-negative");
  if (c.size_jitter < 0.0 || c.size_jitter >= 1.0) throw std::invalid_argument("size_jitter must lie in [0, 1)");
  if (c.plain_tweet_rate < 0.0) throw std::invalid_argument("plain_tweet_rate must be non-negative");
}

ScenarioConfig scenario_from_json(const nlohmann::json& j) {
  static const std::vector<std::string> known{
      "seed",         "num_egos",   "periods",       "anchor_date",          "period_length",
      "circle_sizes", "band_frequencies", "churn_rate", "shock_period", "shock_size_multiplier",
      "recovery",     "baseline_growth",  "size_jitter", "plain_tweet_rate"};
  if (!j.is_object()) throw std::invalid_argument("scenario config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("unknown scenario key '" + key + "'");

  ScenarioConfig c;
  c.seed = j.value("seed", c.seed);
  c.num_egos = j.value("num_egos", c.num_egos);
  c.periods = j.value("periods", c.periods);
  if (j.contains("anchor_date")) {
    const auto d = parse_date(j.at("anchor_date").get<std::string>());
    if (!d) throw std::invalid_argument("anchor_date must be YYYY-MM-DD");
    c.anchor = *d;
  }
  if (j.contains("period_length")) {
    const auto len = parse_period_length(j.at("period_length").get<std::string>());
    if (!len) throw std::invalid_argument("period_length must look like 1y, 6m or 30d");
    c.period_length = *len;
  }
  c.circle_sizes = j.value("circle_sizes", c.circle_sizes);
  c.band_frequencies = j.value("band_frequencies", c.band_frequencies);
  c.churn_rate = j.value("churn_rate", c.churn_rate);
  if (j.contains("shock_period") && !j.at("shock_period").is_null())
    c.shock_period = j.at("shock_period").get<int>();
  c.shock_size_multiplier = j.value("shock_size_multiplier", c.shock_size_multiplier);
  c.recovery = j.value("recovery", c.recovery);
  c.baseline_growth = j.value("baseline_growth", c.baseline_growth);
  c.size_jitter = j.value("size_jitter", c.size_jitter);
  c.plain_tweet_rate = j.value("plain_tweet_rate", c.plain_tweet_rate);
  validate(c);
  return c;
}

nlohmann::json to_json(const ScenarioConfig& c) {
  nlohmann::json j;
  j["seed"] = c.seed;
  j["num_egos"] = c.num_egos;
  j["periods"] = c.periods;
  j["anchor_date"] = format_date(c.anchor);
  j["period_length"] = c.period_length.to_string();
  j["circle_sizes"] = c.circle_sizes;
  j["band_frequencies"] = c.band_frequencies;
  j["churn_rate"] = c.churn_rate;
  j["shock_period"] = c.shock_period ? nlohmann::json(*c.shock_period) : nlohmann::json(nullptr);
  j["shock_size_multiplier"] = c.shock_size_multiplier;
  j["recovery"] = c.recovery;
  j["baseline_growth"] = c.baseline_growth;
  j["size_jitter"] = c.size_jitter;
  j["plain_tweet_rate"] = c.plain_tweet_rate;
  return j;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; std::uniform_real_distribution
// is not bit-identical across standard libraries.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Knuth's product method. Large means are split into chunks of 30 so that
// exp(-mean) stays far from underflow.
std::uint64_t poisson(std::mt19937_64& rng, double mean) {
  std::uint64_t total = 0;
  while (mean > 30.0) {
    total += poisson(rng, 30.0);
    mean -= 30.0;
  }
  const double limit = std::exp(-mean);
  double product = unit_uniform(rng);
  while (product > limit) {
    ++total;
    product *= unit_uniform(rng);
  }
  return total;
}

class EgoGenerator {
 public:
  EgoGenerator(const ScenarioConfig& config, std::size_t index, std::vector<PeriodWindow> periods)
      : config_(config),
        periods_(std::move(periods)),
        rng_(splitmix64(config.seed ^ splitmix64(index + 1))),
        ego_(fmt::format("ego{:06d}", index)) {}

  void run(std::vector<InteractionRecord>& out) {
    const double scale = 1.0 + config_.size_jitter * (2.0 * unit_uniform(rng_) - 1.0);
    const std::size_t bands = config_.circle_sizes.size();

    std::vector<double> ring_sizes(bands);
    for (std::size_t b = 0; b < bands; ++b) {
      const double ring = static_cast<double>(config_.circle_sizes[b] - (b ? config_.circle_sizes[b - 1] : 0));
      ring_sizes[b] = std::max(1.0, std::round(scale * ring));
    }
    const auto growth = static_cast<std::size_t>(std::round(scale * config_.baseline_growth));
    std::vector<std::vector<std::size_t>> pool(bands);
    for (std::size_t b = 0; b < bands; ++b)
      for (std::size_t i = 0; i < static_cast<std::size_t>(ring_sizes[b]); ++i) pool[b].push_back(fresh_alter());

    std::vector<std::vector<std::size_t>> shock_pool;
    for (const auto& period : periods_) {
      if (period.index > 0) {
        for (auto& band : pool)
          for (auto& alter : band)
            if (unit_uniform(rng_) < config_.churn_rate) alter = fresh_alter();
        for (std::size_t i = 0; i < growth; ++i) pool.back().push_back(fresh_alter());
      }

      if (shock_active(period.index)) {
        if (shock_pool.empty() || config_.recovery) shock_pool = draw_shock_alters(pool);
        for (std::size_t b = 0; b < bands; ++b) {
          emit(pool[b], config_.band_frequencies[b], period);
          emit(shock_pool[b], config_.band_frequencies[b], period);
        }
      } else {
        for (std::size_t b = 0; b < bands; ++b) emit(pool[b], config_.band_frequencies[b], period);
      }

      const auto tweets = poisson(rng_, config_.plain_tweet_rate * period.length_years);
      for (std::uint64_t i = 0; i < tweets; ++i)
        events_.push_back({uniform_time(period), no_alter, InteractionKind::plain_tweet});
    }
    std::stable_sort(events_.begin(), events_.end(),
                     [](const Event& a, const Event& b) { return a.time < b.time; });
    std::vector<UserId> names(next_alter_);
    for (std::size_t i = 0; i < next_alter_; ++i) names[i] = fmt::format("{}_a{}", ego_, i);
    for (const auto& e : events_) out.push_back({ego_, e.alter == no_alter ? UserId{} : names[e.alter], e.kind, e.time});
  }

 private:
  bool shock_active(int k) const {
    if (!config_.shock_period) return false;
    return config_.recovery ? k == *config_.shock_period : k >= *config_.shock_period;
  }

  // Extra alters for the outer bands so that the whole network is
  // multiplied by shock_size_multiplier while the innermost band is fixed.
  std::vector<std::vector<std::size_t>> draw_shock_alters(const std::vector<std::vector<std::size_t>>& pool) {
    std::vector<std::vector<std::size_t>> extra(pool.size());
    double total = 0.0;
    for (const auto& band : pool) total += static_cast<double>(band.size());
    const double inner = static_cast<double>(pool.front().size());
    if (pool.size() < 2 || total <= inner) return extra;
    const double factor = (config_.shock_size_multiplier * total - inner) / (total - inner);
    for (std::size_t b = 1; b < pool.size(); ++b) {
      const double target = std::round(factor * static_cast<double>(pool[b].size()));
      const double n = target - static_cast<double>(pool[b].size());
      for (int i = 0; i < static_cast<int>(n); ++i) extra[b].push_back(fresh_alter());
    }
    return extra;
  }

  void emit(const std::vector<std::size_t>& alters, double rate, const PeriodWindow& period) {
    static constexpr InteractionKind kinds[] = {InteractionKind::reply, InteractionKind::mention,
                                                InteractionKind::retweet};
    for (const auto alter : alters) {
      const auto n = poisson(rng_, rate * period.length_years);
      for (std::uint64_t i = 0; i < n; ++i) {
        const auto kind = kinds[rng_() % 3];
        events_.push_back({uniform_time(period), alter, kind});
      }
    }
  }

  Timestamp uniform_time(const PeriodWindow& period) {
    const auto span = static_cast<std::uint64_t>((period.end - period.start).count());
    return period.start + chr::seconds{static_cast<long>(rng_() % span)};
  }

  std::size_t fresh_alter() { return next_alter_++; }

  struct Event {
    Timestamp time;
    std::size_t alter;
    InteractionKind kind;
  };
  static constexpr std::size_t no_alter = static_cast<std::size_t>(-1);

  const ScenarioConfig& config_;
  std::vector<PeriodWindow> periods_;
  std::mt19937_64 rng_;
  UserId ego_;
  std::size_t next_alter_ = 0;
  std::vector<Event> events_;
};

}  // namespace

std::vector<InteractionRecord> generate(const ScenarioConfig& config) {
  validate(config);
  const auto periods = make_periods(config.anchor, config.periods, config.period_length);
  std::vector<InteractionRecord> out;
  for (std::size_t i = 0; i < config.num_egos; ++i) EgoGenerator(config, i, periods).run(out);
  return out;
}

}  // namespace egonet
