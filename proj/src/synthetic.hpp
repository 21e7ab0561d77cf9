#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ingest.hpp"

namespace egonet {

/// Test scaffolding: a seeded population of egos whose alters are organised
/// in Dunbar-style bands, with an optional one-period network size shock.
/// Interaction counts per alter and period are Poisson at the band rate; the
/// model makes no claim about real user behaviour.
struct ScenarioConfig {
  std::uint64_t seed = 1;
  std::size_t num_egos = 100;
  int periods = 7;
  std::chrono::sys_days anchor = std::chrono::sys_days{std::chrono::year{2015} / 3 / 1};
  PeriodLength period_length{};
  std::vector<std::size_t> circle_sizes{5, 15, 50, 150};
  std::vector<double> band_frequencies{300.0, 100.0, 40.0, 10.0};  // interactions/year
  double churn_rate = 0.1;  // fraction of baseline alters replaced each period
  std::optional<int> shock_period;
  double shock_size_multiplier = 1.0;
  bool recovery = true;
  // Alters added to the outermost band at every period boundary (rounded
  // per ego after jitter).
  double baseline_growth = 0.0;
  // Per-ego scale factor on band sizes and growth, uniform in [1-j, 1+j].
  double size_jitter = 0.2;
  double plain_tweet_rate = 0.0;  // tweets/year without an alter
};

/// Throws std::invalid_argument on an inconsistent configuration.
void validate(const ScenarioConfig& config);

ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioConfig& config);

/// Records grouped by ego (ascending id), each ego's records in time order.
std::vector<InteractionRecord> generate(const ScenarioConfig& config);

}  // namespace egonet
