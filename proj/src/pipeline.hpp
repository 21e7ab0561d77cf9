#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "filtering.hpp"
#include "ingest.hpp"
#include "report_io.hpp"
#include "snapshot.hpp"
#include "stats.hpp"
#include "tie_strength.hpp"

namespace egonet {

// Denominator of the movement percentages.
enum class MovementDenominator {
  stable,  // alters active in both periods
  all,     // every alter in A_i u A_{i+1}
};

std::string_view to_string(MovementDenominator d);

struct PipelineConfig {
  std::vector<std::filesystem::path> inputs;
  ParseOptions parse;
  std::chrono::sys_days anchor = std::chrono::sys_days{std::chrono::year{2015} / 3 / 1};
  int num_periods = 7;
  PeriodLength period_length{};
  double active_threshold = 1.0;
  WeightDenominator weight_denominator = WeightDenominator::period_length;
  ActivityOptions activity{};
  ClusteringConfig clustering{};
  std::optional<std::filesystem::path> bot_list;
  OutlierMode outlier_mode = OutlierMode::aggregate;
  RankMode rank_mode = RankMode::raw;
  MovementDenominator movement_denominator = MovementDenominator::stable;
  double alpha = 0.01;
  double ci_level = 0.99;
  bool dump_ties = false;
  bool dump_snapshots = false;
  std::filesystem::path output_dir = "report";
  std::optional<std::uint64_t> seed;  // recorded in the manifest for synthetic runs
};

/// Throws std::invalid_argument naming the first out-of-range option.
void validate(const PipelineConfig& config);

/// A failure attributed to one pipeline stage ("input", "config",
/// "filtering", "output", ...).
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Per-ego value of one metric for one period label; nullopt when the
/// growth rate has a zero denominator.
struct MetricRow {
  UserId ego;
  std::string metric;
  std::string periods;
  std::optional<double> value;
};

struct AnalysisResult {
  std::vector<PeriodWindow> periods;
  std::size_t accepted_records = 0;
  std::vector<ParseDiagnostic> diagnostics;
  CohortReport cohort;
  // Final cohort only, indexed [ego][period].
  std::map<UserId, std::vector<EgoNetworkSnapshot>> snapshots;
  std::vector<TieStrength> ties;  // filled when dump_ties is set
  std::vector<ChurnSummary> churn;
  std::vector<MovementRecord> movement;
  std::vector<MetricRow> metrics;
};

AnalysisResult analyze_records(std::vector<InteractionRecord> records, const std::set<UserId>& bots,
                               const PipelineConfig& config);

/// Everything `analyze` writes, rendered in memory.
ReportBundle render_reports(const AnalysisResult& result, const PipelineConfig& config);

/// Reads the inputs, analyzes, and commits the report bundle to
/// config.output_dir.
AnalysisResult run_pipeline(const PipelineConfig& config);

/// Both one-sided tests for every (metric, periods) group of `rows`, in order
/// of first appearance, as a t-test table.
std::string render_ttest_table(const std::vector<MetricRow>& rows, double alpha, double level);

/// Reads `ego_id,metric,periods,value` rows as written to growth_rates.csv.
std::vector<MetricRow> read_metric_rows(std::istream& in);

std::string render_cohort_table(const CohortReport& report);

}  // namespace egonet
