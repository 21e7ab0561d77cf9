// egonet command line: analyze | generate | stats.
//
// Output verbosity comes from EGONET_VERBOSE (0 = errors only, 1 = summary,
// 2 = summary plus the effective options).

#include <cstdio>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "egonet/egonet.h"

namespace {

int verbosity() {
  const char* v = std::getenv("EGONET_VERBOSE");
  return v ? std::atoi(v) : 1;
}

int report_failure(const char* what, egonet_status status) {
  std::fprintf(stderr, "egonet %s: %s: %s\n", what, egonet_status_name(status), egonet_last_error());
  return static_cast<int>(status) + 1;
}

struct AnalyzeArgs {
  std::vector<std::string> inputs;
  bool csv = false;
  std::vector<std::pair<std::string, std::string>> options;
  bool dump_ties = false;
  bool dump_snapshots = false;
};

int run_analyze(const AnalyzeArgs& args) {
  egonet_pipeline* pipeline = nullptr;
  if (auto s = egonet_pipeline_create(&pipeline); s != EGONET_OK) return report_failure("analyze", s);

  std::vector<std::pair<std::string, std::string>> settings;
  for (const auto& in : args.inputs) settings.emplace_back("input", in);
  if (args.csv) settings.emplace_back("input_format", "csv");
  if (args.dump_ties) settings.emplace_back("dump_ties", "true");
  if (args.dump_snapshots) settings.emplace_back("dump_snapshots", "true");
  settings.insert(settings.end(), args.options.begin(), args.options.end());

  for (const auto& [key, value] : settings) {
    if (verbosity() >= 2) std::fprintf(stderr, "  %s = %s\n", key.c_str(), value.c_str());
    if (auto s = egonet_pipeline_set(pipeline, key.c_str(), value.c_str()); s != EGONET_OK) {
      egonet_pipeline_destroy(pipeline);
      return report_failure("analyze", s);
    }
  }

  egonet_report* report = nullptr;
  const auto status = egonet_pipeline_run(pipeline, &report);
  egonet_pipeline_destroy(pipeline);
  if (status != EGONET_OK) return report_failure("analyze", status);
  if (verbosity() >= 1) {
    std::printf("records accepted: %zu, lines rejected: %zu\n", egonet_report_records(report),
                egonet_report_rejected_lines(report));
    std::printf("%s", egonet_report_cohort_table(report));
  }
  egonet_report_destroy(report);
  return 0;
}

int run_generate(const std::string& config_path, const std::string& out_path,
                 const std::vector<std::pair<std::string, std::string>>& overrides) {
  egonet_scenario* scenario = nullptr;
  if (auto s = egonet_scenario_create(&scenario); s != EGONET_OK) return report_failure("generate", s);
  auto finish = [&](egonet_status s) {
    egonet_scenario_destroy(scenario);
    return s == EGONET_OK ? 0 : report_failure("generate", s);
  };
  if (!config_path.empty())
    if (auto s = egonet_scenario_load(scenario, config_path.c_str()); s != EGONET_OK) return finish(s);
  for (const auto& [key, value] : overrides)
    if (auto s = egonet_scenario_set(scenario, key.c_str(), value.c_str()); s != EGONET_OK) return finish(s);
  size_t written = 0;
  const auto s = egonet_scenario_generate(scenario, out_path.c_str(), &written);
  if (s == EGONET_OK && verbosity() >= 1) std::printf("wrote %zu records to %s\n", written, out_path.c_str());
  return finish(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ego network analysis of longitudinal interaction logs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", egonet_version());

  // analyze
  AnalyzeArgs analyze;
  auto* a = app.add_subcommand("analyze", "Run the full pipeline and write the report bundle");
  a->add_option("-i,--input", analyze.inputs, "Interaction log(s)")->required()->check(CLI::ExistingFile);
  a->add_flag("--csv", analyze.csv, "Inputs are CSV instead of tab-separated");
  a->add_flag("--dump-ties", analyze.dump_ties, "Also write ties.csv (every ego/alter/period weight)");
  a->add_flag("--dump-snapshots", analyze.dump_snapshots, "Also write snapshots.csv (ring of every active alter)");

  struct Passthrough {
    const char* flag;
    const char* key;
    const char* help;
  };
  static const Passthrough passthrough[] = {
      {"-o,--out", "output_dir", "Output directory (default: report)"},
      {"--mention-mode", "mention_mode", "per-alter | first-alter"},
      {"--anchor", "anchor_date", "Start of period 0, YYYY-MM-DD (default 2015-03-01)"},
      {"--periods", "num_periods", "Number of periods (default 7)"},
      {"--period-length", "period_length", "Period length: <n>y, <n>m or <n>d (default 1y)"},
      {"--threshold", "active_threshold", "Active tie threshold, interactions/year (default 1)"},
      {"--weight-denominator", "weight_denominator", "period | relationship"},
      {"--iit-scope", "iit_scope", "history | period"},
      {"--bandwidth", "bandwidth", "auto | fixed Mean Shift bandwidth"},
      {"--bandwidth-divisor", "bandwidth_divisor", "Median pairwise distance divisor (default 2)"},
      {"--domain", "cluster_domain", "log10 | raw"},
      {"--tolerance", "tolerance", "Mean Shift convergence tolerance (default 1e-8)"},
      {"--max-iters", "max_iters", "Mean Shift iteration cap (default 500)"},
      {"--bots", "bot_list", "File with one bot user id per line"},
      {"--outliers", "outlier_mode", "aggregate | per-period | off"},
      {"--rank-mode", "rank_mode", "raw | normalized"},
      {"--movement-denominator", "movement_denominator", "stable | all"},
      {"--alpha", "alpha", "Significance level (default 0.01)"},
      {"--ci-level", "ci_level", "Confidence level (default 0.99)"},
      {"--seed", "seed", "Seed recorded in the manifest for synthetic inputs"},
  };
  std::vector<std::string> values(std::size(passthrough));
  for (std::size_t i = 0; i < std::size(passthrough); ++i)
    a->add_option(passthrough[i].flag, values[i], passthrough[i].help);

  // generate
  std::string scenario_path, generate_out, seed_override;
  auto* g = app.add_subcommand("generate", "Write a synthetic interaction log");
  g->add_option("-c,--config", scenario_path, "Scenario JSON file")->check(CLI::ExistingFile);
  g->add_option("-o,--out", generate_out, "Output log path")->required();
  g->add_option("--seed", seed_override, "Override the scenario seed");

  // stats
  std::string stats_in, stats_out;
  double alpha = 0.01, level = 0.99;
  auto* s = app.add_subcommand("stats", "Re-run the t-tests on an existing growth_rates.csv");
  s->add_option("-i,--input", stats_in, "ego_id,metric,periods,value table")->required()->check(CLI::ExistingFile);
  s->add_option("-o,--out", stats_out, "Output t-test table")->required();
  s->add_option("--alpha", alpha, "Significance level");
  s->add_option("--ci-level", level, "Confidence level");

  CLI11_PARSE(app, argc, argv);

  if (*a) {
    for (std::size_t i = 0; i < std::size(passthrough); ++i)
      if (!values[i].empty()) analyze.options.emplace_back(passthrough[i].key, values[i]);
    return run_analyze(analyze);
  }
  if (*g) {
    std::vector<std::pair<std::string, std::string>> overrides;
    if (!seed_override.empty()) overrides.emplace_back("seed", seed_override);
    return run_generate(scenario_path, generate_out, overrides);
  }
  if (auto st = egonet_stats_file(stats_in.c_str(), stats_out.c_str(), alpha, level); st != EGONET_OK)
    return report_failure("stats", st);
  return 0;
}
