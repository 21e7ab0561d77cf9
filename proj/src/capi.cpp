#include "egonet/egonet.h"

#include <charconv>
#include <cstring>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "mean_shift.hpp"
#include "pipeline.hpp"
#include "stats.hpp"
#include "synthetic.hpp"

struct egonet_pipeline {
  egonet::PipelineConfig config;
};

struct egonet_report {
  egonet::AnalysisResult result;
  std::string cohort_json;
  std::string cohort_table;
};

struct egonet_scenario {
  nlohmann::json doc = nlohmann::json::object();
};

namespace {

thread_local std::string last_error;

egonet_status fail(egonet_status status, const std::string& message) {
  last_error = message;
  return status;
}

class BadOption : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double to_real(const std::string& key, const std::string& v) {
  const auto parsed = egonet::parse_number(v);
  if (!parsed) throw BadOption(key + ": expected a number, got '" + v + "'");
  return *parsed;
}

long to_integer(const std::string& key, const std::string& v) {
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw BadOption(key + ": expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw BadOption(key + ": expected true or false, got '" + v + "'");
}

template <typename Enum>
Enum choose(const std::string& key, const std::string& v,
            std::initializer_list<std::pair<const char*, Enum>> options) {
  std::string names;
  for (const auto& [name, value] : options) {
    if (v == name) return value;
    names += names.empty() ? name : std::string{" | "} + name;
  }
  throw BadOption(key + ": expected " + names + ", got '" + v + "'");
}

void apply_option(egonet::PipelineConfig& c, const std::string& key, const std::string& v) {
  using namespace egonet;
  if (key == "input") {
    c.inputs.emplace_back(v);
  } else if (key == "input_format") {
    c.parse.format = choose<InputFormat>(key, v, {{"tsv", InputFormat::tsv}, {"csv", InputFormat::csv}});
  } else if (key == "mention_mode") {
    c.parse.mention_mode =
        choose<MentionMode>(key, v, {{"per-alter", MentionMode::per_alter}, {"first-alter", MentionMode::first_alter}});
  } else if (key == "anchor_date") {
    const auto d = parse_date(v);
    if (!d) throw BadOption(key + ": expected YYYY-MM-DD, got '" + v + "'");
    c.anchor = *d;
  } else if (key == "num_periods") {
    c.num_periods = static_cast<int>(to_integer(key, v));
  } else if (key == "period_length") {
    const auto len = parse_period_length(v);
    if (!len) throw BadOption(key + ": expected <n>y, <n>m or <n>d, got '" + v + "'");
    c.period_length = *len;
  } else if (key == "active_threshold") {
    c.active_threshold = to_real(key, v);
  } else if (key == "weight_denominator") {
    c.weight_denominator = choose<WeightDenominator>(key, v, {{"period", WeightDenominator::period_length},
                                           {"relationship", WeightDenominator::relationship_length}});
  } else if (key == "iit_scope") {
    c.activity.iit_scope = choose<IitScope>(key, v, {{"history", IitScope::history}, {"period", IitScope::period}});
  } else if (key == "bandwidth") {
    if (v == "auto")
      c.clustering.fixed_bandwidth.reset();
    else
      c.clustering.fixed_bandwidth = to_real(key, v);
  } else if (key == "bandwidth_divisor") {
    c.clustering.bandwidth_divisor = to_real(key, v);
  } else if (key == "cluster_domain") {
    c.clustering.domain = choose<ClusterDomain>(key, v, {{"log10", ClusterDomain::log10}, {"raw", ClusterDomain::raw}});
  } else if (key == "tolerance") {
    c.clustering.tolerance = to_real(key, v);
  } else if (key == "max_iters") {
    c.clustering.max_iters = static_cast<int>(to_integer(key, v));
  } else if (key == "bot_list") {
    c.bot_list = v;
  } else if (key == "outlier_mode") {
    c.outlier_mode = choose<OutlierMode>(key, v, {{"aggregate", OutlierMode::aggregate},
                                     {"per-period", OutlierMode::per_period},
                                     {"off", OutlierMode::off}});
  } else if (key == "rank_mode") {
    c.rank_mode = choose<RankMode>(key, v, {{"raw", RankMode::raw}, {"normalized", RankMode::normalized}});
  } else if (key == "movement_denominator") {
    c.movement_denominator =
        choose<MovementDenominator>(key, v, {{"stable", MovementDenominator::stable}, {"all", MovementDenominator::all}});
  } else if (key == "alpha") {
    c.alpha = to_real(key, v);
  } else if (key == "ci_level") {
    c.ci_level = to_real(key, v);
  } else if (key == "dump_ties") {
    c.dump_ties = to_bool(key, v);
  } else if (key == "dump_snapshots") {
    c.dump_snapshots = to_bool(key, v);
  } else if (key == "output_dir") {
    c.output_dir = v;
  } else if (key == "seed") {
    const long s = to_integer(key, v);
    if (s < 0) throw BadOption("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else {
    throw BadOption("unknown option '" + key + "'");
  }
}

egonet_status status_for_stage(const std::string& stage) {
  if (stage == "config") return EGONET_ERR_INVALID_ARGUMENT;
  if (stage == "input" || stage == "output") return EGONET_ERR_IO;
  if (stage == "filtering") return EGONET_ERR_EMPTY_COHORT;
  return EGONET_ERR_INTERNAL;
}

template <typename F>
egonet_status guarded(F&& body) {
  try {
    return body();
  } catch (const egonet::PipelineError& e) {
    return fail(status_for_stage(e.stage()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(EGONET_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(EGONET_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(EGONET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EGONET_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* egonet_version(void) { return "1.0.0"; }

const char* egonet_last_error(void) { return last_error.c_str(); }

const char* egonet_status_name(egonet_status status) {
  switch (status) {
    case EGONET_OK: return "ok";
    case EGONET_ERR_INVALID_ARGUMENT: return "invalid argument";
    case EGONET_ERR_IO: return "i/o error";
    case EGONET_ERR_PARSE: return "parse error";
    case EGONET_ERR_EMPTY_COHORT: return "empty cohort";
    case EGONET_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

egonet_status egonet_pipeline_create(egonet_pipeline** out) {
  if (!out) return fail(EGONET_ERR_INVALID_ARGUMENT, "null output handle");
  return guarded([&] {
    *out = new egonet_pipeline{};
    return EGONET_OK;
  });
}

void egonet_pipeline_destroy(egonet_pipeline* pipeline) { delete pipeline; }

egonet_status egonet_pipeline_set(egonet_pipeline* pipeline, const char* key, const char* value) {
  if (!pipeline || !key || !value) return fail(EGONET_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    apply_option(pipeline->config, key, value);
    return EGONET_OK;
  });
}

egonet_status egonet_pipeline_run(const egonet_pipeline* pipeline, egonet_report** out) {
  if (!pipeline) return fail(EGONET_ERR_INVALID_ARGUMENT, "null pipeline");
  if (out) *out = nullptr;
  return guarded([&] {
    auto result = egonet::run_pipeline(pipeline->config);
    if (out) {
      auto* report = new egonet_report{std::move(result), {}, {}};
      report->cohort_table = egonet::render_cohort_table(report->result.cohort);
      nlohmann::ordered_json j;
      const auto& c = report->result.cohort;
      j["total_users"] = c.total_users;
      j["bot_excluded"] = c.bot_excluded;
      j["inactive_excluded"] = c.inactive_excluded;
      j["irregular_excluded"] = c.irregular_excluded;
      j["outlier_excluded"] = c.outlier_excluded;
      j["final_cohort_size"] = c.final_cohort.size();
      report->cohort_json = j.dump(2);
      *out = report;
    }
    return EGONET_OK;
  });
}

void egonet_report_destroy(egonet_report* report) { delete report; }

size_t egonet_report_cohort_size(const egonet_report* report) {
  return report ? report->result.cohort.final_cohort.size() : 0;
}

size_t egonet_report_records(const egonet_report* report) {
  return report ? report->result.accepted_records : 0;
}

size_t egonet_report_rejected_lines(const egonet_report* report) {
  return report ? report->result.diagnostics.size() : 0;
}

const char* egonet_report_cohort_json(const egonet_report* report) {
  return report ? report->cohort_json.c_str() : "";
}

const char* egonet_report_cohort_table(const egonet_report* report) {
  return report ? report->cohort_table.c_str() : "";
}

egonet_status egonet_scenario_create(egonet_scenario** out) {
  if (!out) return fail(EGONET_ERR_INVALID_ARGUMENT, "null output handle");
  return guarded([&] {
    *out = new egonet_scenario{};
    return EGONET_OK;
  });
}

void egonet_scenario_destroy(egonet_scenario* scenario) { delete scenario; }

egonet_status egonet_scenario_load(egonet_scenario* scenario, const char* path) {
  if (!scenario || !path) return fail(EGONET_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) return fail(EGONET_ERR_IO, std::string{"cannot open scenario "} + path);
    auto doc = nlohmann::json::parse(in);
    egonet::scenario_from_json(doc);  // validate before replacing
    scenario->doc = std::move(doc);
    return EGONET_OK;
  });
}

egonet_status egonet_scenario_set(egonet_scenario* scenario, const char* key, const char* json_value) {
  if (!scenario || !key || !json_value) return fail(EGONET_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto candidate = scenario->doc;
    candidate[key] = nlohmann::json::parse(json_value);
    egonet::scenario_from_json(candidate);
    scenario->doc = std::move(candidate);
    return EGONET_OK;
  });
}

egonet_status egonet_scenario_generate(const egonet_scenario* scenario, const char* path,
                                       size_t* records_written) {
  if (!scenario || !path) return fail(EGONET_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto config = egonet::scenario_from_json(scenario->doc);
    const auto records = egonet::generate(config);
    const std::string tmp = std::string{path} + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) return fail(EGONET_ERR_IO, "cannot write " + tmp);
      egonet::write_records(out, records);
      out.close();
      if (!out) return fail(EGONET_ERR_IO, "cannot write " + tmp);
    }
    std::filesystem::rename(tmp, path);
    if (records_written) *records_written = records.size();
    return EGONET_OK;
  });
}

egonet_status egonet_stats_file(const char* input_csv, const char* output_csv, double alpha,
                                double ci_level) {
  if (!input_csv || !output_csv) return fail(EGONET_ERR_INVALID_ARGUMENT, "null argument");
  if (!(alpha > 0.0 && alpha < 1.0)) return fail(EGONET_ERR_INVALID_ARGUMENT, "alpha must lie in (0, 1)");
  if (!(ci_level > 0.0 && ci_level < 1.0))
    return fail(EGONET_ERR_INVALID_ARGUMENT, "ci_level must lie in (0, 1)");
  return guarded([&] {
    std::ifstream in(input_csv);
    if (!in) return fail(EGONET_ERR_IO, std::string{"cannot open "} + input_csv);
    std::vector<egonet::MetricRow> rows;
    try {
      rows = egonet::read_metric_rows(in);
    } catch (const std::invalid_argument& e) {
      return fail(EGONET_ERR_PARSE, e.what());
    }
    const auto out_path = std::filesystem::path{output_csv};
    egonet::ReportBundle bundle;
    bundle.add(out_path.filename().string(), egonet::render_ttest_table(rows, alpha, ci_level));
    bundle.commit(out_path.has_parent_path() ? out_path.parent_path() : std::filesystem::path{"."});
    return EGONET_OK;
  });
}

egonet_status egonet_mean_shift_1d(const double* values, size_t n, double bandwidth, double tolerance,
                                   int max_iters, double* modes, size_t* num_modes, size_t* labels) {
  if (!values || !modes || !num_modes || !labels) return fail(EGONET_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto r = egonet::mean_shift_1d({values, n}, bandwidth, tolerance, max_iters);
    std::copy(r.modes.begin(), r.modes.end(), modes);
    std::copy(r.labels.begin(), r.labels.end(), labels);
    *num_modes = r.modes.size();
    return EGONET_OK;
  });
}

egonet_status egonet_t_test(const double* samples, size_t n, egonet_hypothesis h0, double alpha,
                            double* t_statistic, double* p_value, int* rejected) {
  if (!samples) return fail(EGONET_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto dir = h0 == EGONET_H0_NONPOSITIVE ? egonet::NullHypothesis::nonpositive
                                                 : egonet::NullHypothesis::nonnegative;
    const auto r = egonet::one_sided_t_test({samples, n}, dir, alpha);
    if (t_statistic) *t_statistic = r.t_statistic;
    if (p_value) *p_value = r.p_value;
    if (rejected) *rejected = r.decision == egonet::Decision::rejected;
    return EGONET_OK;
  });
}

egonet_status egonet_confidence_interval(const double* samples, size_t n, double level, double* lower,
                                         double* upper) {
  if (!samples || !lower || !upper) return fail(EGONET_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto ci = egonet::confidence_interval({samples, n}, level);
    *lower = ci.lower;
    *upper = ci.upper;
    return EGONET_OK;
  });
}

}  // extern "C"
