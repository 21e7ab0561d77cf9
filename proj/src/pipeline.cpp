#include "pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace egonet {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

std::string period_label(std::initializer_list<int> indices) {
  std::string out;
  for (int i : indices) {
    if (!out.empty()) out += '-';
    out += std::to_string(i);
  }
  return out;
}

std::vector<UserId> active_alters(const EgoNetworkSnapshot& s) {
  std::vector<UserId> out;
  for (const auto& r : s.rings) out.insert(out.end(), r.members.begin(), r.members.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<double> difference(const std::optional<double>& a, const std::optional<double>& b) {
  if (!a || !b) return std::nullopt;
  return *b - *a;
}

std::optional<double> growth(const std::optional<double>& a, const std::optional<double>& b) {
  if (!a || !b) return std::nullopt;
  return growth_rate(*a, *b);
}

// Per-ego series from which every growth_rates.csv row is derived.
struct EgoSeries {
  std::vector<double> sizes;                         // |A_i|
  std::vector<std::optional<double>> churn[3];       // lost/stable/new of pair (i-1, i), index i
};

}  // namespace

std::string_view to_string(MovementDenominator d) { return d == MovementDenominator::stable ? "stable" : "all"; }

void validate(const PipelineConfig& c) {
  if (c.num_periods < 2) throw std::invalid_argument("num_periods must be at least 2");
  if (c.period_length.count < 1) throw std::invalid_argument("period_length must be positive");
  if (!(c.active_threshold > 0.0)) throw std::invalid_argument("active_threshold must be positive");
  if (c.clustering.fixed_bandwidth && !(*c.clustering.fixed_bandwidth > 0.0))
    throw std::invalid_argument("bandwidth must be positive");
  if (!(c.clustering.bandwidth_divisor > 0.0)) throw std::invalid_argument("bandwidth_divisor must be positive");
  if (!(c.clustering.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (c.clustering.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(c.ci_level > 0.0 && c.ci_level < 1.0)) throw std::invalid_argument("ci_level must lie in (0, 1)");
  if (c.activity.grace.count() < 0) throw std::invalid_argument("inactivity grace must be non-negative");
}

AnalysisResult analyze_records(std::vector<InteractionRecord> records, const std::set<UserId>& bots,
                               const PipelineConfig& config) {
  validate(config);
  AnalysisResult res;
  res.periods = make_periods(config.anchor, config.num_periods, config.period_length);
  res.accepted_records = records.size();
  const auto timelines = build_timelines(std::move(records));
  res.cohort = select_cohort(timelines, res.periods, bots, config.activity);

  std::map<UserId, std::vector<EgoNetworkSnapshot>> snapshots;
  std::map<UserId, std::vector<std::size_t>> sizes;
  std::map<UserId, std::vector<TieStrength>> ties;
  for (const auto& ego : res.cohort.final_cohort) {
    const auto& timeline = timelines.at(ego);
    auto& ego_snaps = snapshots[ego];
    auto& ego_sizes = sizes[ego];
    for (const auto& period : res.periods) {
      auto weights = compute_weights(timeline, period, config.weight_denominator);
      const auto active = active_ties(weights, config.active_threshold);
      auto snap = build_snapshot(active, config.clustering);
      snap.ego = ego;
      snap.period_index = period.index;
      ego_sizes.push_back(snap.active_size());
      ego_snaps.push_back(std::move(snap));
      if (config.dump_ties) {
        auto& dst = ties[ego];
        std::move(weights.begin(), weights.end(), std::back_inserter(dst));
      }
    }
  }

  exclude_outliers(res.cohort, sizes, config.outlier_mode);
  if (res.cohort.final_cohort.empty()) throw PipelineError("filtering", "empty cohort");

  const int n = config.num_periods;
  std::map<UserId, EgoSeries> series;
  for (const auto& ego : res.cohort.final_cohort) {
    auto& snaps = res.snapshots[ego] = std::move(snapshots.at(ego));
    if (config.dump_ties) {
      auto& src = ties.at(ego);
      std::move(src.begin(), src.end(), std::back_inserter(res.ties));
    }
    auto& s = series[ego];
    for (const auto& snap : snaps) s.sizes.push_back(static_cast<double>(snap.active_size()));
    for (auto& c : s.churn) c.assign(static_cast<std::size_t>(n), std::nullopt);
    for (int i = 1; i < n; ++i) {
      const auto& before = snaps[static_cast<std::size_t>(i - 1)];
      const auto& after = snaps[static_cast<std::size_t>(i)];
      const auto a = active_alters(before);
      const auto b = active_alters(after);
      auto summary = churn(a, b);
      summary.ego = ego;
      summary.period_from = i - 1;
      summary.period_to = i;
      if (!summary.empty_union) {
        s.churn[0][static_cast<std::size_t>(i)] = summary.lost;
        s.churn[1][static_cast<std::size_t>(i)] = summary.stable;
        s.churn[2][static_cast<std::size_t>(i)] = summary.gained;
      }
      res.churn.push_back(std::move(summary));
      auto moves = ring_movement(before, after, config.rank_mode);
      std::move(moves.begin(), moves.end(), std::back_inserter(res.movement));
    }
  }

  // Metric-major, then period label, then ego.
  auto emit = [&](const std::string& metric, const std::string& label, auto&& value_of) {
    for (const auto& [ego, s] : series) res.metrics.push_back({ego, metric, label, value_of(s)});
  };
  for (int i = 0; i + 1 < n; ++i)
    emit("size_growth", period_label({i, i + 1}), [&](const EgoSeries& s) {
      return growth_rate(s.sizes[static_cast<std::size_t>(i)], s.sizes[static_cast<std::size_t>(i + 1)]);
    });
  // D_i = |A_i| - |A_{i-1}|; G_[i,i+1](D) = (D_{i+1} - D_i) / D_i.
  auto size_diff = [](const EgoSeries& s, int i) {
    return s.sizes[static_cast<std::size_t>(i)] - s.sizes[static_cast<std::size_t>(i - 1)];
  };
  for (int i = 1; i + 1 < n; ++i)
    emit("size_diff_growth", period_label({i, i + 1}),
         [&](const EgoSeries& s) { return growth_rate(size_diff(s, i), size_diff(s, i + 1)); });
  for (int i = 1; i + 1 < n; ++i)
    emit("size_diff_change", period_label({i, i + 1}), [&](const EgoSeries& s) {
      return std::optional<double>{size_diff(s, i + 1) - size_diff(s, i)};
    });

  static const char* churn_names[] = {"lost", "stable", "new"};
  for (int c = 0; c < 3; ++c) {
    // Difference of the churn fraction of pair (i-1, i) and pair (i-2, i-1).
    auto churn_diff = [c](const EgoSeries& s, int i) {
      return difference(s.churn[c][static_cast<std::size_t>(i - 1)], s.churn[c][static_cast<std::size_t>(i)]);
    };
    for (int i = 2; i < n; ++i)
      emit(fmt::format("{}_diff", churn_names[c]), period_label({i - 2, i - 1, i}),
           [&](const EgoSeries& s) { return churn_diff(s, i); });
    for (int i = 2; i + 1 < n; ++i)
      emit(fmt::format("{}_diff_growth", churn_names[c]), period_label({i - 2, i - 1, i, i + 1}),
           [&](const EgoSeries& s) { return growth(churn_diff(s, i), churn_diff(s, i + 1)); });
  }
  return res;
}

std::vector<MetricRow> read_metric_rows(std::istream& in) {
  const auto rows = read_csv(in);
  if (rows.empty()) throw std::invalid_argument("metric table is empty");
  const std::vector<std::string> header{"ego_id", "metric", "periods", "value"};
  if (rows.front() != header) throw std::invalid_argument("metric table must have columns ego_id,metric,periods,value");
  std::vector<MetricRow> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 4) throw std::invalid_argument(fmt::format("metric table row {} has {} fields", i + 1, r.size()));
    MetricRow row{r[0], r[1], r[2], std::nullopt};
    if (!r[3].empty()) {
      row.value = parse_number(r[3]);
      if (!row.value) throw std::invalid_argument(fmt::format("metric table row {}: bad value '{}'", i + 1, r[3]));
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string render_ttest_table(const std::vector<MetricRow>& rows, double alpha, double level) {
  std::vector<std::pair<std::string, std::string>> keys;
  std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::size_t>> groups;
  for (const auto& r : rows) {
    auto key = std::make_pair(r.metric, r.periods);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) keys.push_back(key);
    if (r.value)
      it->second.first.push_back(*r.value);
    else
      ++it->second.second;
  }

  std::string out = "metric,periods,n,excluded,mean,ci_lower,ci_upper,direction,t_statistic,p_value,decision\n";
  for (const auto& key : keys) {
    const auto& [values, excluded] = groups.at(key);
    for (auto dir : {NullHypothesis::nonpositive, NullHypothesis::nonnegative}) {
      if (values.size() < 2) {
        out += fmt::format("{},{},{},{},,,,{},,,INSUFFICIENT\n", key.first, key.second, values.size(),
                           excluded, to_string(dir));
        continue;
      }
      const auto ci = confidence_interval(values, level);
      const auto t = one_sided_t_test(values, dir, alpha);
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", key.first, key.second, t.n, excluded,
                         format_number(t.mean), format_number(ci.lower), format_number(ci.upper),
                         to_string(dir), format_number(t.t_statistic), format_number(t.p_value),
                         to_string(t.decision));
    }
  }
  return out;
}

std::string render_cohort_table(const CohortReport& r) {
  std::string out = fmt::format("{:<22}{:>10}{:>12}\n", "stage", "excluded", "remaining");
  std::size_t remaining = r.total_users;
  out += fmt::format("{:<22}{:>10}{:>12}\n", "input users", "-", remaining);
  auto row = [&](const char* name, std::size_t excluded) {
    remaining -= excluded;
    out += fmt::format("{:<22}{:>10}{:>12}\n", name, excluded, remaining);
  };
  row("bots", r.bot_excluded);
  row("inactive", r.inactive_excluded);
  row("irregular", r.irregular_excluded);
  row("outliers", r.outlier_excluded);
  out += fmt::format("{:<22}{:>10}{:>12}\n", "final cohort", "-", r.final_cohort.size());
  return out;
}

namespace {

std::string render_sizes(const AnalysisResult& res, const PipelineConfig& config) {
  std::string out = "period,n,mean,ci_lower,ci_upper\n";
  for (const auto& period : res.periods) {
    std::vector<double> values;
    for (const auto& [ego, snaps] : res.snapshots)
      values.push_back(static_cast<double>(snaps[static_cast<std::size_t>(period.index)].active_size()));
    if (values.size() < 2) {
      double mean = values.empty() ? 0.0 : values.front();
      out += fmt::format("{},{},{},,\n", period.index, values.size(), format_number(mean));
      continue;
    }
    const auto ci = confidence_interval(values, config.ci_level);
    out += fmt::format("{},{},{},{},{}\n", period.index, values.size(), format_number(ci.mean),
                       format_number(ci.lower), format_number(ci.upper));
  }
  return out;
}

std::vector<EgoNetworkSnapshot> flat_snapshots(const AnalysisResult& res) {
  std::vector<EgoNetworkSnapshot> all;
  for (const auto& [ego, snaps] : res.snapshots) all.insert(all.end(), snaps.begin(), snaps.end());
  return all;
}

std::string render_count_hist(const std::vector<EgoNetworkSnapshot>& all, const AnalysisResult& res) {
  std::string out = "period,bin,fraction\n";
  for (const auto& period : res.periods)
    for (const auto& [bin, mass] : circle_count_distribution(all, period.index))
      out += fmt::format("{},{},{}\n", period.index, bin, format_number(mass));
  return out;
}

std::string render_delta_hist(const std::vector<EgoNetworkSnapshot>& all, const AnalysisResult& res) {
  std::string out = "period_from,period_to,bin,fraction\n";
  for (std::size_t i = 1; i < res.periods.size(); ++i) {
    const int from = static_cast<int>(i) - 1;
    const int to = static_cast<int>(i);
    for (const auto& [bin, mass] : circle_count_delta_distribution(all, from, to))
      out += fmt::format("{},{},{},{}\n", from, to, bin, format_number(mass));
  }
  return out;
}

std::string render_circle_sizes(const AnalysisResult& res) {
  std::string out = "period_from,period_to,num_circles,period,circle,n_egos,mean_size\n";
  for (std::size_t i = 1; i < res.periods.size(); ++i) {
    // num_circles -> per-circle size sums for the two periods
    std::map<std::size_t, std::pair<std::size_t, std::vector<std::pair<double, double>>>> by_count;
    for (const auto& [ego, snaps] : res.snapshots) {
      const auto& a = snaps[i - 1];
      const auto& b = snaps[i];
      if (a.num_circles() == 0 || a.num_circles() != b.num_circles()) continue;
      auto& [egos, sums] = by_count[a.num_circles()];
      sums.resize(a.num_circles());
      const auto sa = a.circle_sizes();
      const auto sb = b.circle_sizes();
      for (std::size_t k = 0; k < sa.size(); ++k) {
        sums[k].first += static_cast<double>(sa[k]);
        sums[k].second += static_cast<double>(sb[k]);
      }
      ++egos;
    }
    for (const auto& [count, entry] : by_count) {
      const auto& [egos, sums] = entry;
      for (int which = 0; which < 2; ++which) {
        for (std::size_t k = 0; k < sums.size(); ++k) {
          const double total = which == 0 ? sums[k].first : sums[k].second;
          out += fmt::format("{},{},{},{},{},{},{}\n", i - 1, i, count, which == 0 ? i - 1 : i, k + 1, egos,
                             format_number(total / static_cast<double>(egos)));
        }
      }
    }
  }
  return out;
}

std::string render_movement(const AnalysisResult& res, const PipelineConfig& config) {
  std::string out = "period_from,period_to,panel,category,count,percent\n";
  for (std::size_t i = 1; i < res.periods.size(); ++i) {
    const int from = static_cast<int>(i) - 1;
    std::map<MovementDirection, std::size_t> dir;
    std::map<MovementExtreme, std::size_t> ext;
    std::size_t stable = 0;
    for (const auto& m : res.movement) {
      if (m.period_from != from) continue;
      ++dir[m.direction];
      ++ext[m.extreme];
      ++stable;
    }
    std::size_t denom = stable;
    if (config.movement_denominator == MovementDenominator::all) {
      denom = 0;
      for (const auto& c : res.churn)
        if (c.period_from == from) denom += c.union_size();
    }
    auto pct = [&](std::size_t count) {
      return denom == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(denom);
    };
    for (auto d : {MovementDirection::inner, MovementDirection::outer, MovementDirection::same})
      out += fmt::format("{},{},direction,{},{},{}\n", from, i, to_string(d), dir[d], format_number(pct(dir[d])));
    for (auto e : {MovementExtreme::to_innermost, MovementExtreme::to_outermost, MovementExtreme::same,
                   MovementExtreme::neither})
      out += fmt::format("{},{},extreme,{},{},{}\n", from, i, to_string(e), ext[e], format_number(pct(ext[e])));
  }
  return out;
}

std::string render_churn(const AnalysisResult& res) {
  std::string out = "ego_id,period_from,period_to,n_lost,n_stable,n_new,lost,stable,new,empty_union\n";
  for (const auto& c : res.churn)
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", c.ego, c.period_from, c.period_to, c.n_lost,
                       c.n_stable, c.n_new, format_number(c.lost), format_number(c.stable),
                       format_number(c.gained), c.empty_union ? 1 : 0);
  return out;
}

std::string render_metrics(const std::vector<MetricRow>& rows) {
  std::string out = "ego_id,metric,periods,value\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{}\n", r.ego, r.metric, r.periods, r.value ? format_number(*r.value) : "");
  return out;
}

std::vector<MetricRow> select_metrics(const std::vector<MetricRow>& rows, bool churn_metrics) {
  std::vector<MetricRow> out;
  for (const auto& r : rows) {
    const bool is_size = r.metric.rfind("size_diff_", 0) == 0;
    const bool is_churn = r.metric.find("_diff") != std::string::npos && !r.metric.starts_with("size_");
    if (churn_metrics ? is_churn : is_size) out.push_back(r);
  }
  return out;
}

std::string render_ties(const AnalysisResult& res) {
  std::string out = "ego_id,alter_id,period,n_reply,n_mention,n_retweet,weight\n";
  for (const auto& t : res.ties)
    out += fmt::format("{},{},{},{},{},{},{}\n", t.ego, t.alter, t.period_index, t.n_reply, t.n_mention,
                       t.n_retweet, format_number(t.weight));
  return out;
}

std::string render_snapshots(const AnalysisResult& res) {
  std::string out = "ego_id,period,alter_id,ring,ring_mean_weight,bandwidth\n";
  for (const auto& [ego, snaps] : res.snapshots)
    for (const auto& s : snaps)
      for (const auto& r : s.rings)
        for (const auto& a : r.members)
          out += fmt::format("{},{},{},{},{},{}\n", ego, s.period_index, a, r.rank, format_number(r.mean_weight),
                             format_number(s.bandwidth));
  return out;
}

ordered_json cohort_json(const CohortReport& r, OutlierMode mode) {
  ordered_json j;
  j["total_users"] = r.total_users;
  j["bot_excluded"] = r.bot_excluded;
  j["inactive_excluded"] = r.inactive_excluded;
  j["irregular_excluded"] = r.irregular_excluded;
  j["outlier_excluded"] = r.outlier_excluded;
  j["outlier_mode"] = std::string{to_string(mode)};
  j["final_cohort_size"] = r.final_cohort.size();
  j["final_cohort"] = r.final_cohort;
  j["outliers"] = r.outliers;
  return j;
}

ordered_json manifest_json(const AnalysisResult& res, const PipelineConfig& c,
                           const std::vector<std::string>& outputs) {
  ordered_json j;
  j["tool"] = "egonet";
  j["version"] = kVersion;
  std::vector<std::string> inputs;
  for (const auto& p : c.inputs) inputs.push_back(p.string());
  j["inputs"] = inputs;
  j["input_format"] = c.parse.format == InputFormat::tsv ? "tsv" : "csv";
  j["mention_mode"] = c.parse.mention_mode == MentionMode::per_alter ? "per-alter" : "first-alter";
  j["anchor_date"] = format_date(c.anchor);
  j["num_periods"] = c.num_periods;
  j["period_length"] = c.period_length.to_string();
  ordered_json periods = ordered_json::array();
  for (const auto& p : res.periods)
    periods.push_back({{"index", p.index},
                       {"start", format_timestamp(p.start)},
                       {"end", format_timestamp(p.end)},
                       {"length_years", p.length_years}});
  j["periods"] = periods;
  j["period_boundaries"] = "start-inclusive, end-exclusive";
  j["active_threshold"] = c.active_threshold;
  j["weight_denominator"] = std::string{to_string(c.weight_denominator)};
  j["iit_scope"] = c.activity.iit_scope == IitScope::history ? "history" : "period";
  j["inactivity_grace_seconds"] = c.activity.grace.count();
  j["regular_month_fraction"] = 0.5;
  j["clustering"] = {
      {"kernel", "flat"},
      {"domain", std::string{to_string(c.clustering.domain)}},
      {"bandwidth", c.clustering.fixed_bandwidth ? ordered_json(*c.clustering.fixed_bandwidth)
                                                 : ordered_json("median-pairwise/divisor")},
      {"bandwidth_divisor", c.clustering.bandwidth_divisor},
      {"tolerance", c.clustering.tolerance},
      {"max_iters", c.clustering.max_iters},
      {"merge_radius", "bandwidth/2"}};
  j["bot_list"] = c.bot_list ? ordered_json(c.bot_list->string()) : ordered_json(nullptr);
  j["outlier_mode"] = std::string{to_string(c.outlier_mode)};
  j["outlier_statistic"] = "active network size";
  j["rank_mode"] = std::string{to_string(c.rank_mode)};
  j["movement_denominator"] = std::string{to_string(c.movement_denominator)};
  j["alpha"] = c.alpha;
  j["ci_level"] = c.ci_level;
  j["t_test"] = "one-sample Student, mean vs 0";
  j["seed"] = c.seed ? ordered_json(*c.seed) : ordered_json(nullptr);
  j["records_accepted"] = res.accepted_records;
  j["lines_rejected"] = res.diagnostics.size();
  ordered_json diag = ordered_json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(res.diagnostics.size(), 50); ++i)
    diag.push_back({{"line", res.diagnostics[i].line}, {"reason", res.diagnostics[i].reason}});
  j["diagnostics_sample"] = diag;

  std::map<std::string, std::size_t> excluded;
  for (const auto& r : res.metrics)
    if (!r.value) ++excluded[r.metric + " " + r.periods];
  j["undefined_growth_rates"] = excluded;
  j["outputs"] = outputs;
  return j;
}

}  // namespace

ReportBundle render_reports(const AnalysisResult& res, const PipelineConfig& config) {
  ReportBundle bundle;
  const auto all = flat_snapshots(res);
  bundle.add("cohort_report.json", cohort_json(res.cohort, config.outlier_mode).dump(2) + "\n");
  bundle.add("sizes_by_period.csv", render_sizes(res, config));
  bundle.add("growth_rates.csv", render_metrics(res.metrics));
  bundle.add("ttest_sizes.csv", render_ttest_table(select_metrics(res.metrics, false), config.alpha, config.ci_level));
  bundle.add("circle_count_hist.csv", render_count_hist(all, res));
  bundle.add("circle_count_delta_hist.csv", render_delta_hist(all, res));
  bundle.add("circle_sizes_by_count.csv", render_circle_sizes(res));
  bundle.add("movement.csv", render_movement(res, config));
  bundle.add("churn.csv", render_churn(res));
  bundle.add("ttest_churn.csv", render_ttest_table(select_metrics(res.metrics, true), config.alpha, config.ci_level));
  if (config.dump_ties) bundle.add("ties.csv", render_ties(res));
  if (config.dump_snapshots) bundle.add("snapshots.csv", render_snapshots(res));

  std::vector<std::string> outputs;
  for (const auto& [name, content] : bundle.files()) outputs.push_back(name);
  outputs.push_back("run_manifest.json");
  bundle.add("run_manifest.json", manifest_json(res, config, outputs).dump(2) + "\n");
  return bundle;
}

AnalysisResult run_pipeline(const PipelineConfig& config) {
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    throw PipelineError("config", e.what());
  }
  if (config.inputs.empty()) throw PipelineError("config", "no input files");
  for (const auto& p : config.inputs)
    if (!std::filesystem::is_regular_file(p)) throw PipelineError("input", "cannot read " + p.string());
  if (config.bot_list && !std::filesystem::is_regular_file(*config.bot_list))
    throw PipelineError("input", "cannot read bot list " + config.bot_list->string());

  std::vector<InteractionRecord> records;
  std::vector<ParseDiagnostic> diagnostics;
  for (const auto& path : config.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PipelineError("input", "cannot open " + path.string());
    auto parsed = parse_interactions(in, config.parse);
    if (in.bad()) throw PipelineError("input", "read error on " + path.string());
    std::move(parsed.records.begin(), parsed.records.end(), std::back_inserter(records));
    std::move(parsed.diagnostics.begin(), parsed.diagnostics.end(), std::back_inserter(diagnostics));
  }

  std::set<UserId> bots;
  if (config.bot_list) {
    std::ifstream in(*config.bot_list);
    bots = read_user_list(in);
  }

  AnalysisResult res;
  try {
    res = analyze_records(std::move(records), bots, config);
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError("analysis", e.what());
  }
  res.diagnostics = std::move(diagnostics);

  try {
    render_reports(res, config).commit(config.output_dir);
  } catch (const std::exception& e) {
    throw PipelineError("output", e.what());
  }
  return res;
}

}  // namespace egonet
