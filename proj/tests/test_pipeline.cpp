#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pipeline.hpp"
#include "synthetic.hpp"

using namespace egonet;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = EGONET_TEST_DATA;

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

PipelineConfig fixture_config(const fs::path& out) {
  PipelineConfig c;
  c.inputs = {data_dir / "filter_fixture.tsv"};
  c.anchor = std::chrono::sys_days{std::chrono::year{2019} / 1 / 1};
  c.num_periods = 2;
  c.bot_list = data_dir / "filter_bots.txt";
  c.output_dir = out;
  return c;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ScenarioConfig small_shock() {
  ScenarioConfig s;
  s.num_egos = 30;
  s.periods = 4;
  s.band_frequencies = {100.0, 40.0, 20.0, 10.0};
  s.shock_period = 2;
  s.shock_size_multiplier = 1.5;
  s.baseline_growth = 10.0;
  return s;
}

}  // namespace

TEST_CASE("12-user fixture yields the expected cohort") {
  TempDir tmp("egonet_test_fixture");
  const auto res = run_pipeline(fixture_config(tmp.path / "out"));
  CHECK(res.cohort.final_cohort == read_lines(data_dir / "filter_expected_cohort.txt"));
  CHECK(res.cohort.total_users == 12);
  CHECK(res.cohort.bot_excluded == 1);
  CHECK(res.cohort.inactive_excluded == 2);
  CHECK(res.cohort.irregular_excluded == 2);
  CHECK(res.cohort.outlier_excluded == 1);
  CHECK(res.diagnostics.empty());

  std::ifstream in(tmp.path / "out" / "cohort_report.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j.at("final_cohort_size") == 6);
  CHECK(j.at("outliers") == nlohmann::json::array({"u11"}));
}

TEST_CASE("analysis with an empty cohort fails in the filtering stage") {
  TempDir tmp("egonet_test_empty");
  std::ofstream(tmp.path / "empty.tsv") << "# nothing\n";
  PipelineConfig c;
  c.inputs = {tmp.path / "empty.tsv"};
  c.output_dir = tmp.path / "out";
  try {
    run_pipeline(c);
    FAIL("expected an error");
  } catch (const PipelineError& e) {
    CHECK(e.stage() == "filtering");
    CHECK(std::string(e.what()).find("empty cohort") != std::string::npos);
  }
  CHECK_FALSE(fs::exists(c.output_dir / "cohort_report.json"));
}

TEST_CASE("configuration and input errors name their stage") {
  TempDir tmp("egonet_test_errors");
  auto stage_of = [](const PipelineConfig& c) {
    try {
      run_pipeline(c);
    } catch (const PipelineError& e) {
      return e.stage();
    }
    return std::string("none");
  };
  PipelineConfig c = fixture_config(tmp.path / "out");
  c.num_periods = 1;
  CHECK(stage_of(c) == "config");
  c = fixture_config(tmp.path / "out");
  c.alpha = 1.5;
  CHECK(stage_of(c) == "config");
  c = fixture_config(tmp.path / "out");
  c.inputs = {tmp.path / "missing.tsv"};
  CHECK(stage_of(c) == "input");
}

TEST_CASE("report bundle is deterministic and self-consistent") {
  const auto scenario = small_shock();
  PipelineConfig c;
  c.num_periods = scenario.periods;
  c.dump_ties = true;
  c.dump_snapshots = true;
  const auto a = render_reports(analyze_records(generate(scenario), {}, c), c);
  const auto b = render_reports(analyze_records(generate(scenario), {}, c), c);
  REQUIRE(a.files().size() == b.files().size());
  for (std::size_t i = 0; i < a.files().size(); ++i) {
    CHECK(a.files()[i].first == b.files()[i].first);
    CHECK(a.files()[i].second == b.files()[i].second);
  }

  SUBCASE("file headers") {
    const std::pair<const char*, const char*> headers[] = {
        {"growth_rates.csv", "ego_id,metric,periods,value"},
        {"sizes_by_period.csv", "period,n,mean,ci_lower,ci_upper"},
        {"ttest_sizes.csv", "metric,periods,n,excluded,mean,ci_lower,ci_upper,direction,t_statistic,p_value,decision"},
        {"ttest_churn.csv", "metric,periods,n,excluded,mean,ci_lower,ci_upper,direction,t_statistic,p_value,decision"},
        {"circle_count_hist.csv", "period,bin,fraction"},
        {"circle_count_delta_hist.csv", "period_from,period_to,bin,fraction"},
        {"circle_sizes_by_count.csv", "period_from,period_to,num_circles,period,circle,n_egos,mean_size"},
        {"movement.csv", "period_from,period_to,panel,category,count,percent"},
        {"churn.csv", "ego_id,period_from,period_to,n_lost,n_stable,n_new,lost,stable,new,empty_union"},
        {"ties.csv", "ego_id,alter_id,period,n_reply,n_mention,n_retweet,weight"},
        {"snapshots.csv", "ego_id,period,alter_id,ring,ring_mean_weight,bandwidth"},
    };
    for (const auto& [name, header] : headers) {
      const auto* content = a.find(name);
      REQUIRE_MESSAGE(content, name);
      CHECK(first_line(*content) == header);
    }
    const auto manifest = nlohmann::json::parse(*a.find("run_manifest.json"));
    CHECK(manifest.at("num_periods") == 4);
    CHECK(manifest.at("periods").size() == 4);
  }

  SUBCASE("t-tests can be recomputed from growth_rates.csv") {
    std::istringstream in(*a.find("growth_rates.csv"));
    std::vector<MetricRow> sizes;
    for (auto& r : read_metric_rows(in))
      if (r.metric.starts_with("size_diff_")) sizes.push_back(std::move(r));
    CHECK(render_ttest_table(sizes, c.alpha, c.ci_level) == *a.find("ttest_sizes.csv"));
  }

  SUBCASE("shock is detected at the right pair") {
    std::istringstream in(*a.find("ttest_sizes.csv"));
    const auto rows = read_csv(in);
    bool up = false, down = false;
    for (const auto& r : rows) {
      if (r[0] != "size_diff_growth") continue;
      if (r[1] == "1-2" && r[7] == "H0_nonpositive") up = r[10] == "REJECTED";
      if (r[1] == "2-3" && r[7] == "H0_nonnegative") down = r[10] == "REJECTED";
    }
    CHECK(up);
    CHECK(down);
  }
}

TEST_CASE("reruns into different directories are byte-identical") {
  TempDir tmp("egonet_test_commit");
  const auto c = fixture_config(tmp.path / "out");
  run_pipeline(c);
  for (const auto& entry : fs::directory_iterator(tmp.path / "out")) {
    CHECK(entry.is_regular_file());
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);
  }
  const auto again = fixture_config(tmp.path / "again");
  run_pipeline(again);
  for (const auto& entry : fs::directory_iterator(tmp.path / "out")) {
    std::ifstream x(entry.path()), y(tmp.path / "again" / entry.path().filename());
    std::stringstream sx, sy;
    sx << x.rdbuf();
    sy << y.rdbuf();
    CHECK_MESSAGE(sx.str() == sy.str(), entry.path().filename().string());
  }
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5})
    CHECK(*parse_number(format_number(v)) == v);
  CHECK(format_number(1.0 / 0.0) == "inf");
  CHECK(format_number(-1.0 / 0.0) == "-inf");
  CHECK(format_number(4.0) == "4");
  CHECK_FALSE(parse_number("abc"));
}
