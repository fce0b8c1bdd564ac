#include <gtest/gtest.h>

#include <cmath>

#include "helpers.hpp"
#include "json.hpp"
#include "zsk/error.hpp"
#include "zsk/report.hpp"

using namespace zsk;

namespace {

BenchmarkReport sample_report() {
  BenchmarkReport r;
  r.datasets = {"R-10-5", "R-50-5", "S-10-5"};
  r.methods = {"BL_L", "BL_Q", "DSIL_KQ"};
  for (const auto& d : r.datasets) r.groups.push_back(infer_group(d));
  r.cells.assign(3, std::vector<BenchmarkCell>(3));
  const double scores[3][3] = {{112.03, 113.85, 58.55}, {131.46, 0.04, 3.32e-12}, {0.5, 0.25, 0.25}};
  for (int d = 0; d < 3; ++d)
    for (int m = 0; m < 3; ++m) r.cells[d][m].rel_mse = scores[d][m];
  compute_statistics(r);
  return r;
}

}  // namespace

TEST(Report, InferGroup) {
  EXPECT_EQ(infer_group("R-10-5"), "R");
  EXPECT_EQ(infer_group("S-100-25"), "S");
  EXPECT_EQ(infer_group("housing"), "all");
  EXPECT_EQ(infer_group("-x"), "all");
}

TEST(Report, ScoresCsvRoundTrip) {
  test::TempDir dir("scores");
  auto r = sample_report();
  r.cells[2][0].rel_mse.reset();
  r.cells[2][0].error = "boom";
  compute_statistics(r);
  write_scores_csv(r, dir.path / "scores.csv");
  const std::string text = test::read_file(dir.path / "scores.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "dataset,method,rel_mse,rank");
  EXPECT_NE(text.find("S-10-5,BL_L,nan,nan"), std::string::npos);
  EXPECT_NE(text.find("R-50-5,DSIL_KQ,3.32e-12,1"), std::string::npos);

  const auto back = read_scores_csv(dir.path / "scores.csv");
  EXPECT_EQ(back.datasets, r.datasets);
  EXPECT_EQ(back.methods, r.methods);
  EXPECT_EQ(back.groups, r.groups);
  for (std::size_t d = 0; d < 3; ++d)
    for (std::size_t m = 0; m < 3; ++m) EXPECT_EQ(back.cells[d][m].rel_mse, r.cells[d][m].rel_mse);
  EXPECT_EQ(back.overall.average_ranks, r.overall.average_ranks);
}

TEST(Report, ScoresCsvErrors) {
  test::TempDir dir("badscores");
  {
    std::ofstream(dir.path / "a.csv") << "data,method,score\nx,y,1\n";
    std::ofstream(dir.path / "b.csv") << "dataset,method,rel_mse,rank\nx,y,abc,1\n";
    std::ofstream(dir.path / "c.csv") << "dataset,method,rel_mse,rank\n";
  }
  EXPECT_THROW((void)read_scores_csv(dir.path / "a.csv"), DataError);
  EXPECT_THROW((void)read_scores_csv(dir.path / "b.csv"), DataError);
  EXPECT_THROW((void)read_scores_csv(dir.path / "c.csv"), DataError);
  EXPECT_THROW((void)read_scores_csv(dir.path / "missing.csv"), DataError);
}

TEST(Report, StatsJsonKeys) {
  const auto j = nlohmann::json::parse(stats_json(sample_report()));
  for (const char* key : {"methods", "datasets", "rel_mse_definition", "average_ranks", "datasets_ranked", "groups",
                          "nemenyi_critical_difference", "pairwise", "failed_cells"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["datasets_ranked"], 3);
  EXPECT_NEAR(j["nemenyi_critical_difference"]["0.05"].get<double>(), nemenyi_cd(3, 3, Alpha::P05), 1e-12);
  EXPECT_EQ(j["pairwise"].size(), 3u);
  EXPECT_TRUE(j["groups"].contains("R"));
  EXPECT_TRUE(j["groups"].contains("S"));
  EXPECT_EQ(j["groups"]["R"]["datasets_ranked"], 2);
  EXPECT_NEAR(j["average_ranks"]["DSIL_KQ"].get<double>(), (1.0 + 1.0 + 1.5) / 3.0, 1e-12);
}

TEST(Report, MarkdownTables) {
  const std::string md = report_markdown(sample_report());
  EXPECT_NE(md.find("## R datasets"), std::string::npos);
  EXPECT_NE(md.find("## S datasets"), std::string::npos);
  EXPECT_NE(md.find("## Overall"), std::string::npos);
  EXPECT_NE(md.find("| R-10-5 | 112.03(2) | 113.85(3) | **58.55**(1) |"), std::string::npos);
  EXPECT_NE(md.find("3.32E-12"), std::string::npos);
  EXPECT_NE(md.find("| Avg. Rank | (2.50) | (2.50) | (1.00) |"), std::string::npos) << md;
  EXPECT_NE(md.find("Score definition"), std::string::npos);
}

TEST(Report, TimingFiles) {
  test::TempDir dir("timing");
  std::vector<TimingRecord> rec;
  for (const char* m : {"BL_Q", "DSIL_KQ"}) {
    for (std::size_t f : {20u, 200u}) {
      for (std::size_t n : {50u, 200u}) {
        TimingRecord r;
        r.method = m;
        r.joint_features = f;
        r.instances = n;
        r.seconds = {1.0};
        r.seconds_median = static_cast<double>(f * n);
        r.kernel_seconds = {0.5};
        r.kernel_seconds_median = 0.5;
        rec.push_back(r);
      }
    }
  }
  write_timing_csv(rec, dir.path / "timing.csv");
  const std::string t = test::read_file(dir.path / "timing.csv");
  EXPECT_EQ(t.substr(0, t.find('\n')), "method,ax_plus_as,no_times_mo,seconds_median,kernel_seconds_median");
  EXPECT_NE(t.find("DSIL_KQ,200,50,10000,0.5"), std::string::npos);

  const auto files = write_timing_curves(rec, dir.path);
  ASSERT_EQ(files.size(), 4u);
  EXPECT_TRUE(std::filesystem::exists(dir.path / "time_vs_instances_f20.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir.path / "time_vs_features_n200.csv"));
  EXPECT_EQ(test::read_file(dir.path / "time_vs_instances_f200.csv"),
            "no_times_mo,BL_Q,DSIL_KQ\n50,10000,10000\n200,40000,40000\n");
}
