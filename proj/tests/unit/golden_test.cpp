// The committed fixture curated under lbap-core-ic50-assay must reproduce
// the frozen reference output exactly.

#include <gtest/gtest.h>

#include "curator/config/config.h"
#include "curator/pipeline.h"
#include "curator/report/report.h"
#include "test_support.h"

namespace curator {
namespace {

split::CuratedDataset golden_run(int jobs = 1) {
  config::CurationConfig cfg =
      config::resolve_preset(config::parse_preset("lbap-core-ic50-assay"));
  cfg.source = testing::data_path("mini_chembl.jsonl");
  return curate(cfg, open_config_source(cfg), jobs);
}

std::filesystem::path golden(const std::string &name) {
  return testing::golden_path("lbap-core-ic50-assay") / name;
}

TEST(GoldenTest, StatsJsonBytes) {
  const report::StatsReport stats = report::compute_stats(golden_run());
  EXPECT_EQ(report::render_stats(stats, report::StatsFormat::kJson),
            testing::read_file(golden("stats.json")));
  EXPECT_EQ(stats, report::stats_from_json(
                       nlohmann::json::parse(testing::read_file(golden("stats.json")))));
}

TEST(GoldenTest, SplitCounts) {
  const split::CuratedDataset d = golden_run();
  const auto counts = nlohmann::json::parse(testing::read_file(golden("counts.json")));
  for (const split::SplitName s: split::kAllSplits) {
    EXPECT_EQ(d.split(s).size(), counts.at(std::string(split::split_name(s))).get<std::size_t>())
        << split::split_name(s);
  }
}

TEST(GoldenTest, MembershipAndLabels) {
  const split::CuratedDataset d = golden_run();
  const auto members = nlohmann::json::parse(testing::read_file(golden("members.json")));
  for (const split::SplitName s: split::kAllSplits) {
    std::vector<std::pair<std::int64_t, int>> got;
    for (const auto &x: d.split(s)) {
      got.emplace_back(x.first_activity_id, x.label);
    }
    std::sort(got.begin(), got.end());
    std::vector<std::pair<std::int64_t, int>> expected;
    for (const auto &pair: members.at(std::string(split::split_name(s)))) {
      expected.emplace_back(pair[0].get<std::int64_t>(), pair[1].get<int>());
    }
    EXPECT_EQ(got, expected) << split::split_name(s);
  }
}

TEST(GoldenTest, TableSnapshot) {
  EXPECT_EQ(report::render_stats_table({ report::compute_stats(golden_run()) }),
            testing::read_file(golden("stats.txt")));
}

TEST(GoldenTest, WorkerCountInvariant) {
  const split::CuratedDataset one = golden_run(1);
  const split::CuratedDataset four = golden_run(4);
  EXPECT_EQ(one.splits, four.splits);
  EXPECT_EQ(one.threshold, four.threshold);
}

TEST(GoldenTest, GeneralKeepsAtLeastAsManyAsCore) {
  config::CurationConfig general =
      config::resolve_preset(config::parse_preset("lbap-general-ic50-assay"));
  general.source = testing::data_path("mini_chembl.jsonl");
  EXPECT_GE(curate(general, open_config_source(general)).total_samples(),
            golden_run().total_samples());
}

}  // namespace
}  // namespace curator
