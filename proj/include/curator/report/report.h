#ifndef CURATOR_REPORT_REPORT_H_
#define CURATOR_REPORT_REPORT_H_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "curator/split/split.h"

namespace curator::report {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kFormatVersion = 1;

// One output line: smiles, protein_sequence and target_id (sbap only),
// pvalue, label, domain_key, domain_id, n_measurements.
nlohmann::ordered_json sample_to_json(const split::DomainAnnotatedSample &s,
                                      Task task);

struct SplitStats {
  std::int64_t domain_count = 0;
  std::int64_t sample_count = 0;
  std::int64_t positive_count = 0;
  std::int64_t negative_count = 0;
  double positive_ratio = 0;  // 0 for an empty split

  bool operator==(const SplitStats &) const = default;
};

struct StatsReport {
  std::string dataset_name;
  double threshold = 0;
  std::int64_t total_domains = 0;  // distinct domain keys over all splits
  std::int64_t total_samples = 0;
  std::array<SplitStats, 5> splits;  // indexed by split::SplitName

  const SplitStats &split(split::SplitName s) const {
    return splits[static_cast<std::size_t>(s)];
  }
  bool operator==(const StatsReport &) const = default;
};

StatsReport compute_stats(const split::CuratedDataset &dataset);

// Recount from per-split (domain_key, label) lists, as read back from disk.
struct LabeledKey {
  std::string domain_key;
  int label = 0;
};
StatsReport compute_stats(std::string_view dataset_name, double threshold,
                          const std::array<std::vector<LabeledKey>, 5> &splits);

enum class StatsFormat {
  kJson,
  kTableText,
  kCsv,
};

std::optional<StatsFormat> parse_stats_format(std::string_view text);

nlohmann::ordered_json stats_to_json(const StatsReport &report);
StatsReport stats_from_json(const nlohmann::json &j);

std::string render_stats(const StatsReport &report, StatsFormat format);

// One row per dataset: Data subset, Pos#, Neg#, then D# and C# for train,
// ID val, ID test, OOD val and OOD test.
std::string render_stats_table(const std::vector<StatsReport> &reports);

// Inverse of render_stats for kJson and kCsv. Throws Error(kMalformedSchema).
StatsReport parse_stats(std::string_view text, StatsFormat format);

nlohmann::ordered_json metadata_json(const split::CuratedDataset &dataset);

// Writes <save_dir>/<dataset_name>/ and returns that directory. Refuses
// with Error(kDigestMismatch) when the directory holds a dataset built from
// a different config, unless `force`.
std::filesystem::path write_dataset(const split::CuratedDataset &dataset,
                                    const std::filesystem::path &save_dir,
                                    bool force = false);

struct ValidationReport {
  std::vector<std::string> failures;  // in check order
  StatsReport stats;                  // recounted from the split files

  bool ok() const { return failures.empty(); }
};

// Re-checks a written dataset: per-file counts against metadata, domain
// id/key consistency, disjoint train-side / ood_val / ood_test domains,
// labels against the threshold, unique inputs when merged, and stats.json
// against a recount. Throws Error(kMissingFile) when metadata.json or a
// split file is absent.
ValidationReport validate_dataset_dir(const std::filesystem::path &dir);

}  // namespace curator::report

#endif  // CURATOR_REPORT_REPORT_H_
