#include <fstream>

#include "curator/error.h"
#include "curator/report/report.h"

namespace curator::report {

using nlohmann::json;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

std::optional<std::string> existing_digest(const fs::path &metadata) {
  std::ifstream in(metadata, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  try {
    const json j = json::parse(in);
    return j.at("config_digest").get<std::string>();
  } catch (const json::exception &) {
    return std::string();
  }
}

}  // namespace

ordered_json sample_to_json(const split::DomainAnnotatedSample &s, Task task) {
  ordered_json j;
  j["smiles"] = s.smiles;
  if (task == Task::kSbap) {
    j["protein_sequence"] = s.protein_sequence ? ordered_json(*s.protein_sequence)
                                               : ordered_json(nullptr);
    j["target_id"] = s.target_id ? ordered_json(*s.target_id)
                                 : ordered_json(nullptr);
  }
  j["pvalue"] = s.pvalue;
  j["label"] = s.label;
  j["domain_key"] = s.domain_key;
  j["domain_id"] = s.domain_id;
  j["n_measurements"] = s.n_measurements;
  return j;
}

ordered_json metadata_json(const split::CuratedDataset &dataset) {
  const StatsReport stats = compute_stats(dataset);
  ordered_json j;
  j["format_version"] = kFormatVersion;
  j["tool_version"] = kToolVersion;
  j["dataset_name"] = dataset.dataset_name;
  j["task"] = task_name(dataset.task);
  j["threshold"] = dataset.threshold;
  j["seed"] = dataset.seed;
  j["config_digest"] = dataset.config_digest;
  j["source_digest"] = dataset.source_digest;
  j["domain"]["domain_name"] = split::domain_kind_name(dataset.domain.kind);
  j["domain"]["sort_func"] = split::descriptor_name(dataset.domain.descriptor);
  j["domain"]["sort_order"] = split::sort_order_name(dataset.domain.sort_order);
  j["multiple_measurement_average"] = dataset.merged;
  j["counts"] = ordered_json::object();
  for (const split::SplitName name: split::kAllSplits) {
    j["counts"][std::string(split::split_name(name))] =
        dataset.split(name).size();
  }
  j["total_samples"] = stats.total_samples;
  j["total_domains"] = stats.total_domains;
  j["warnings"] = dataset.warnings;
  return j;
}

fs::path write_dataset(const split::CuratedDataset &dataset,
                       const fs::path &save_dir, bool force) {
  const fs::path dir = save_dir / dataset.dataset_name;
  const fs::path metadata = dir / "metadata.json";
  if (!force) {
    const auto digest = existing_digest(metadata);
    if (digest && *digest != dataset.config_digest) {
      throw Error(ErrorCode::kDigestMismatch,
                  dir.string() + " holds a dataset built from a different "
                                 "config; pass --force to overwrite");
    }
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo,
                "cannot create " + dir.string() + ": " + ec.message());
  }

  for (const split::SplitName name: split::kAllSplits) {
    std::string text;
    for (const split::DomainAnnotatedSample &s: dataset.split(name)) {
      text += sample_to_json(s, dataset.task).dump();
      text += '\n';
    }
    write_file(dir / (std::string(split::split_name(name)) + ".jsonl"), text);
  }
  write_file(dir / "stats.json",
             render_stats(compute_stats(dataset), StatsFormat::kJson));
  write_file(dir / "filter_report.json",
             dataset.filter_report.to_json().dump(2) + "\n");
  write_file(dir / "ingest_report.json",
             dataset.ingest_report.to_json().dump(2) + "\n");
  // Last, so an interrupted write never looks complete.
  write_file(metadata, metadata_json(dataset).dump(2) + "\n");
  return dir;
}

}  // namespace curator::report
