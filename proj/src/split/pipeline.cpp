#include "curator/pipeline.h"

#include <algorithm>

#include "curator/digest.h"
#include "curator/error.h"

namespace curator {

ingest::SourceHandle open_config_source(const config::CurationConfig &cfg) {
  if (!cfg.source) {
    throw Error(ErrorCode::kMissingFile, "no source given (chembl / --source)");
  }
  return ingest::open_source(
      *cfg.source, cfg.source_kind.value_or(config::infer_source_kind(*cfg.source)));
}

split::CuratedDataset curate(const config::CurationConfig &cfg,
                             const ingest::SourceHandle &source, int jobs) {
  config::validate(cfg);
  ingest::IngestResult ingested = ingest::read_all(source, cfg.task);
  const curation::MoleculeTable molecules =
      curation::MoleculeTable::build(ingested.records, jobs);
  curation::FilterResult filtered =
      curation::apply_filters(ingested.records, cfg.noise, cfg.task, molecules);
  std::vector<curation::MergedSample> scored =
      curation::score_records(filtered.records, cfg.task, molecules,
                              cfg.uncertainty.delta_map, &filtered.report);
  if (cfg.uncertainty.average_multiple) {
    scored = curation::merge_measurements(std::move(scored));
  } else {
    std::sort(scored.begin(), scored.end(),
              [](const curation::MergedSample &a, const curation::MergedSample &b) {
                if (a.input_key != b.input_key) {
                  return a.input_key < b.input_key;
                }
                return a.first_activity_id < b.first_activity_id;
              });
  }
  if (scored.empty()) {
    throw Error(ErrorCode::kEmptyDataset,
                "no samples survive filtering for " + cfg.dataset_name);
  }

  std::vector<double> pvalues;
  pvalues.reserve(scored.size());
  for (const curation::MergedSample &s: scored) {
    pvalues.push_back(s.pvalue);
  }
  const double threshold = curation::compute_threshold(pvalues, cfg.threshold);
  const std::vector<curation::LabeledSample> labeled =
      curation::assign_labels(scored, threshold);

  split::CuratedDataset out =
      split::split_dataset(labeled, cfg.domain, cfg.split, jobs);
  out.task = cfg.task;
  out.dataset_name = cfg.dataset_name;
  out.threshold = threshold;
  out.merged = cfg.uncertainty.average_multiple;
  out.config_digest = config::config_digest(cfg);
  out.source_digest = sha256_file_hex(source.location);
  out.filter_report = std::move(filtered.report);
  out.ingest_report = std::move(ingested.report);
  return out;
}

}  // namespace curator
